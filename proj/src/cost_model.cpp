#include "sdn5g/cost_model.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "sdn5g/error.hpp"
#include "sdn5g/format.hpp"

namespace sdn5g {

void validate(const CostParams& p) {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0)
            throw ParameterError(std::string(name) + " must be finite and non-negative");
    };
    check(p.alpha, "alpha");
    check(p.beta, "beta");
    check(p.m, "m");
}

CostPolynomial symbolic_cost(const Callflow& cf) {
    auto report = validate_callflow(cf);
    if (!report.ok()) throw InvalidCallflowError(std::move(report));
    return CostPolynomial{cf.hop_count(), cf.step_count()};
}

double evaluate(CostPolynomial poly, const CostParams& p) {
    validate(p);
    return poly.tx_hops * p.m * p.alpha + poly.proc_steps * p.beta;
}

double signaling_time(const Callflow& cf, const CostParams& p) {
    return evaluate(symbolic_cost(cf), p);
}

double improvement(double baseline_ms, double proposed_ms) {
    if (!std::isfinite(baseline_ms) || !std::isfinite(proposed_ms))
        throw ParameterError("improvement: non-finite duration");
    if (baseline_ms <= 0) throw ParameterError("improvement: baseline must be positive");
    return (baseline_ms - proposed_ms) / baseline_ms;
}

double registration_breakeven(double m, double alpha) {
    if (!std::isfinite(m) || !std::isfinite(alpha) || m <= 0 || alpha <= 0)
        throw ParameterError("registration_breakeven: m and alpha must be positive");
    return m * alpha / 14.0;
}

ComparisonTable compare_report(const CostParams& p) {
    validate(p);
    ComparisonTable t{p, {}};
    auto row = [&](const char* name, CallflowVariant base, CallflowVariant prop) {
        const double b = signaling_time(build_callflow(base), p);
        const double q = signaling_time(build_callflow(prop), p);
        t.rows.push_back(ComparisonRow{name, b, q, improvement(b, q)});
    };
    row("Registration", CallflowVariant::ThreeGppRegistration,
        CallflowVariant::ProposedRegistration);
    row("Handover", CallflowVariant::ThreeGppHandover, CallflowVariant::ProposedHandover);
    return t;
}

const std::vector<ReferenceRow>& reference_table() {
    static const std::vector<ReferenceRow> rows{
        {"Registration", "74-84", "60", "12%-28%"},
        {"Handover", "78.5", "55.5", "29.29%"},
    };
    return rows;
}

std::string format_fraction(double fraction) {
    std::ostringstream os;
    os << std::setprecision(4) << std::showpoint << fraction;
    return os.str();
}

std::string comparison_csv(const ComparisonTable& t) {
    std::string out = "procedure,baseline_ms,proposed_ms,improvement\n";
    for (const auto& r : t.rows) {
        out += r.procedure + ',' + format_double(r.baseline_ms) + ',' +
               format_double(r.proposed_ms) + ',' + format_fraction(r.improvement) + '\n';
    }
    return out;
}

std::string comparison_text(const ComparisonTable& t) {
    std::ostringstream os;
    os << "parameters: m=" << format_double(t.params.m) << " alpha="
       << format_double(t.params.alpha) << " ms/bit beta=" << format_double(t.params.beta)
       << " ms\n\n";
    os << std::left << std::setw(14) << "procedure" << std::setw(14) << "3gpp_ms"
       << std::setw(14) << "proposed_ms" << "improvement\n";
    for (const auto& r : t.rows) {
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(2) << r.improvement * 100.0 << '%';
        os << std::left << std::setw(14) << r.procedure << std::setw(14)
           << format_double(r.baseline_ms) << std::setw(14) << format_double(r.proposed_ms)
           << pct.str() << '\n';
    }
    os << "\nreference values (not derived from these parameters):\n";
    for (const auto& r : reference_table()) {
        os << std::left << std::setw(14) << r.procedure << std::setw(14) << r.baseline
           << std::setw(14) << r.proposed << r.improvement << '\n';
    }
    return os.str();
}

} // namespace sdn5g
