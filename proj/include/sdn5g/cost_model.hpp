#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sdn5g/callflow.hpp"

namespace sdn5g {

// alpha: ms per bit per hop; beta: ms per encode/decode step; m: bits per
// message. Zero is accepted as a limit case, negative or non-finite values
// are not.
struct CostParams {
    double alpha = 1.0;
    double beta = 4.0;
    double m = 1.0;
};

void validate(const CostParams& p);

class InvalidCallflowError : public std::invalid_argument {
public:
    explicit InvalidCallflowError(ValidationReport report)
        : std::invalid_argument("invalid callflow:\n" + report.to_string()),
          report_(std::move(report)) {}

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

// Throws InvalidCallflowError when cf fails validate_callflow.
CostPolynomial symbolic_cost(const Callflow& cf);

double evaluate(CostPolynomial poly, const CostParams& p);
double signaling_time(const Callflow& cf, const CostParams& p);

// (baseline - proposed) / baseline. Throws ParameterError when baseline <= 0.
double improvement(double baseline_ms, double proposed_ms);

// Smallest beta above which the proposed registration beats the 3GPP one:
// 18ma + 24b > 19ma + 10b  <=>  b > ma / 14.
double registration_breakeven(double m, double alpha);

struct ComparisonRow {
    std::string procedure;
    double baseline_ms = 0;
    double proposed_ms = 0;
    double improvement = 0;
};

struct ReferenceRow {
    std::string procedure;
    std::string baseline;
    std::string proposed;
    std::string improvement;
};

struct ComparisonTable {
    CostParams params;
    std::vector<ComparisonRow> rows;
};

ComparisonTable compare_report(const CostParams& p);

// Published reference values, reported next to the computed ones; they are
// not derivable from a single (m, alpha, beta) triple.
const std::vector<ReferenceRow>& reference_table();

// Fraction rounded to 4 significant digits, e.g. 0.2930.
std::string format_fraction(double fraction);

// Columns: procedure,baseline_ms,proposed_ms,improvement
std::string comparison_csv(const ComparisonTable& t);
std::string comparison_text(const ComparisonTable& t);

} // namespace sdn5g
