#include "sdn5g/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "sdn5g/error.hpp"
#include "sdn5g/format.hpp"

namespace sdn5g {

AttachSimResult attach_sim(const Workload& w, const CostParams& p,
                           std::span<const std::uint64_t> seeds, Exec exec) {
    if (seeds.empty()) throw ParameterError("attach_sim: seed list is empty");
    const auto base = run_callflow_seeds(build_callflow(CallflowVariant::ThreeGppRegistration), p,
                                         w, seeds, exec);
    const auto prop = run_callflow_seeds(build_callflow(CallflowVariant::ProposedRegistration), p,
                                         w, seeds, exec);
    AttachSimResult r;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        AttachSeedRow row{seeds[i], mean_completion(base[i]), mean_completion(prop[i])};
        r.three_gpp_mean_ms += row.three_gpp_mean_ms;
        r.proposed_mean_ms += row.proposed_mean_ms;
        r.rows.push_back(row);
    }
    r.three_gpp_mean_ms /= static_cast<double>(seeds.size());
    r.proposed_mean_ms /= static_cast<double>(seeds.size());
    r.reduction = r.three_gpp_mean_ms > 0 ? improvement(r.three_gpp_mean_ms, r.proposed_mean_ms)
                                          : 0.0;
    return r;
}

std::string attach_sim_csv(const AttachSimResult& r) {
    std::string out = "seed,3gpp_mean_ms,proposed_mean_ms,reduction\n";
    for (const auto& row : r.rows) {
        const double red = row.three_gpp_mean_ms > 0
                               ? improvement(row.three_gpp_mean_ms, row.proposed_mean_ms)
                               : 0.0;
        out += std::to_string(row.seed) + ',' + format_double(row.three_gpp_mean_ms) + ',' +
               format_double(row.proposed_mean_ms) + ',' + format_fraction(red) + '\n';
    }
    out += "all," + format_double(r.three_gpp_mean_ms) + ',' + format_double(r.proposed_mean_ms) +
           ',' + format_fraction(r.reduction) + '\n';
    return out;
}

SummaryRow summarize(const MobilityStats& st) {
    return SummaryRow{std::string(policy_name(st.policy)), st.seed, st.handover_count(),
                      st.mean_system_throughput_bps()};
}

std::string summary_csv(std::span<const SummaryRow> rows) {
    std::string out = "policy,seed,handovers,mean_system_throughput_bps\n";
    for (const auto& r : rows)
        out += r.policy + ',' + std::to_string(r.seed) + ',' + std::to_string(r.handovers) + ',' +
               format_double(r.mean_system_throughput_bps) + '\n';
    return out;
}

std::vector<SummaryRow> parse_summary_csv(std::string_view text) {
    std::vector<SummaryRow> rows;
    auto lines = split(text, '\n');
    if (lines.empty() || lines[0] != "policy,seed,handovers,mean_system_throughput_bps")
        throw ParameterError("summary csv: unexpected header");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split(lines[i], ',');
        if (f.size() != 4) throw ParameterError("summary csv: bad row " + std::to_string(i));
        rows.push_back(SummaryRow{f[0], std::stoull(f[1]), std::stoull(f[2]),
                                  parse_double(f[3])});
    }
    return rows;
}

std::vector<MobilityStats> mobility_experiment(const Scenario& s,
                                               std::span<const PolicyKind> policies,
                                               std::span<const std::uint64_t> seeds,
                                               const MobilityOptions& opt) {
    if (seeds.empty()) throw ParameterError("mobility: seed list is empty");
    validate(s);
    const std::size_t n = policies.size() * seeds.size();
    std::vector<MobilityStats> out(n);
    MobilityOptions inner = opt;
    inner.exec = Exec::Serial;
    const auto jobs = static_cast<std::ptrdiff_t>(n);
    if (opt.exec == Exec::Serial) {
        for (std::ptrdiff_t j = 0; j < jobs; ++j)
            out[j] = run_mobility(s, policies[j / seeds.size()], seeds[j % seeds.size()], inner);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < jobs; ++j)
            out[j] = run_mobility(s, policies[j / seeds.size()], seeds[j % seeds.size()], inner);
    }
    return out;
}

std::vector<GainPoint> paired_gains(std::span<const MobilityStats> runs) {
    std::map<std::uint64_t, const MobilityStats*> base, central;
    for (const auto& r : runs)
        (r.policy == PolicyKind::DistributedA3 ? base : central)[r.seed] = &r;
    std::vector<GainPoint> out;
    for (const auto& [seed, b] : base) {
        auto it = central.find(seed);
        if (it == central.end()) continue;
        const auto moving = static_cast<std::uint32_t>(
            std::count(b->moving.begin(), b->moving.end(), true));
        out.push_back(GainPoint{moving, seed, static_cast<double>(b->handover_count()),
                                it->second->mean_system_throughput_bps() -
                                    b->mean_system_throughput_bps()});
    }
    return out;
}

std::string gain_csv(std::span<const GainPoint> points) {
    std::string out = "moving_ues,seed,handover_count,throughput_gain_bps\n";
    for (const auto& p : points)
        out += std::to_string(p.moving_ues) + ',' + std::to_string(p.seed) + ',' +
               format_double(p.handovers) + ',' + format_double(p.gain_bps) + '\n';
    return out;
}

SweepResult sweep_experiment(const Scenario& base, std::span<const std::uint32_t> fleet_sizes,
                             std::span<const std::uint64_t> seeds, Exec exec) {
    if (seeds.empty()) throw ParameterError("sweep: seed list is empty");
    if (fleet_sizes.empty()) throw ParameterError("sweep: fleet size list is empty");
    if (!base.fleet) throw ConfigError(ConfigError::Kind::Schema, "fleet",
                                       "sweep requires a scenario with a 'fleet' block");
    validate(base);

    constexpr PolicyKind kPolicies[] = {PolicyKind::DistributedA3,
                                        PolicyKind::CentralizedLoadAware};
    std::vector<Scenario> variants;
    for (auto n : fleet_sizes) {
        Scenario s = base;
        s.fleet->count = n;
        variants.push_back(std::move(s));
    }
    const std::size_t per_size = 2 * seeds.size();
    const std::size_t n = fleet_sizes.size() * per_size;
    std::vector<MobilityStats> runs(n);
    const MobilityOptions inner{false, Exec::Serial};
    auto job = [&](std::size_t j) {
        const std::size_t v = j / per_size;
        const std::size_t rest = j % per_size;
        runs[j] = run_mobility(variants[v], kPolicies[rest / seeds.size()],
                               seeds[rest % seeds.size()], inner);
    };
    const auto jobs = static_cast<std::ptrdiff_t>(n);
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t j = 0; j < jobs; ++j) job(static_cast<std::size_t>(j));
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < jobs; ++j) job(static_cast<std::size_t>(j));
    }

    SweepResult r;
    std::vector<double> xs, ys;
    for (std::size_t v = 0; v < fleet_sizes.size(); ++v) {
        std::span<const MobilityStats> group(runs.data() + v * per_size, per_size);
        for (const auto& st : group) {
            r.rows.push_back(summarize(st));
            r.row_ues.push_back(fleet_sizes[v]);
        }
        auto pts = paired_gains(group);
        GainPoint avg{fleet_sizes[v], 0, 0, 0};
        for (const auto& p : pts) {
            avg.handovers += p.handovers;
            avg.gain_bps += p.gain_bps;
        }
        avg.handovers /= static_cast<double>(pts.size());
        avg.gain_bps /= static_cast<double>(pts.size());
        r.per_seed.insert(r.per_seed.end(), pts.begin(), pts.end());
        r.averaged.push_back(avg);
        xs.push_back(avg.handovers);
        ys.push_back(avg.gain_bps);
    }
    r.spearman = spearman(xs, ys);
    return r;
}

std::string sweep_csv(const SweepResult& r) {
    std::string out = "moving_ues,policy,seed,handovers,mean_system_throughput_bps\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += std::to_string(r.row_ues[i]) + ',' + row.policy + ',' + std::to_string(row.seed) +
               ',' + std::to_string(row.handovers) + ',' +
               format_double(row.mean_system_throughput_bps) + '\n';
    }
    return out;
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ParameterError("spearman: length mismatch");
    if (x.size() < 2) return 0.0;
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) throw ParameterError("seed list: empty entry");
        const auto dash = part.find('-');
        try {
            std::size_t used = 0;
            if (dash == std::string::npos) {
                seeds.push_back(std::stoull(part, &used));
                if (used != part.size()) throw std::invalid_argument(part);
            } else {
                const auto lo = std::stoull(part.substr(0, dash));
                const auto hi = std::stoull(part.substr(dash + 1), &used);
                if (used != part.size() - dash - 1 || hi < lo) throw std::invalid_argument(part);
                for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
            }
        } catch (const std::logic_error&) {
            throw ParameterError("seed list: bad entry '" + part + "'");
        }
    }
    if (seeds.empty()) throw ParameterError("seed list is empty");
    return seeds;
}

} // namespace sdn5g
