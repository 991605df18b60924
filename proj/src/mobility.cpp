#include "sdn5g/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdn5g/error.hpp"
#include "sdn5g/format.hpp"
#include "sdn5g/rng.hpp"

namespace sdn5g {

namespace {

std::uint32_t argmax(std::span<const double> row) {
    return static_cast<std::uint32_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

std::uint64_t tick_count(const Scenario& s) {
    return static_cast<std::uint64_t>(std::floor(s.duration_s * 1000.0 / s.tick_ms + 1e-9));
}

} // namespace

void validate(const Scenario& s) {
    auto range = [](bool ok, const std::string& field, const std::string& what) {
        if (!ok) throw ConfigError(ConfigError::Kind::Range, field, field + ": " + what);
    };
    range(!s.cells.empty(), "cells", "at least one cell required");
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        try {
            validate(s.cells[i]);
        } catch (const ParameterError& e) {
            range(false, "cells[" + std::to_string(i) + "]", e.what());
        }
    }
    try {
        validate(s.pathloss);
    } catch (const ParameterError& e) {
        range(false, "pathloss", e.what());
    }
    try {
        validate(s.radio);
    } catch (const ParameterError& e) {
        range(false, "radio", e.what());
    }
    try {
        validate(s.policy);
    } catch (const ParameterError& e) {
        range(false, "policy", e.what());
    }
    range(std::isfinite(s.duration_s) && s.duration_s > 0, "duration_s", "must be positive");
    range(std::isfinite(s.tick_ms) && s.tick_ms > 0, "tick_ms", "must be positive");
    for (std::size_t i = 0; i < s.ues.size(); ++i) {
        const auto& u = s.ues[i];
        const std::string f = "ues[" + std::to_string(i) + "]";
        range(std::isfinite(u.start.x) && std::isfinite(u.start.y) &&
                  std::isfinite(u.velocity.x) && std::isfinite(u.velocity.y),
              f, "position and velocity must be finite");
        range(std::isfinite(u.demand_bps) && u.demand_bps >= 0, f + ".demand_bps",
              "must be non-negative");
    }
    if (s.fleet) {
        const auto& f = *s.fleet;
        range(std::isfinite(f.center.x) && std::isfinite(f.center.y), "fleet.center",
              "must be finite");
        range(std::isfinite(f.radius_m) && f.radius_m >= 0, "fleet.radius_m",
              "must be non-negative");
        range(std::isfinite(f.speed_mps) && f.speed_mps >= 0, "fleet.speed_mps",
              "must be non-negative");
        range(std::isfinite(f.heading_min_deg) && std::isfinite(f.heading_max_deg) &&
                  f.heading_min_deg <= f.heading_max_deg,
              "fleet.heading_max_deg", "must be >= heading_min_deg");
        range(std::isfinite(f.demand_bps) && f.demand_bps >= 0, "fleet.demand_bps",
              "must be non-negative");
    }
}

std::vector<UeState> populate(const Scenario& s, std::uint64_t seed) {
    std::vector<UeState> ues;
    auto add = [&](Vec2 pos, Vec2 vel, double demand) -> UeState& {
        UeState u;
        u.id = static_cast<std::uint32_t>(ues.size());
        u.position = pos;
        u.velocity = vel;
        u.demand_bps = demand;
        return ues.emplace_back(u);
    };
    for (std::uint32_t c = 0; c < s.cells.size(); ++c) {
        const auto& cell = s.cells[c];
        for (std::uint32_t k = 0; k < cell.background_ues; ++k) {
            const double angle = 2.0 * std::numbers::pi * (k + 0.5) / cell.background_ues;
            const Vec2 pos{cell.position.x + s.radio.background_radius_m * std::cos(angle),
                           cell.position.y + s.radio.background_radius_m * std::sin(angle)};
            UeState& u = add(pos, {}, cell.background_demand_bps);
            u.pinned = true;
            u.serving_cell = c;
        }
    }
    for (const auto& spec : s.ues) add(spec.start, spec.velocity, spec.demand_bps);
    if (s.fleet) {
        const auto& f = *s.fleet;
        Rng rng(splitmix64(seed ^ 0x666c656574ULL));
        for (std::uint32_t i = 0; i < f.count; ++i) {
            // sqrt gives a uniform density over the disc.
            const double r = f.radius_m * std::sqrt(rng.uniform01());
            const double phi = 2.0 * std::numbers::pi * rng.uniform01();
            const double heading =
                rng.uniform(f.heading_min_deg, f.heading_max_deg) * std::numbers::pi / 180.0;
            add({f.center.x + r * std::cos(phi), f.center.y + r * std::sin(phi)},
                {f.speed_mps * std::cos(heading), f.speed_mps * std::sin(heading)}, f.demand_bps);
        }
    }
    return ues;
}

double MobilityStats::mean_system_throughput_bps() const {
    if (system_throughput_bps.empty()) throw EmptyResultError("no ticks recorded");
    double sum = 0;
    for (double v : system_throughput_bps) sum += v;
    return sum / static_cast<double>(system_throughput_bps.size());
}

MobilityStats run_mobility(const Scenario& s, PolicyKind policy, std::uint64_t seed,
                           const MobilityOptions& opt) {
    validate(s);
    const std::size_t n_cells = s.cells.size();
    std::vector<UeState> ues = populate(s, seed);
    const std::size_t n_ues = ues.size();

    PathlossParams pl = s.pathloss;
    pl.seed = splitmix64(s.pathloss.seed) ^ seed;
    HandoverPolicyConfig cfg = s.policy;
    cfg.kind = policy;

    MobilityStats st;
    st.policy = policy;
    st.seed = seed;
    for (const auto& c : s.cells) st.cell_names.push_back(c.name);
    for (const auto& u : ues) st.moving.push_back(!u.pinned);
    st.ue_mean_throughput_bps.assign(n_ues, 0.0);

    std::vector<double> rsrp(n_ues * n_cells), filtered(n_ues * n_cells), sinr(n_ues),
        rate(n_ues);
    const double filter_a = l3_filter_weight(cfg.l3_filter_k);
    std::vector<double> demand_sum(n_cells), loads(n_cells);
    std::vector<std::uint32_t> n_active(n_cells);

    auto recount = [&] {
        std::fill(demand_sum.begin(), demand_sum.end(), 0.0);
        std::fill(n_active.begin(), n_active.end(), 0u);
        for (const auto& u : ues) {
            if (!u.serving_cell) continue;
            demand_sum[*u.serving_cell] += u.demand_bps;
            ++n_active[*u.serving_cell];
        }
        for (std::size_t c = 0; c < n_cells; ++c)
            loads[c] = std::max(0.0, demand_sum[c] / nominal_capacity_bps(s.cells[c], s.radio));
    };
    auto move_between = [&](UeState& u, std::uint32_t to) {
        const std::uint32_t from = *u.serving_cell;
        demand_sum[from] -= u.demand_bps;
        --n_active[from];
        demand_sum[to] += u.demand_bps;
        ++n_active[to];
        for (std::uint32_t c : {from, to})
            loads[c] = std::max(0.0, demand_sum[c] / nominal_capacity_bps(s.cells[c], s.radio));
        u.serving_cell = to;
    };

    const std::uint64_t ticks = tick_count(s);
    const double dt_s = s.tick_ms / 1000.0;
    for (std::uint64_t k = 0; k <= ticks; ++k) {
        const double t_ms = static_cast<double>(k) * s.tick_ms;
        if (k > 0) {
            for (auto& u : ues) {
                u.position.x += u.velocity.x * dt_s;
                u.position.y += u.velocity.y * dt_s;
            }
        }
        kernels::measure_rsrp(s.cells, ues, pl, k, rsrp, opt.exec);
        if (k == 0) {
            filtered = rsrp;
        } else {
            for (std::size_t i = 0; i < filtered.size(); ++i)
                filtered[i] = (1.0 - filter_a) * filtered[i] + filter_a * rsrp[i];
        }

        if (k == 0) {
            for (auto& u : ues)
                if (!u.serving_cell)
                    u.serving_cell = argmax(std::span<const double>(&rsrp[u.id * n_cells], n_cells));
            recount();
        } else {
            // Decisions are applied in UE order so later UEs see updated loads.
            for (auto& u : ues) {
                if (u.pinned) continue;
                std::span<const double> row(&filtered[u.id * n_cells], n_cells);
                auto d = policy == PolicyKind::DistributedA3
                             ? a3_decide(u, row, cfg, s.tick_ms)
                             : centralized_decide(u, row, loads, cfg, s.tick_ms);
                if (!d) continue;
                st.handovers.push_back(HandoverEvent{t_ms, u.id, *u.serving_cell, d->target});
                move_between(u, d->target);
            }
        }

        kernels::compute_rates(s.cells, ues, rsrp, n_active, s.radio, sinr, rate, opt.exec);
        double total = 0;
        for (std::size_t u = 0; u < n_ues; ++u) {
            total += rate[u];
            st.ue_mean_throughput_bps[u] += rate[u];
        }
        st.tick_time_ms.push_back(t_ms);
        st.system_throughput_bps.push_back(total);
        if (opt.record_samples) {
            for (std::size_t u = 0; u < n_ues; ++u) {
                const std::uint32_t c = *ues[u].serving_cell;
                st.samples.push_back(UeSample{static_cast<std::uint32_t>(k),
                                              static_cast<std::uint32_t>(u), c,
                                              rsrp[u * n_cells + c], sinr[u], rate[u]});
            }
        }
    }
    for (auto& v : st.ue_mean_throughput_bps) v /= static_cast<double>(ticks + 1);
    return st;
}

std::string samples_csv(const MobilityStats& st, double tick_ms) {
    std::string out = "tick,time_ms,ue,cell,rsrp_dbm,sinr_db,rate_bps\n";
    for (const auto& s : st.samples) {
        out += std::to_string(s.tick) + ',' + format_double(s.tick * tick_ms) + ',' +
               std::to_string(s.ue) + ',' + st.cell_names[s.cell] + ',' +
               format_double(s.rsrp_dbm) + ',' + format_double(s.sinr_db) + ',' +
               format_double(s.rate_bps) + '\n';
    }
    return out;
}

std::string handovers_csv(const MobilityStats& st) {
    std::string out = "time_ms,ue,from,to\n";
    for (const auto& h : st.handovers) {
        out += format_double(h.time_ms) + ',' + std::to_string(h.ue) + ',' +
               st.cell_names[h.from] + ',' + st.cell_names[h.to] + '\n';
    }
    return out;
}

} // namespace sdn5g
