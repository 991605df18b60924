#include "sdn5g/radio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdn5g/error.hpp"
#include "sdn5g/rng.hpp"

namespace sdn5g {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

bool finite(double v) { return std::isfinite(v); }

void step_timer(UeState& ue, bool condition, const HandoverPolicyConfig& cfg, double dt_ms) {
    if (condition)
        ue.a3_timer_ms = std::min(ue.a3_timer_ms + dt_ms, cfg.time_to_trigger_ms);
    else
        ue.a3_timer_ms = 0;
}

} // namespace

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

void validate(const CellConfig& c) {
    require(finite(c.position.x) && finite(c.position.y), "cell position must be finite");
    require(finite(c.tx_power_dbm), "tx_power_dbm must be finite");
    require(finite(c.bandwidth_hz) && c.bandwidth_hz > 0, "bandwidth_hz must be positive");
    require(finite(c.background_demand_bps) && c.background_demand_bps >= 0,
            "background_demand_bps must be non-negative");
}

void validate(const PathlossParams& p) {
    require(finite(p.exponent) && p.exponent > 0, "pathloss exponent must be positive");
    require(finite(p.reference_loss_db), "reference_loss_db must be finite");
    require(finite(p.reference_distance_m) && p.reference_distance_m > 0,
            "reference_distance_m must be positive");
    require(finite(p.shadowing_sigma_db) && p.shadowing_sigma_db >= 0,
            "shadowing_sigma_db must be non-negative");
}

double pathloss(const PathlossParams& p, double distance_m, ShadowKey key) {
    require(finite(distance_m), "pathloss: distance must be finite");
    validate(p);
    const double d = std::max(distance_m, p.reference_distance_m);
    double loss = p.reference_loss_db + 10.0 * p.exponent * std::log10(d / p.reference_distance_m);
    if (p.shadowing_sigma_db > 0)
        loss += p.shadowing_sigma_db * keyed_normal(p.seed, key.cell, key.ue, key.tick);
    return loss;
}

double rsrp(const CellConfig& cell, Vec2 ue_position, const PathlossParams& p, ShadowKey key) {
    require(finite(ue_position.x) && finite(ue_position.y), "rsrp: UE position must be finite");
    return cell.tx_power_dbm - pathloss(p, distance(cell.position, ue_position), key);
}

void validate(const RadioParams& r) {
    require(finite(r.thermal_noise_dbm_per_hz), "thermal_noise_dbm_per_hz must be finite");
    require(finite(r.noise_figure_db), "noise_figure_db must be finite");
    require(finite(r.reference_efficiency) && r.reference_efficiency > 0,
            "reference_efficiency must be positive");
    require(finite(r.efficiency_cap) && r.efficiency_cap > 0, "efficiency_cap must be positive");
    require(finite(r.background_radius_m) && r.background_radius_m >= 0,
            "background_radius_m must be non-negative");
}

double noise_dbm(double bandwidth_hz, const RadioParams& r) {
    return r.thermal_noise_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + r.noise_figure_db;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double sinr_db(std::size_t serving, std::span<const double> rsrp_dbm, double noise) {
    if (serving >= rsrp_dbm.size()) throw StateError("sinr: serving cell out of range");
    double interference = dbm_to_mw(noise);
    for (std::size_t c = 0; c < rsrp_dbm.size(); ++c)
        if (c != serving) interference += dbm_to_mw(rsrp_dbm[c]);
    return mw_to_dbm(dbm_to_mw(rsrp_dbm[serving]) / interference);
}

double sinr_db(const UeState& ue, std::span<const CellConfig> cells, const PathlossParams& p,
               double noise, std::uint64_t tick) {
    if (!ue.serving_cell) throw StateError("sinr: UE is not attached");
    std::vector<double> r(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
        r[c] = rsrp(cells[c], ue.position, p,
                    ShadowKey{static_cast<std::uint32_t>(c), ue.id, tick});
    return sinr_db(*ue.serving_cell, r, noise);
}

std::string_view policy_name(PolicyKind k) {
    return k == PolicyKind::DistributedA3 ? "distributed-a3" : "centralized";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
    if (name == "distributed-a3" || name == "a3") return PolicyKind::DistributedA3;
    if (name == "centralized" || name == "centralized-load-aware")
        return PolicyKind::CentralizedLoadAware;
    return std::nullopt;
}

void validate(const HandoverPolicyConfig& c) {
    require(finite(c.hysteresis_db) && c.hysteresis_db >= 0, "hysteresis_db must be >= 0");
    require(finite(c.time_to_trigger_ms) && c.time_to_trigger_ms >= 0,
            "time_to_trigger_ms must be >= 0");
    require(finite(c.similarity_window_db) && c.similarity_window_db >= 0,
            "similarity_window_db must be >= 0");
    require(finite(c.l3_filter_k) && c.l3_filter_k >= 0, "l3_filter_k must be >= 0");
}

double l3_filter_weight(double k) { return std::pow(2.0, -k / 4.0); }

std::optional<HandoverDecision> a3_decide(UeState& ue, std::span<const double> rsrp_dbm,
                                          const HandoverPolicyConfig& cfg, double dt_ms) {
    if (!ue.serving_cell || ue.pinned) return std::nullopt;
    const std::size_t serving = *ue.serving_cell;
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < rsrp_dbm.size(); ++c) {
        if (c == serving) continue;
        if (!best || rsrp_dbm[c] > rsrp_dbm[*best]) best = c;
    }
    const bool entered = best && rsrp_dbm[*best] > rsrp_dbm[serving] + cfg.hysteresis_db;
    step_timer(ue, entered, cfg, dt_ms);
    if (!entered || ue.a3_timer_ms < cfg.time_to_trigger_ms) return std::nullopt;
    ue.a3_timer_ms = 0;
    return HandoverDecision{static_cast<std::uint32_t>(*best)};
}

std::optional<HandoverDecision> centralized_decide(UeState& ue, std::span<const double> rsrp_dbm,
                                                   std::span<const double> loads,
                                                   const HandoverPolicyConfig& cfg,
                                                   double dt_ms) {
    if (!ue.serving_cell || ue.pinned) return std::nullopt;
    const std::size_t serving = *ue.serving_cell;
    const double strongest = *std::max_element(rsrp_dbm.begin(), rsrp_dbm.end());
    std::optional<std::size_t> pick;
    for (std::size_t c = 0; c < rsrp_dbm.size(); ++c) {
        if (c == serving) continue;
        if (!(rsrp_dbm[c] > rsrp_dbm[serving] + cfg.hysteresis_db)) continue;
        if (rsrp_dbm[c] < strongest - cfg.similarity_window_db) continue;
        if (!pick || loads[c] < loads[*pick] ||
            (loads[c] == loads[*pick] && rsrp_dbm[c] > rsrp_dbm[*pick]))
            pick = c; // equal load and RSRP keeps the lower index
    }
    step_timer(ue, pick.has_value(), cfg, dt_ms);
    if (!pick || ue.a3_timer_ms < cfg.time_to_trigger_ms) return std::nullopt;
    ue.a3_timer_ms = 0;
    return HandoverDecision{static_cast<std::uint32_t>(*pick)};
}

double nominal_capacity_bps(const CellConfig& cell, const RadioParams& r) {
    return cell.bandwidth_hz * r.reference_efficiency;
}

double cell_load(const CellConfig& cell, std::span<const double> attached_demands_bps,
                 const RadioParams& r) {
    double sum = 0;
    for (double d : attached_demands_bps) sum += d;
    return std::max(0.0, sum / nominal_capacity_bps(cell, r));
}

double ue_throughput(double demand_bps, double bandwidth_hz, double sinr, std::uint32_t n_active,
                     double efficiency_cap) {
    if (n_active < 1) throw ParameterError("ue_throughput: n_active must be >= 1");
    // sinr = -inf gives 10^-inf = 0 and a zero rate.
    const double se = std::min(std::log2(1.0 + std::pow(10.0, sinr / 10.0)), efficiency_cap);
    return std::min(demand_bps, bandwidth_hz / n_active * se);
}

} // namespace sdn5g
