#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdn5g {

struct Vec2 {
    double x = 0;
    double y = 0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

struct CellConfig {
    std::string name;
    Vec2 position;
    double tx_power_dbm = 46.0;
    double bandwidth_hz = 5e6;
    std::uint32_t background_ues = 0;
    double background_demand_bps = 1e6;
};

void validate(const CellConfig& c);

// Log-distance pathloss with lognormal shadowing.
struct PathlossParams {
    double exponent = 3.5;
    double reference_loss_db = 38.57; // free space at 1 m, 2 GHz
    double reference_distance_m = 1.0;
    double shadowing_sigma_db = 8.0;
    std::uint64_t seed = 0;
};

void validate(const PathlossParams& p);

// Identifies one shadowing draw.
struct ShadowKey {
    std::uint32_t cell = 0;
    std::uint32_t ue = 0;
    std::uint64_t tick = 0;
};

// Distances below the reference distance are clamped to it.
double pathloss(const PathlossParams& p, double distance_m, ShadowKey key = {});
double rsrp(const CellConfig& cell, Vec2 ue_position, const PathlossParams& p,
            ShadowKey key = {});

struct RadioParams {
    double thermal_noise_dbm_per_hz = -174.0;
    double noise_figure_db = 9.0;
    double reference_efficiency = 2.0; // bps/Hz, nominal capacity for load
    double efficiency_cap = 6.0;       // bps/Hz, Shannon rate ceiling
    double background_radius_m = 100.0;
};

void validate(const RadioParams& r);

double noise_dbm(double bandwidth_hz, const RadioParams& r);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Serving power over (sum of the other cells' power + noise), in dB. All
// cells are assumed to transmit continuously.
double sinr_db(std::size_t serving, std::span<const double> rsrp_dbm, double noise_dbm);

struct UeState {
    std::uint32_t id = 0;
    Vec2 position;
    Vec2 velocity;
    double demand_bps = 2e6;
    std::optional<std::uint32_t> serving_cell;
    double a3_timer_ms = 0;
    // Background UEs never leave their cell.
    bool pinned = false;

    bool attached() const { return serving_cell.has_value(); }
};

// Throws StateError when the UE has no serving cell.
double sinr_db(const UeState& ue, std::span<const CellConfig> cells, const PathlossParams& p,
               double noise_dbm, std::uint64_t tick = 0);

enum class PolicyKind { DistributedA3, CentralizedLoadAware };

std::string_view policy_name(PolicyKind k);
std::optional<PolicyKind> parse_policy(std::string_view name);

struct HandoverPolicyConfig {
    PolicyKind kind = PolicyKind::DistributedA3;
    double hysteresis_db = 3.0;
    double time_to_trigger_ms = 256.0;
    double similarity_window_db = 3.0;
    // Layer-3 filter coefficient k applied to RSRP before decisions:
    // F = (1 - a) F + a M with a = 2^(-k/4). k = 0 disables filtering.
    double l3_filter_k = 4.0;
};

double l3_filter_weight(double k);

void validate(const HandoverPolicyConfig& c);

struct HandoverDecision {
    std::uint32_t target = 0;

    friend bool operator==(const HandoverDecision&, const HandoverDecision&) = default;
};

// A3 event: best neighbour above serving + hysteresis, held for
// time_to_trigger. Updates ue.a3_timer_ms; uses no load information.
std::optional<HandoverDecision> a3_decide(UeState& ue, std::span<const double> rsrp_dbm,
                                          const HandoverPolicyConfig& cfg, double dt_ms);

// Candidates: neighbours meeting the A3 entry condition whose RSRP is within
// similarity_window of the strongest measurement. Picks the least-loaded
// candidate, then higher RSRP, then lower cell index.
std::optional<HandoverDecision> centralized_decide(UeState& ue, std::span<const double> rsrp_dbm,
                                                   std::span<const double> loads,
                                                   const HandoverPolicyConfig& cfg,
                                                   double dt_ms);

double nominal_capacity_bps(const CellConfig& cell, const RadioParams& r);

// Sum of attached demands over nominal capacity; may exceed 1.
double cell_load(const CellConfig& cell, std::span<const double> attached_demands_bps,
                 const RadioParams& r);

// min(demand, bandwidth / n_active * min(log2(1 + sinr), cap)).
double ue_throughput(double demand_bps, double bandwidth_hz, double sinr_db,
                     std::uint32_t n_active, double efficiency_cap);

} // namespace sdn5g
