#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdn5g/exec.hpp"
#include "sdn5g/radio.hpp"

namespace sdn5g {

struct UeSpec {
    Vec2 start;
    Vec2 velocity;
    double demand_bps = 2e6;
};

// Moving UEs drawn from the run seed: start uniformly in a disc, constant
// speed, heading uniform in [heading_min_deg, heading_max_deg].
struct FleetSpec {
    std::uint32_t count = 0;
    Vec2 center;
    double radius_m = 0;
    double speed_mps = 20;
    double heading_min_deg = 0;
    double heading_max_deg = 0;
    double demand_bps = 2e6;
};

struct Scenario {
    std::string name;
    std::vector<CellConfig> cells;
    PathlossParams pathloss;
    RadioParams radio;
    HandoverPolicyConfig policy;
    std::vector<UeSpec> ues;
    std::optional<FleetSpec> fleet;
    double duration_s = 20;
    double tick_ms = 100;
    std::uint64_t seed = 1;
};

void validate(const Scenario& s);

// Background UEs first (cell by cell, evenly spaced on a ring of
// radio.background_radius_m, pinned), then explicit UEs, then the fleet.
std::vector<UeState> populate(const Scenario& s, std::uint64_t seed);

struct HandoverEvent {
    double time_ms = 0;
    std::uint32_t ue = 0;
    std::uint32_t from = 0;
    std::uint32_t to = 0;

    friend bool operator==(const HandoverEvent&, const HandoverEvent&) = default;
};

struct UeSample {
    std::uint32_t tick = 0;
    std::uint32_t ue = 0;
    std::uint32_t cell = 0;
    double rsrp_dbm = 0;
    double sinr_db = 0;
    double rate_bps = 0;

    friend bool operator==(const UeSample&, const UeSample&) = default;
};

struct MobilityStats {
    PolicyKind policy = PolicyKind::DistributedA3;
    std::uint64_t seed = 0;
    std::vector<std::string> cell_names;
    std::vector<bool> moving; // per UE
    std::vector<double> tick_time_ms;
    std::vector<double> system_throughput_bps; // per tick
    std::vector<double> ue_mean_throughput_bps;
    std::vector<HandoverEvent> handovers;
    std::vector<UeSample> samples; // empty unless requested

    std::size_t handover_count() const { return handovers.size(); }
    double mean_system_throughput_bps() const;

    friend bool operator==(const MobilityStats&, const MobilityStats&) = default;
};

struct MobilityOptions {
    bool record_samples = true;
    Exec exec = Exec::OpenMP;
};

// The policy argument overrides scenario.policy.kind; thresholds come from
// the scenario.
MobilityStats run_mobility(const Scenario& s, PolicyKind policy, std::uint64_t seed,
                           const MobilityOptions& opt = {});

// Columns: tick,time_ms,ue,cell,rsrp_dbm,sinr_db,rate_bps
std::string samples_csv(const MobilityStats& st, double tick_ms);
// Columns: time_ms,ue,from,to
std::string handovers_csv(const MobilityStats& st);

// Per-tick kernels. `rsrp` is row-major [ue][cell].
namespace kernels {

void measure_rsrp(std::span<const CellConfig> cells, std::span<const UeState> ues,
                  const PathlossParams& p, std::uint64_t tick, std::span<double> rsrp, Exec exec);

// Rates for every attached UE given cell populations.
void compute_rates(std::span<const CellConfig> cells, std::span<const UeState> ues,
                   std::span<const double> rsrp, std::span<const std::uint32_t> n_active,
                   const RadioParams& r, std::span<double> sinr, std::span<double> rate,
                   Exec exec);

} // namespace kernels

} // namespace sdn5g
