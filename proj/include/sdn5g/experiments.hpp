#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdn5g/cost_model.hpp"
#include "sdn5g/des.hpp"
#include "sdn5g/mobility.hpp"

namespace sdn5g {

// --- attach time -----------------------------------------------------------

struct AttachSeedRow {
    std::uint64_t seed = 0;
    double three_gpp_mean_ms = 0;
    double proposed_mean_ms = 0;
};

struct AttachSimResult {
    std::vector<AttachSeedRow> rows;
    double three_gpp_mean_ms = 0;
    double proposed_mean_ms = 0;
    // (3gpp - proposed) / 3gpp
    double reduction = 0;
};

AttachSimResult attach_sim(const Workload& w, const CostParams& p,
                           std::span<const std::uint64_t> seeds, Exec exec = Exec::OpenMP);

// Columns: seed,3gpp_mean_ms,proposed_mean_ms,reduction; last row seed=all.
std::string attach_sim_csv(const AttachSimResult& r);

// --- mobility --------------------------------------------------------------

struct SummaryRow {
    std::string policy;
    std::uint64_t seed = 0;
    std::uint64_t handovers = 0;
    double mean_system_throughput_bps = 0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

SummaryRow summarize(const MobilityStats& st);

// Columns: policy,seed,handovers,mean_system_throughput_bps
std::string summary_csv(std::span<const SummaryRow> rows);
std::vector<SummaryRow> parse_summary_csv(std::string_view text);

// One run per (policy, seed), ordered policy-major then by seed.
std::vector<MobilityStats> mobility_experiment(const Scenario& s,
                                               std::span<const PolicyKind> policies,
                                               std::span<const std::uint64_t> seeds,
                                               const MobilityOptions& opt = {});

// Sweep data: x = handovers performed by the distributed baseline,
// y = centralized minus distributed mean system throughput.
struct GainPoint {
    std::uint32_t moving_ues = 0;
    std::uint64_t seed = 0;
    double handovers = 0;
    double gain_bps = 0;
};

// Pairs distributed/centralized runs with equal seed.
std::vector<GainPoint> paired_gains(std::span<const MobilityStats> runs);

// Columns: moving_ues,seed,handover_count,throughput_gain_bps
std::string gain_csv(std::span<const GainPoint> points);

struct SweepResult {
    std::vector<SummaryRow> rows;        // per (moving_ues, policy, seed)
    std::vector<std::uint32_t> row_ues;  // moving-UE count of each row
    std::vector<GainPoint> per_seed;     // per (moving_ues, seed)
    std::vector<GainPoint> averaged;     // per moving_ues, seed = 0
    double spearman = 0;                 // over `averaged`
};

// Replaces the scenario fleet size by each value in `fleet_sizes` and runs
// both policies for every seed. Independent runs execute concurrently under
// Exec::OpenMP; results are merged in deterministic order.
SweepResult sweep_experiment(const Scenario& base, std::span<const std::uint32_t> fleet_sizes,
                             std::span<const std::uint64_t> seeds, Exec exec = Exec::OpenMP);

// Columns: moving_ues,policy,seed,handovers,mean_system_throughput_bps
std::string sweep_csv(const SweepResult& r);

// Spearman rank correlation, average ranks for ties. Returns 0 when either
// series is constant.
double spearman(std::span<const double> x, std::span<const double> y);

std::vector<std::uint64_t> parse_seed_list(std::string_view text);

} // namespace sdn5g
