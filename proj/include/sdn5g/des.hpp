#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdn5g/callflow.hpp"
#include "sdn5g/cost_model.hpp"
#include "sdn5g/exec.hpp"

namespace sdn5g {

enum class EventKind : std::uint8_t { MessageArrival, ProcessingComplete, ProcedureComplete };

std::string_view event_kind_name(EventKind k);

// Concrete simulated node. Base stations are replicated per cluster, UEs per
// UE id; AMF/eAMF/core are shared by every UE.
struct NodeId {
    NodeKind kind = NodeKind::UE;
    Site site = Site::Serving;
    std::uint32_t instance = 0;

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string node_id_name(const NodeId& n);

struct SimEvent {
    double time = 0;
    EventKind kind = EventKind::MessageArrival;
    std::uint32_t ue = 0;
    std::uint32_t message = 0; // index into the callflow
    NodeId node;
    std::optional<ProcessingStepKind> step;
};

struct Arrival {
    enum class Kind { Simultaneous, FixedInterval, UniformRandom };
    Kind kind = Kind::Simultaneous;
    double param_ms = 0; // interval or window
};

struct Workload {
    std::uint32_t ue_count = 1;
    Arrival arrival;
    // UE u is served by base-station cluster u % base_stations.
    std::uint32_t base_stations = 1;
};

void validate(const Workload& w);

// Parses "simultaneous", "interval:<ms>" or "uniform:<ms>".
Arrival parse_arrival(std::string_view text);

struct UeResult {
    std::uint32_t ue = 0;
    double arrival_ms = 0;
    double completion_ms = 0; // absolute simulated time
    double duration_ms() const { return completion_ms - arrival_ms; }
};

struct CallflowStats {
    Callflow callflow;
    std::vector<UeResult> ues;
    std::vector<SimEvent> trace;
};

// One FIFO processor per node (each step holds it for beta ms); links are
// contention-free and cost m * alpha per hop.
CallflowStats run_callflow(const Callflow& cf, const CostParams& p, const Workload& w,
                           std::uint64_t seed);

// Independent runs, one per seed, returned in seed order.
std::vector<CallflowStats> run_callflow_seeds(const Callflow& cf, const CostParams& p,
                                              const Workload& w,
                                              std::span<const std::uint64_t> seeds,
                                              Exec exec = Exec::OpenMP);

std::uint64_t trace_digest(std::span<const SimEvent> trace);

// Mean of per-UE durations; throws EmptyResultError without completions.
double mean_completion(const CallflowStats& stats);

// {"t","kind","node","ue","msg"[,"step"]} per line.
std::string export_trace(const CallflowStats& stats);
// Columns: ue,cluster,arrival_ms,completion_ms,duration_ms
std::string stats_csv(const CallflowStats& stats, const Workload& w);

} // namespace sdn5g
