#include "sdn5g/des.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <queue>

#include <json.hpp>

#include "sdn5g/error.hpp"
#include "sdn5g/format.hpp"
#include "sdn5g/rng.hpp"

namespace sdn5g {

namespace {

// A callflow flattened into the sequence of things one UE waits for.
struct Action {
    enum class Kind { Transmit, Process } kind;
    std::uint32_t message;
    NodeRef node; // transmit: destination of the hop; process: where it runs
    ProcessingStepKind step{};
};

std::vector<Action> flatten(const Callflow& cf) {
    std::vector<Action> plan;
    for (std::uint32_t i = 0; i < cf.messages.size(); ++i) {
        const auto& msg = cf.messages[i];
        auto process_at = [&](NodeRef at) {
            for (auto s : msg.processing) {
                auto where = step_location(msg, s);
                if (where && *where == at) plan.push_back({Action::Kind::Process, i, at, s});
            }
        };
        process_at(msg.hops.front().from);
        for (const auto& h : msg.hops) {
            plan.push_back({Action::Kind::Transmit, i, h.to, {}});
            process_at(h.to);
        }
    }
    return plan;
}

struct Pending {
    double time;
    std::uint64_t seq;
    enum class Kind { Start, HopArrival, StepDone } kind;
    std::uint32_t ue;

    bool operator>(const Pending& o) const {
        if (time != o.time) return time > o.time;
        return seq > o.seq;
    }
};

struct NodeState {
    std::deque<std::uint32_t> queue; // waiting UEs, FIFO
    bool busy = false;
};

class Engine {
public:
    Engine(const Callflow& cf, const CostParams& p, const Workload& w)
        : cf_(cf), plan_(flatten(cf)), hop_ms_(p.m * p.alpha), step_ms_(p.beta), w_(w),
          cursor_(w.ue_count, 0) {}

    CallflowStats run(std::span<const double> arrivals) {
        stats_.callflow = cf_;
        stats_.ues.resize(w_.ue_count);
        for (std::uint32_t u = 0; u < w_.ue_count; ++u) {
            stats_.ues[u].ue = u;
            stats_.ues[u].arrival_ms = arrivals[u];
            push(arrivals[u], Pending::Kind::Start, u);
        }
        while (!pending_.empty()) {
            const Pending ev = pending_.top();
            pending_.pop();
            switch (ev.kind) {
            case Pending::Kind::Start: advance(ev.ue, ev.time); break;
            case Pending::Kind::HopArrival: {
                const Action& a = plan_[cursor_[ev.ue]];
                record(ev.time, EventKind::MessageArrival, ev.ue, a.message, resolve(a.node, ev.ue),
                       std::nullopt);
                ++cursor_[ev.ue];
                advance(ev.ue, ev.time);
                break;
            }
            case Pending::Kind::StepDone: {
                const Action& a = plan_[cursor_[ev.ue]];
                const NodeId node = resolve(a.node, ev.ue);
                record(ev.time, EventKind::ProcessingComplete, ev.ue, a.message, node, a.step);
                nodes_[node].busy = false;
                ++cursor_[ev.ue];
                advance(ev.ue, ev.time);
                try_start(node, ev.time);
                break;
            }
            }
        }
        return std::move(stats_);
    }

private:
    NodeId resolve(NodeRef role, std::uint32_t ue) const {
        switch (role.kind) {
        case NodeKind::UE: return {NodeKind::UE, Site::Serving, ue};
        case NodeKind::GNB:
        case NodeKind::DNB: return {role.kind, role.site, ue % w_.base_stations};
        default: return {role.kind, Site::Serving, 0};
        }
    }

    void push(double t, Pending::Kind kind, std::uint32_t ue) {
        pending_.push(Pending{t, seq_++, kind, ue});
    }

    void record(double t, EventKind kind, std::uint32_t ue, std::uint32_t msg, NodeId node,
                std::optional<ProcessingStepKind> step) {
        stats_.trace.push_back(SimEvent{t, kind, ue, msg, node, step});
    }

    void advance(std::uint32_t ue, double t) {
        if (cursor_[ue] == plan_.size()) {
            stats_.ues[ue].completion_ms = t;
            const auto last = plan_.empty() ? 0u : plan_.back().message;
            record(t, EventKind::ProcedureComplete, ue, last, resolve({NodeKind::UE}, ue),
                   std::nullopt);
            return;
        }
        const Action& a = plan_[cursor_[ue]];
        if (a.kind == Action::Kind::Transmit) {
            push(t + hop_ms_, Pending::Kind::HopArrival, ue);
        } else {
            const NodeId node = resolve(a.node, ue);
            nodes_[node].queue.push_back(ue);
            try_start(node, t);
        }
    }

    void try_start(const NodeId& node, double t) {
        NodeState& st = nodes_[node];
        if (st.busy || st.queue.empty()) return;
        const std::uint32_t ue = st.queue.front();
        st.queue.pop_front();
        st.busy = true;
        push(t + step_ms_, Pending::Kind::StepDone, ue);
    }

    const Callflow& cf_;
    std::vector<Action> plan_;
    double hop_ms_;
    double step_ms_;
    Workload w_;
    std::vector<std::size_t> cursor_;
    std::map<NodeId, NodeState> nodes_;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending_;
    std::uint64_t seq_ = 0;
    CallflowStats stats_;
};

std::vector<double> arrival_times(const Workload& w, std::uint64_t seed) {
    std::vector<double> t(w.ue_count, 0.0);
    switch (w.arrival.kind) {
    case Arrival::Kind::Simultaneous: break;
    case Arrival::Kind::FixedInterval:
        for (std::uint32_t u = 0; u < w.ue_count; ++u) t[u] = u * w.arrival.param_ms;
        break;
    case Arrival::Kind::UniformRandom: {
        Rng rng(seed);
        for (auto& x : t) x = rng.uniform(0.0, w.arrival.param_ms);
        break;
    }
    }
    return t;
}

} // namespace

std::string_view event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::MessageArrival: return "MessageArrival";
    case EventKind::ProcessingComplete: return "ProcessingComplete";
    case EventKind::ProcedureComplete: return "ProcedureComplete";
    }
    return "?";
}

std::string node_id_name(const NodeId& n) {
    std::string s = node_name(NodeRef{n.kind, n.site});
    if (n.kind == NodeKind::UE || n.kind == NodeKind::GNB || n.kind == NodeKind::DNB)
        s += '[' + std::to_string(n.instance) + ']';
    return s;
}

void validate(const Workload& w) {
    if (w.ue_count < 1) throw ParameterError("workload: ue_count must be >= 1");
    if (w.base_stations < 1) throw ParameterError("workload: base_stations must be >= 1");
    if (!std::isfinite(w.arrival.param_ms) || w.arrival.param_ms < 0)
        throw ParameterError("workload: arrival parameter must be finite and non-negative");
}

Arrival parse_arrival(std::string_view text) {
    if (text == "simultaneous") return {};
    auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        auto head = text.substr(0, colon);
        double v = parse_double(text.substr(colon + 1));
        if (!std::isfinite(v) || v < 0)
            throw ParameterError("arrival parameter must be non-negative");
        if (head == "interval") return {Arrival::Kind::FixedInterval, v};
        if (head == "uniform") return {Arrival::Kind::UniformRandom, v};
    }
    throw ParameterError("unknown arrival process '" + std::string(text) +
                         "' (expected simultaneous, interval:<ms> or uniform:<ms>)");
}

CallflowStats run_callflow(const Callflow& cf, const CostParams& p, const Workload& w,
                           std::uint64_t seed) {
    validate(p);
    validate(w);
    auto report = validate_callflow(cf);
    if (!report.ok()) throw InvalidCallflowError(std::move(report));
    const auto arrivals = arrival_times(w, seed);
    return Engine(cf, p, w).run(arrivals);
}

std::vector<CallflowStats> run_callflow_seeds(const Callflow& cf, const CostParams& p,
                                              const Workload& w,
                                              std::span<const std::uint64_t> seeds,
                                              Exec exec) {
    std::vector<CallflowStats> out(seeds.size());
    const auto n = static_cast<std::ptrdiff_t>(seeds.size());
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = run_callflow(cf, p, w, seeds[i]);
        return out;
    }
    // Validate once up front so no exception escapes the parallel region.
    validate(p);
    validate(w);
    if (auto r = validate_callflow(cf); !r.ok()) throw InvalidCallflowError(std::move(r));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = run_callflow(cf, p, w, seeds[i]);
    return out;
}

std::uint64_t trace_digest(std::span<const SimEvent> trace) {
    Fnv1a h;
    for (const auto& e : trace) {
        h.update_f64(e.time);
        h.update_u64(static_cast<std::uint64_t>(e.kind));
        h.update_u64(e.ue);
        h.update_u64(e.message);
        h.update_u64(static_cast<std::uint64_t>(e.node.kind) << 8 |
                     static_cast<std::uint64_t>(e.node.site));
        h.update_u64(e.node.instance);
        h.update_u64(e.step ? static_cast<std::uint64_t>(*e.step) + 1 : 0);
    }
    return h.value();
}

double mean_completion(const CallflowStats& stats) {
    if (stats.ues.empty()) throw EmptyResultError("mean_completion: no completed UEs");
    double sum = 0;
    for (const auto& u : stats.ues) sum += u.duration_ms();
    return sum / static_cast<double>(stats.ues.size());
}

std::string export_trace(const CallflowStats& stats) {
    std::string out;
    for (const auto& e : stats.trace) {
        nlohmann::ordered_json rec;
        rec["t"] = e.time;
        rec["kind"] = event_kind_name(e.kind);
        rec["node"] = node_id_name(e.node);
        rec["ue"] = e.ue;
        rec["msg"] = stats.callflow.messages.at(e.message).id;
        if (e.step) rec["step"] = traits(*e.step).notation;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

std::string stats_csv(const CallflowStats& stats, const Workload& w) {
    std::string out = "ue,cluster,arrival_ms,completion_ms,duration_ms\n";
    for (const auto& u : stats.ues) {
        out += std::to_string(u.ue) + ',' + std::to_string(u.ue % w.base_stations) + ',' +
               format_double(u.arrival_ms) + ',' + format_double(u.completion_ms) + ',' +
               format_double(u.duration_ms()) + '\n';
    }
    return out;
}

} // namespace sdn5g
