#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "sdn5g/des.hpp"
#include "sdn5g/error.hpp"

using namespace sdn5g;

namespace {

Workload simultaneous(std::uint32_t n, std::uint32_t bs = 1) {
    Workload w;
    w.ue_count = n;
    w.base_stations = bs;
    return w;
}

} // namespace

TEST_CASE("single UE completes in exactly the closed-form time") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.01, 20.0);
    for (int i = 0; i < 50; ++i) {
        CostParams p{u(gen), u(gen), u(gen)};
        for (auto v : all_variants()) {
            auto cf = build_callflow(v);
            auto s = run_callflow(cf, p, simultaneous(1), 1);
            REQUIRE(s.ues.size() == 1);
            double want = signaling_time(cf, p);
            CHECK(s.ues[0].duration_ms() == doctest::Approx(want).epsilon(1e-9));
            CHECK(mean_completion(s) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("transmission-free limit") {
    auto cf = build_callflow(CallflowVariant::ProposedHandover);
    auto s = run_callflow(cf, CostParams{0, 2.5, 1}, simultaneous(1), 3);
    CHECK(s.ues[0].duration_ms() == doctest::Approx(12 * 2.5));
}

TEST_CASE("queueing can only delay") {
    CostParams p{1, 4, 1};
    for (auto v : all_variants()) {
        auto cf = build_callflow(v);
        double single = signaling_time(cf, p);
        auto s = run_callflow(cf, p, simultaneous(2), 1);
        REQUIRE(s.ues.size() == 2);
        bool someone_waited = false;
        for (const auto& r : s.ues) {
            CHECK(r.duration_ms() >= single - 1e-9);
            someone_waited |= r.duration_ms() > single + 1e-9;
        }
        CHECK(someone_waited);
    }
}

TEST_CASE("disjoint base stations remove contention in the 3GPP flows") {
    // 3GPP processing happens only at the base stations, so one station per UE
    // means no shared processor.
    CostParams p{1.5, 3, 2};
    for (auto v : {CallflowVariant::ThreeGppRegistration, CallflowVariant::ThreeGppHandover}) {
        auto cf = build_callflow(v);
        auto s = run_callflow(cf, p, simultaneous(8, 8), 5);
        CHECK(mean_completion(s) == doctest::Approx(signaling_time(cf, p)));
    }
    // The proposed flows process at the shared eAMF and keep some queueing.
    auto cf = build_callflow(CallflowVariant::ProposedRegistration);
    auto s = run_callflow(cf, p, simultaneous(8, 8), 5);
    CHECK(mean_completion(s) > signaling_time(cf, p));
}

TEST_CASE("proposed registration beats 3GPP when 14 beta > m alpha") {
    CostParams p{1, 4, 1};
    for (auto arrival : {"simultaneous", "interval:5", "uniform:50"}) {
        Workload w = simultaneous(10, 2);
        w.arrival = parse_arrival(arrival);
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            auto a = run_callflow(build_callflow(CallflowVariant::ThreeGppRegistration), p, w, seed);
            auto b = run_callflow(build_callflow(CallflowVariant::ProposedRegistration), p, w, seed);
            CHECK(mean_completion(b) < mean_completion(a));
        }
    }
}

TEST_CASE("conservation and causality") {
    CostParams p{0.7, 2.0, 3.0};
    Workload w = simultaneous(6, 2);
    w.arrival = parse_arrival("uniform:30");
    for (auto v : all_variants()) {
        CAPTURE(variant_name(v));
        auto cf = build_callflow(v);
        auto s = run_callflow(cf, p, w, 9);

        int arrivals = 0, steps = 0, done = 0;
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<double>> hop_times;
        std::map<NodeId, std::vector<double>> node_steps;
        double last = -1;
        for (const auto& e : s.trace) {
            CHECK(e.time >= last);
            last = e.time;
            switch (e.kind) {
            case EventKind::MessageArrival:
                ++arrivals;
                hop_times[{e.ue, e.message}].push_back(e.time);
                break;
            case EventKind::ProcessingComplete:
                ++steps;
                CHECK(e.step.has_value());
                node_steps[e.node].push_back(e.time);
                break;
            case EventKind::ProcedureComplete: ++done; break;
            }
        }
        CHECK(arrivals == static_cast<int>(w.ue_count) * cf.hop_count());
        CHECK(steps == static_cast<int>(w.ue_count) * cf.step_count());
        CHECK(done == static_cast<int>(w.ue_count));

        for (const auto& [key, times] : hop_times) {
            CHECK(times.size() == cf.messages[key.second].hops.size());
            for (std::size_t k = 1; k < times.size(); ++k)
                CHECK(times[k] >= times[k - 1] + p.m * p.alpha - 1e-9);
        }
        for (const auto& [node, times] : node_steps)
            for (std::size_t k = 1; k < times.size(); ++k)
                CHECK(times[k] >= times[k - 1] + p.beta - 1e-9);
        for (const auto& r : s.ues) CHECK(r.arrival_ms >= 0);
    }
}

TEST_CASE("digest determinism") {
    auto cf = build_callflow(CallflowVariant::ThreeGppHandover);
    Workload w = simultaneous(5, 2);
    w.arrival = parse_arrival("uniform:20");
    CostParams p{};
    auto a = run_callflow(cf, p, w, 1);
    auto b = run_callflow(cf, p, w, 1);
    auto c = run_callflow(cf, p, w, 2);
    CHECK(trace_digest(a.trace) == trace_digest(b.trace));
    CHECK(trace_digest(a.trace) != trace_digest(c.trace));
    CHECK(export_trace(a) == export_trace(b));
    CHECK(trace_digest({}) == 0xcbf29ce484222325ULL);
}

TEST_CASE("arrival processes") {
    auto cf = build_callflow(CallflowVariant::ProposedHandover);
    Workload w = simultaneous(4);
    w.arrival = parse_arrival("interval:7.5");
    auto s = run_callflow(cf, CostParams{}, w, 1);
    for (std::size_t i = 0; i < s.ues.size(); ++i)
        CHECK(s.ues[i].arrival_ms == doctest::Approx(7.5 * static_cast<double>(i)));

    w.arrival = parse_arrival("uniform:10");
    s = run_callflow(cf, CostParams{}, w, 4);
    for (const auto& r : s.ues) {
        CHECK(r.arrival_ms >= 0);
        CHECK(r.arrival_ms < 10);
    }
    CHECK_THROWS_AS(parse_arrival("poisson:3"), ParameterError);
    CHECK_THROWS_AS(parse_arrival("interval:-1"), ParameterError);
}

TEST_CASE("workload validation and empty results") {
    auto cf = build_callflow(CallflowVariant::ProposedHandover);
    CHECK_THROWS_AS(run_callflow(cf, CostParams{}, simultaneous(0), 1), ParameterError);
    CHECK_THROWS_AS(run_callflow(cf, CostParams{}, simultaneous(1, 0), 1), ParameterError);
    CHECK_THROWS_AS(run_callflow(cf, CostParams{-1, 1, 1}, simultaneous(1), 1), ParameterError);
    CallflowStats empty{cf, {}, {}};
    CHECK_THROWS_AS(mean_completion(empty), EmptyResultError);
}

TEST_CASE("seed fan-out matches the serial loop") {
    auto cf = build_callflow(CallflowVariant::ThreeGppRegistration);
    Workload w = simultaneous(20, 3);
    w.arrival = parse_arrival("uniform:40");
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
    auto serial = run_callflow_seeds(cf, CostParams{}, w, seeds, Exec::Serial);
    auto par = run_callflow_seeds(cf, CostParams{}, w, seeds, Exec::OpenMP);
    REQUIRE(serial.size() == seeds.size());
    REQUIRE(par.size() == seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        CHECK(trace_digest(serial[i].trace) == trace_digest(par[i].trace));
        CHECK(trace_digest(serial[i].trace) ==
              trace_digest(run_callflow(cf, CostParams{}, w, seeds[i]).trace));
    }
}

TEST_CASE("trace and stats export") {
    auto cf = build_callflow(CallflowVariant::ProposedRegistration);
    auto w = simultaneous(2, 2);
    auto s = run_callflow(cf, CostParams{}, w, 1);
    std::istringstream in(export_trace(s));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        const auto& e = s.trace[n++];
        CHECK(j.at("t").get<double>() == e.time);
        CHECK(j.at("ue") == e.ue);
        CHECK(j.at("msg") == cf.messages[e.message].id);
        CHECK(j.contains("step") == e.step.has_value());
    }
    CHECK(n == s.trace.size());

    auto csv = stats_csv(s, w);
    CHECK(csv.rfind("ue,cluster,arrival_ms,completion_ms,duration_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
