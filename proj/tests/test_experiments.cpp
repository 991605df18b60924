#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "sdn5g/error.hpp"
#include "sdn5g/experiments.hpp"
#include "sdn5g/rng.hpp"
#include "sdn5g/scenario.hpp"

using namespace sdn5g;

namespace {

// Rank-difference formula, valid only without ties.
double spearman_no_ties(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    auto ranks = [n](const std::vector<double>& v) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[idx[i]] = static_cast<double>(i);
        return r;
    };
    auto rx = ranks(x), ry = ranks(y);
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double nn = static_cast<double>(n);
    return 1 - 6 * d2 / (nn * (nn * nn - 1));
}

} // namespace

TEST_CASE("spearman") {
    std::vector<double> a{1, 2, 3, 4, 5};
    std::vector<double> up{2, 4, 8, 16, 32};
    std::vector<double> down{5, 4, 3, 2, 1};
    CHECK(spearman(a, up) == doctest::Approx(1.0));
    CHECK(spearman(a, down) == doctest::Approx(-1.0));
    std::vector<double> flat{3, 3, 3, 3, 3};
    CHECK(spearman(a, flat) == 0.0);
    // ties use average ranks: Pearson of (1,2,3,4) vs (1,2.5,2.5,4)
    std::vector<double> x{1, 2, 3, 4}, y{10, 20, 20, 30};
    CHECK(spearman(x, y) == doctest::Approx(4.5 / std::sqrt(5.0 * 4.5)));

    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(12), q(12);
        for (auto& v : p) v = rng.uniform01();
        for (auto& v : q) v = rng.uniform01();
        CHECK(spearman(p, q) == doctest::Approx(spearman_no_ties(p, q)));
    }
    std::vector<double> short_x{1, 2}, short_y{1, 2, 3};
    CHECK_THROWS(spearman(short_x, short_y));
}

TEST_CASE("seed lists") {
    CHECK(parse_seed_list("1,2,5-8") == std::vector<std::uint64_t>{1, 2, 5, 6, 7, 8});
    CHECK(parse_seed_list("3") == std::vector<std::uint64_t>{3});
    CHECK_THROWS_AS(parse_seed_list(""), ParameterError);
    CHECK_THROWS_AS(parse_seed_list("4-2"), ParameterError);
    CHECK_THROWS_AS(parse_seed_list("x"), ParameterError);
}

TEST_CASE("summary csv round trip") {
    std::vector<SummaryRow> rows{{"distributed-a3", 1, 3, 37810001.30435776},
                                 {"centralized", 12, 0, 1e-300},
                                 {"centralized", 2, 17, 0.1}};
    auto text = summary_csv(rows);
    CHECK(text.rfind("policy,seed,handovers,mean_system_throughput_bps\n", 0) == 0);
    CHECK(parse_summary_csv(text) == rows);
    CHECK_THROWS(parse_summary_csv("policy,seed\nx,1\n"));
}

TEST_CASE("attach simulation ordering") {
    Workload w;
    w.ue_count = 10;
    w.arrival = parse_arrival("uniform:20");
    std::vector<std::uint64_t> seeds{1, 2, 3};
    auto r = attach_sim(w, CostParams{}, seeds);
    REQUIRE(r.rows.size() == 3);
    for (const auto& row : r.rows) CHECK(row.proposed_mean_ms < row.three_gpp_mean_ms);
    CHECK(r.reduction > 0);
    CHECK(r.reduction == doctest::Approx((r.three_gpp_mean_ms - r.proposed_mean_ms) /
                                         r.three_gpp_mean_ms));
    auto serial = attach_sim(w, CostParams{}, seeds, Exec::Serial);
    CHECK(attach_sim_csv(serial) == attach_sim_csv(r));
    CHECK(attach_sim_csv(r).find("\nall,") != std::string::npos);
}

TEST_CASE("mobility experiment and paired gains") {
    auto s = parse_scenario("three-cell-fleet");
    s.duration_s = 5;
    std::vector<PolicyKind> policies{PolicyKind::DistributedA3, PolicyKind::CentralizedLoadAware};
    std::vector<std::uint64_t> seeds{4, 5};
    auto runs = mobility_experiment(s, policies, seeds);
    REQUIRE(runs.size() == 4);
    CHECK(runs[0].policy == PolicyKind::DistributedA3);
    CHECK(runs[1].seed == 5);
    CHECK(runs[2].policy == PolicyKind::CentralizedLoadAware);
    CHECK(runs[3] == run_mobility(s, PolicyKind::CentralizedLoadAware, 5));

    auto gains = paired_gains(runs);
    REQUIRE(gains.size() == 2);
    CHECK(gains[0].seed == 4);
    CHECK(gains[0].moving_ues == s.fleet->count);
    CHECK(gains[0].handovers == static_cast<double>(runs[0].handover_count()));
    CHECK(gains[0].gain_bps == doctest::Approx(runs[2].mean_system_throughput_bps() -
                                               runs[0].mean_system_throughput_bps()));
    CHECK(gain_csv(gains).rfind("moving_ues,seed,handover_count,throughput_gain_bps\n", 0) == 0);
}

TEST_CASE("sweep is independent of execution mode") {
    auto s = parse_scenario("three-cell-fleet");
    s.duration_s = 5;
    std::vector<std::uint32_t> sizes{4, 8, 12};
    std::vector<std::uint64_t> seeds{1, 2};
    auto a = sweep_experiment(s, sizes, seeds, Exec::Serial);
    auto b = sweep_experiment(s, sizes, seeds, Exec::OpenMP);
    CHECK(sweep_csv(a) == sweep_csv(b));
    REQUIRE(a.averaged.size() == 3);
    REQUIRE(a.per_seed.size() == 6);
    CHECK(a.rows.size() == 12);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        CHECK(a.averaged[i].moving_ues == sizes[i]);
        double mean = (a.per_seed[2 * i].gain_bps + a.per_seed[2 * i + 1].gain_bps) / 2;
        CHECK(a.averaged[i].gain_bps == doctest::Approx(mean));
    }
    CHECK(a.spearman == b.spearman);
    auto no_fleet = parse_scenario("three-cell");
    CHECK_THROWS(sweep_experiment(no_fleet, sizes, seeds));
}
