// Serial reference vs OpenMP timings for the per-UE radio kernels and the
// seed/sweep fan-out. Results are checked for equality before timing is
// reported.
//
//   bench_kernels [ues] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "sdn5g/des.hpp"
#include "sdn5g/exec.hpp"
#include "sdn5g/experiments.hpp"
#include "sdn5g/mobility.hpp"
#include "sdn5g/scenario.hpp"

using namespace sdn5g;

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s %12.6f %12.6f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const std::uint32_t n_ues = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 200000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

    std::printf("threads: %d, ues: %u, repeats: %d\n", max_threads(), n_ues, repeats);
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial_s", "openmp_s", "speedup");

    auto s = parse_scenario("three-cell-fleet");
    s.fleet->count = n_ues;
    auto ues = populate(s, 1);
    const std::size_t nc = s.cells.size();

    std::vector<double> ra(ues.size() * nc), rb(ues.size() * nc);
    const double rsrp_serial = seconds(
        [&] { kernels::measure_rsrp(s.cells, ues, s.pathloss, 3, ra, Exec::Serial); }, repeats);
    const double rsrp_omp = seconds(
        [&] { kernels::measure_rsrp(s.cells, ues, s.pathloss, 3, rb, Exec::OpenMP); }, repeats);
    report("measure_rsrp", rsrp_serial, rsrp_omp, ra == rb);

    std::vector<std::uint32_t> n_active(nc, 0);
    for (std::size_t u = 0; u < ues.size(); ++u) {
        ues[u].serving_cell = static_cast<std::uint32_t>(u % nc);
        ++n_active[u % nc];
    }
    std::vector<double> sa(ues.size()), sb(ues.size()), qa(ues.size()), qb(ues.size());
    const double rate_serial = seconds(
        [&] {
            kernels::compute_rates(s.cells, ues, ra, n_active, s.radio, sa, qa, Exec::Serial);
        },
        repeats);
    const double rate_omp = seconds(
        [&] {
            kernels::compute_rates(s.cells, ues, ra, n_active, s.radio, sb, qb, Exec::OpenMP);
        },
        repeats);
    report("compute_rates", rate_serial, rate_omp, sa == sb && qa == qb);

    auto base = parse_scenario("three-cell-fleet");
    std::vector<std::uint32_t> sizes{10, 20, 30};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4};
    SweepResult wa, wb;
    const double sweep_serial =
        seconds([&] { wa = sweep_experiment(base, sizes, seeds, Exec::Serial); }, 1);
    const double sweep_omp =
        seconds([&] { wb = sweep_experiment(base, sizes, seeds, Exec::OpenMP); }, 1);
    report("sweep (3 sizes x 4 seeds)", sweep_serial, sweep_omp, sweep_csv(wa) == sweep_csv(wb));

    const auto cf = build_callflow(CallflowVariant::ThreeGppRegistration);
    Workload w;
    w.ue_count = 2000;
    w.base_stations = 8;
    w.arrival = parse_arrival("uniform:500");
    std::vector<std::uint64_t> many;
    for (std::uint64_t k = 1; k <= 32; ++k) many.push_back(k);
    std::vector<CallflowStats> da, db;
    const double des_serial =
        seconds([&] { da = run_callflow_seeds(cf, CostParams{}, w, many, Exec::Serial); }, 1);
    const double des_omp =
        seconds([&] { db = run_callflow_seeds(cf, CostParams{}, w, many, Exec::OpenMP); }, 1);
    bool same = da.size() == db.size();
    for (std::size_t i = 0; same && i < da.size(); ++i)
        same = trace_digest(da[i].trace) == trace_digest(db[i].trace);
    report("DES seeds (32 x 2000 UEs)", des_serial, des_omp, same);
    return 0;
}
