// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. argv[1] is the sdn5g command-line binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sdn5g/callflow.hpp"
#include "sdn5g/cost_model.hpp"
#include "sdn5g/des.hpp"
#include "sdn5g/experiments.hpp"
#include "sdn5g/format.hpp"
#include "sdn5g/mobility.hpp"
#include "sdn5g/rng.hpp"
#include "sdn5g/scenario.hpp"

using namespace sdn5g;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string cli_path;
fs::path scratch;

// Log-uniform over six decades so both terms of each polynomial dominate
// in some draws.
CostParams random_params(Rng& rng) {
    auto draw = [&] { return std::pow(10.0, rng.uniform(-3, 3)); };
    return CostParams{draw(), draw(), draw()};
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int shell(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = "\"" + cli_path + "\" " + args + " > \"" + stdout_file.string() +
                            "\" 2>&1";
    return std::system(cmd.c_str());
}

Outcome coefficient_exactness() {
    struct Row { CallflowVariant v; CostPolynomial want; };
    const Row rows[] = {
        {CallflowVariant::ThreeGppRegistration, {18, 24}},
        {CallflowVariant::ProposedRegistration, {19, 10}},
        {CallflowVariant::ThreeGppHandover, {13, 22}},
        {CallflowVariant::ProposedHandover, {12, 12}},
    };
    Outcome o{true, ""};
    for (const auto& r : rows) {
        auto got = symbolic_cost(build_callflow(r.v));
        o.detail += std::string(variant_name(r.v)) + "=(" + std::to_string(got.tx_hops) + "," +
                    std::to_string(got.proc_steps) + ") ";
        o.pass &= got == r.want;
    }
    return o;
}

Outcome handover_improvement() {
    const double pct = improvement(78.5, 55.5) * 100;
    return {std::abs(pct - 29.29) <= 0.01, "improvement(78.5, 55.5) = " + format_double(pct) + "%"};
}

Outcome handover_dominance() {
    Rng rng(2024);
    const auto base = build_callflow(CallflowVariant::ThreeGppHandover);
    const auto prop = build_callflow(CallflowVariant::ProposedHandover);
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
        auto p = random_params(rng);
        ok += signaling_time(prop, p) < signaling_time(base, p);
    }
    return {ok == 1000, std::to_string(ok) + "/1000 triples"};
}

Outcome registration_breakeven_sign() {
    Rng rng(7);
    const auto base = build_callflow(CallflowVariant::ThreeGppRegistration);
    const auto prop = build_callflow(CallflowVariant::ProposedRegistration);
    auto sign = [](double x) { return (x > 0) - (x < 0); };
    int ok = 0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        auto p = random_params(rng);
        // every tenth triple sits exactly on the threshold
        if (i % 10 == 0) p.beta = registration_breakeven(p.m, p.alpha);
        const double t3 = signaling_time(base, p);
        const double tp = signaling_time(prop, p);
        const double lhs = 14 * p.beta, rhs = p.m * p.alpha;
        if (rel_close(lhs, rhs, 1e-9))
            ok += rel_close(t3, tp, 1e-9);
        else
            ok += sign(t3 - tp) == sign(lhs - rhs);
    }
    return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " triples (100 at threshold)"};
}

Outcome des_equivalence() {
    Rng rng(99);
    int ok = 0, total = 0;
    double worst = 0;
    Workload w;
    for (int i = 0; i < 100; ++i) {
        auto p = random_params(rng);
        for (auto v : all_variants()) {
            auto cf = build_callflow(v);
            auto s = run_callflow(cf, p, w, static_cast<std::uint64_t>(i));
            const double des = s.ues.at(0).duration_ms();
            const double closed = signaling_time(cf, p);
            worst = std::max(worst, std::abs(des - closed) / closed);
            ok += rel_close(des, closed, 1e-9);
            ++total;
        }
    }
    std::ostringstream d;
    d << ok << "/" << total << " runs, worst relative error " << worst;
    return {ok == total, d.str()};
}

Outcome attach_ordering() {
    const auto dir = scratch / "attach";
    fs::create_directories(dir);
    if (shell("attach-sim --out \"" + dir.string() + "\"", dir / "stdout.txt") != 0)
        return {false, "attach-sim failed: " + slurp(dir / "stdout.txt")};
    std::istringstream in(slurp(dir / "attach.csv"));
    std::string line;
    while (std::getline(in, line)) {
        auto f = split(line, ',');
        if (f.size() == 4 && f[0] == "all") {
            const double a = parse_double(f[1]), b = parse_double(f[2]);
            return {b < a, "3gpp " + f[1] + " ms, proposed " + f[2] + " ms (14*beta > m*alpha)"};
        }
    }
    return {false, "no summary row in attach.csv"};
}

Outcome handover_target() {
    auto s = parse_scenario("three-cell");
    s.pathloss.shadowing_sigma_db = 0;
    auto st = run_mobility(s, PolicyKind::DistributedA3, s.seed, {false, Exec::OpenMP});
    for (const auto& h : st.handovers) {
        if (!st.moving[h.ue]) continue;
        const auto& to = st.cell_names[h.to];
        return {to == "eNB2", "moving UE " + st.cell_names[h.from] + " -> " + to + " at " +
                                  format_double(h.time_ms) + " ms"};
    }
    return {false, "moving UE never handed over"};
}

Outcome centralized_advantage() {
    const auto s = parse_scenario("three-cell-fleet");
    std::vector<std::uint32_t> sizes;
    for (std::uint32_t n = 10; n <= 30; n += 2) sizes.push_back(n);
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = 1; k <= 10; ++k) seeds.push_back(k);
    const auto r = sweep_experiment(s, sizes, seeds);
    int losing = 0;
    double worst = 0;
    for (const auto& g : r.per_seed) {
        losing += g.gain_bps < 0;
        worst = std::min(worst, g.gain_bps);
    }
    std::ostringstream d;
    d << r.per_seed.size() << " pairs, " << losing << " with centralized below distributed";
    if (losing) d << " (worst " << worst << " bps)";
    d << ", spearman " << r.spearman;
    return {losing == 0 && r.spearman > 0.8, d.str()};
}

Outcome determinism() {
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"callflow-3gpp", "callflow 3gpp-registration --format jsonl"},
        {"callflow-proposed", "callflow proposed-handover"},
        {"compare", "compare --alpha 0.5 --beta 3"},
        {"attach", "attach-sim --ues 20 --base-stations 3 --arrival uniform:25 --seeds 1-4"},
        {"mobility", "mobility --seeds 1-3"},
        {"sweep", "sweep --seeds 1-2 --fleet-sizes 10,20"},
    };
    auto digest_dir = [](const fs::path& dir) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        Fnv1a h;
        for (const auto& f : files) {
            h.update(f.filename().string());
            h.update(slurp(f));
        }
        return h.value();
    };
    int same = 0;
    std::string mismatched;
    for (const auto& [name, args] : commands) {
        std::uint64_t digest[2];
        for (int run = 0; run < 2; ++run) {
            const auto dir = scratch / ("det_" + name + "_" + std::to_string(run));
            fs::create_directories(dir);
            const auto out = dir / "stdout.txt";
            const bool has_out = name.rfind("callflow", 0) != 0;
            const int rc = shell(args + (has_out ? " --out \"" + dir.string() + "\"" : ""), out);
            // scrub the run-specific directory name from captured stdout
            auto text = slurp(out);
            for (auto pos = text.find(dir.string()); pos != std::string::npos;
                 pos = text.find(dir.string()))
                text.erase(pos, dir.string().size());
            std::ofstream(out, std::ios::binary | std::ios::trunc) << text << "rc=" << rc;
            digest[run] = digest_dir(dir);
        }
        if (digest[0] == digest[1])
            ++same;
        else
            mismatched += " " + name;
    }
    return {same == static_cast<int>(commands.size()),
            std::to_string(same) + "/" + std::to_string(commands.size()) +
                " commands byte-identical" + (mismatched.empty() ? "" : ", differ:" + mismatched)};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-sdn5g>\n";
        return 2;
    }
    cli_path = argv[1];
    scratch = fs::temp_directory_path() / "sdn5g_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"coefficient exactness", coefficient_exactness},
        {"handover improvement 29.29% +/- 0.01pp", handover_improvement},
        {"handover dominance", handover_dominance},
        {"registration break-even sign", registration_breakeven_sign},
        {"DES matches closed form", des_equivalence},
        {"attach-time ordering", attach_ordering},
        {"distributed baseline hands over to eNB2", handover_target},
        {"centralized advantage", centralized_advantage},
        {"determinism", determinism},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        char t[32];
        std::snprintf(t, sizeof t, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  [" << o.detail << "] ("
                  << t << ")\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    fs::remove_all(scratch);
    return failed == 0 ? 0 : 1;
}
