#include "sdn5g/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "sdn5g/callflow.hpp"
#include "sdn5g/cost_model.hpp"
#include "sdn5g/des.hpp"
#include "sdn5g/error.hpp"
#include "sdn5g/experiments.hpp"
#include "sdn5g/format.hpp"
#include "sdn5g/scenario.hpp"

namespace sdn5g {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string variant;
    std::string callflow_format = "table";
    double alpha = 1.0;
    double beta = 4.0;
    double m = 1.0;
    std::string seeds = "1";
    std::string out_dir;
    std::string scenario;
    std::string policy = "both";
    std::optional<double> duration_s;
    std::optional<double> tick_ms;
    std::optional<double> sigma_db;
    std::uint32_t ues = 1;
    std::uint32_t base_stations = 1;
    std::string arrival = "simultaneous";
    std::string fleet_sizes = "10,12,14,16,18,20,22,24,26,28,30";
};

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(ConfigError::Kind::MissingFile, "--out",
                              "cannot write output file " + path.string());
    f << content;
}

CostParams cost_params(const Options& o) {
    CostParams p{o.alpha, o.beta, o.m};
    try {
        validate(p);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
    return p;
}

std::vector<std::uint64_t> seeds_of(const Options& o) {
    try {
        return parse_seed_list(o.seeds);
    } catch (const ParameterError& e) {
        throw UsageError(std::string("--seeds: ") + e.what());
    }
}

std::vector<PolicyKind> policies_of(const Options& o) {
    if (o.policy == "both") return {PolicyKind::DistributedA3, PolicyKind::CentralizedLoadAware};
    auto p = parse_policy(o.policy);
    if (!p) throw UsageError("--policy: unknown policy '" + o.policy + "'");
    return {*p};
}

Scenario load_scenario(const Options& o, const char* fallback) {
    Scenario s = parse_scenario(o.scenario.empty() ? fallback : o.scenario);
    if (o.duration_s) s.duration_s = *o.duration_s;
    if (o.tick_ms) s.tick_ms = *o.tick_ms;
    if (o.sigma_db) s.pathloss.shadowing_sigma_db = *o.sigma_db;
    validate(s);
    return s;
}

int cmd_callflow(const Options& o, std::ostream& out) {
    auto v = parse_variant(o.variant);
    if (!v) {
        std::string names;
        for (auto x : all_variants()) names += std::string(" ") + std::string(variant_name(x));
        throw UsageError("unknown callflow variant '" + o.variant + "' (expected one of:" +
                         names + ")");
    }
    const Callflow cf = build_callflow(*v);
    const CostPolynomial poly = symbolic_cost(cf);
    if (o.callflow_format == "jsonl") {
        out << export_callflow(cf);
    } else if (o.callflow_format == "table") {
        out << "callflow " << variant_name(*v) << '\n'
            << render_callflow_table(cf) << "messages: " << cf.messages.size() << '\n'
            << "polynomial: (" << poly.tx_hops << ", " << poly.proc_steps << ")  = "
            << poly.tx_hops << "m*alpha + " << poly.proc_steps << "beta\n";
    } else {
        throw UsageError("--format must be 'table' or 'jsonl'");
    }
    if (!o.out_dir.empty())
        write_file(o.out_dir, std::string(variant_name(*v)) + ".jsonl", export_callflow(cf));
    return kExitOk;
}

std::string reference_csv() {
    std::string s = "procedure,baseline_ms,proposed_ms,improvement\n";
    for (const auto& r : reference_table())
        s += r.procedure + ',' + r.baseline + ',' + r.proposed + ',' + r.improvement + '\n';
    return s;
}

int cmd_compare(const Options& o, std::ostream& out) {
    const auto table = compare_report(cost_params(o));
    out << comparison_text(table);
    if (!o.out_dir.empty()) {
        write_file(o.out_dir, "compare.csv", comparison_csv(table));
        write_file(o.out_dir, "reference.csv", reference_csv());
    }
    return kExitOk;
}

int cmd_attach_sim(const Options& o, std::ostream& out) {
    Workload w;
    w.ue_count = o.ues;
    w.base_stations = o.base_stations;
    try {
        w.arrival = parse_arrival(o.arrival);
        validate(w);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
    const auto seeds = seeds_of(o);
    const auto r = attach_sim(w, cost_params(o), seeds);
    const std::string csv = attach_sim_csv(r);
    out << csv;
    std::ostringstream pct;
    pct << std::fixed << std::setprecision(2) << r.reduction * 100.0;
    out << "mean attach time: 3gpp " << format_double(r.three_gpp_mean_ms) << " ms, proposed "
        << format_double(r.proposed_mean_ms) << " ms, reduction " << pct.str() << "%\n";
    if (!o.out_dir.empty()) write_file(o.out_dir, "attach.csv", csv);
    return kExitOk;
}

int cmd_mobility(const Options& o, std::ostream& out) {
    const Scenario s = load_scenario(o, "three-cell");
    const auto seeds = seeds_of(o);
    const auto policies = policies_of(o);
    const auto runs = mobility_experiment(s, policies, seeds, {!o.out_dir.empty(), Exec::OpenMP});

    std::vector<SummaryRow> rows;
    for (const auto& st : runs) rows.push_back(summarize(st));
    const std::string summary = summary_csv(rows);
    out << "scenario " << s.name << '\n' << summary;
    for (const auto& st : runs) {
        std::size_t shown = 0;
        for (const auto& h : st.handovers) {
            if (!st.moving[h.ue]) continue;
            if (++shown > 5) break;
            out << policy_name(st.policy) << " seed " << st.seed << ": ue " << h.ue << " "
                << st.cell_names[h.from] << " -> " << st.cell_names[h.to] << " at "
                << format_double(h.time_ms) << " ms\n";
        }
    }
    const auto gains = paired_gains(runs);
    if (!o.out_dir.empty()) {
        for (const auto& st : runs) {
            const std::string tag =
                std::string(policy_name(st.policy)) + "_" + std::to_string(st.seed);
            write_file(o.out_dir, "stats_" + tag + ".csv", samples_csv(st, s.tick_ms));
            write_file(o.out_dir, "handovers_" + tag + ".csv", handovers_csv(st));
        }
        write_file(o.out_dir, "summary.csv", summary);
        if (!gains.empty()) write_file(o.out_dir, "gains.csv", gain_csv(gains));
    }
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const Scenario s = load_scenario(o, "three-cell-fleet");
    const auto seeds = seeds_of(o);
    std::vector<std::uint32_t> sizes;
    try {
        for (auto v : parse_seed_list(o.fleet_sizes)) sizes.push_back(static_cast<std::uint32_t>(v));
    } catch (const ParameterError& e) {
        throw UsageError(std::string("--fleet-sizes: ") + e.what());
    }
    const auto r = sweep_experiment(s, sizes, seeds);
    const std::string averaged = gain_csv(r.averaged);
    out << "scenario " << s.name << ", " << seeds.size() << " seeds\n" << averaged
        << "spearman(handovers, gain) = " << format_double(r.spearman) << '\n';
    if (!o.out_dir.empty()) {
        write_file(o.out_dir, "sweep.csv", sweep_csv(r));
        write_file(o.out_dir, "gains_per_seed.csv", gain_csv(r.per_seed));
        write_file(o.out_dir, "gains.csv", averaged);
    }
    return kExitOk;
}

void add_cost_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--alpha", o.alpha, "time per bit per hop (ms/bit)");
    cmd->add_option("--beta", o.beta, "time per encode/decode step (ms)");
    cmd->add_option("--m", o.m, "average message length (bits)");
}

void add_radio_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--scenario", o.scenario, "scenario file or bundled name");
    cmd->add_option("--seeds", o.seeds, "seed list, e.g. 1,2,5-8");
    cmd->add_option("--out", o.out_dir, "output directory for CSV files");
    cmd->add_option("--duration", o.duration_s, "simulated duration (s)");
    cmd->add_option("--tick", o.tick_ms, "tick length (ms)");
    cmd->add_option("--sigma", o.sigma_db, "override shadowing sigma (dB)");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Control-plane signaling and mobility experiments for a centralized 5G RAN",
                 "sdn5g"};
    app.require_subcommand(1);

    auto* callflow = app.add_subcommand("callflow", "print a canonical callflow");
    callflow->add_option("variant", o.variant,
                         "3gpp-registration | proposed-registration | 3gpp-handover | "
                         "proposed-handover")
        ->required();
    callflow->add_option("--format", o.callflow_format, "table or jsonl");
    callflow->add_option("--out", o.out_dir, "also write <variant>.jsonl here");

    auto* compare = app.add_subcommand("compare", "signaling-time comparison table");
    add_cost_flags(compare, o);
    compare->add_option("--out", o.out_dir, "output directory for CSV files");

    auto* attach = app.add_subcommand("attach-sim", "simulate registration for both architectures");
    add_cost_flags(attach, o);
    attach->add_option("--ues", o.ues, "number of UEs");
    attach->add_option("--base-stations", o.base_stations, "number of base-station clusters");
    attach->add_option("--arrival", o.arrival, "simultaneous | interval:<ms> | uniform:<ms>");
    attach->add_option("--seeds", o.seeds, "seed list, e.g. 1,2,5-8");
    attach->add_option("--out", o.out_dir, "output directory for CSV files");

    auto* mobility = app.add_subcommand("mobility", "run the handover scenario");
    add_radio_flags(mobility, o);
    mobility->add_option("--policy", o.policy, "distributed-a3 | centralized | both");

    auto* sweep = app.add_subcommand("sweep", "centralized vs distributed fleet-size sweep");
    add_radio_flags(sweep, o);
    sweep->add_option("--fleet-sizes", o.fleet_sizes, "moving-UE counts, e.g. 10,20,30");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (*callflow) return cmd_callflow(o, out);
        if (*compare) return cmd_compare(o, out);
        if (*attach) return cmd_attach_sim(o, out);
        if (*mobility) return cmd_mobility(o, out);
        if (*sweep) return cmd_sweep(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace sdn5g
