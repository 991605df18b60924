#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sdn5g/cli.hpp"

using namespace sdn5g;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "sdn5g");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("sdn5g_cli_" + name);
    fs::remove_all(d);
    return d;
}

bool contains(const std::string& s, const std::string& what) {
    return s.find(what) != std::string::npos;
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"callflow", "bogus"}).code == kExitUsage);
    CHECK(run({"compare", "--beta", "-1"}).code == kExitUsage);
    CHECK(run({"compare", "--beta", "abc"}).code == kExitUsage);
    CHECK(run({"attach-sim", "--ues", "0"}).code == kExitUsage);
    CHECK(run({"mobility", "--seeds", "5-1"}).code == kExitUsage);
    CHECK(run({"mobility", "--policy", "random"}).code == kExitUsage);
}

TEST_CASE("configuration errors") {
    auto r = run({"mobility", "--scenario", "/nonexistent/x.json"});
    CHECK(r.code == kExitConfig);
    CHECK_FALSE(r.err.empty());

    auto dir = fresh_dir("badcfg");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << R"({"cells": [{"name": "a", "x": 0, "y": 0, "bandwidth_hz": -1}]})";
    r = run({"mobility", "--scenario", (dir / "bad.json").string()});
    CHECK(r.code == kExitConfig);
    CHECK(contains(r.err, "bandwidth_hz"));
}

TEST_CASE("callflow command") {
    auto r = run({"callflow", "proposed-handover"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "N_cf'"));
    CHECK(contains(r.out, "messages: 8"));
    CHECK(contains(r.out, "polynomial: (12, 12)"));

    auto j = run({"callflow", "3gpp-registration", "--format", "jsonl"});
    CHECK(j.code == kExitOk);
    CHECK(std::count(j.out.begin(), j.out.end(), '\n') == 19);
}

TEST_CASE("compare command") {
    auto dir = fresh_dir("compare");
    auto r = run({"compare", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "29.29%"));
    auto csv = slurp(dir / "compare.csv");
    CHECK(contains(csv, "Registration,114,59,"));
    CHECK(contains(csv, "Handover,101,60,"));
    CHECK(fs::exists(dir / "reference.csv"));
}

TEST_CASE("attach-sim command") {
    auto dir = fresh_dir("attach");
    auto r = run({"attach-sim", "--ues", "5", "--arrival", "uniform:10", "--seeds", "1-3",
                  "--out", dir.string()});
    CHECK(r.code == kExitOk);
    auto csv = slurp(dir / "attach.csv");
    CHECK(csv.rfind("seed,3gpp_mean_ms,proposed_mean_ms,reduction\n", 0) == 0);
    CHECK(contains(csv, "\nall,"));
}

TEST_CASE("mobility command output is reproducible") {
    auto a = fresh_dir("mob_a"), b = fresh_dir("mob_b");
    auto ra = run({"mobility", "--seeds", "1", "--sigma", "0", "--out", a.string()});
    auto rb = run({"mobility", "--seeds", "1", "--sigma", "0", "--out", b.string()});
    REQUIRE(ra.code == kExitOk);
    CHECK(ra.out == rb.out);
    CHECK(contains(ra.out, "eNB1 -> eNB2"));
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
    CHECK(files >= 4);
    CHECK(fs::exists(a / "summary.csv"));
}

TEST_CASE("sweep command") {
    auto dir = fresh_dir("sweep");
    auto r = run({"sweep", "--seeds", "1-2", "--fleet-sizes", "4,8", "--duration", "5",
                  "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "spearman"));
    CHECK(fs::exists(dir / "sweep.csv"));
    CHECK(fs::exists(dir / "gains_per_seed.csv"));
    CHECK(run({"sweep", "--fleet-sizes", "a,b"}).code == kExitUsage);
}
