// Drives the command line tool end to end through std::system: subcommands,
// exit codes, emitted report files, and byte-level determinism of reruns.
// SKEWFLOW_BIN and CONFIG_DIR are injected by the build.
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const std::string kBin = SKEWFLOW_BIN;
const std::string kConfigs = CONFIG_DIR;

// Each call hands out a fresh empty directory under the system temp root.
fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    fs::path p = fs::temp_directory_path() / ("skewflow-cli-" + std::to_string(::getpid()) +
                                              "-" + tag + "-" + std::to_string(counter++));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cmd(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::string shipped(const std::string& name) { return "'" + kConfigs + "/" + name + "'"; }

}  // namespace

TEST_CASE("build prints the descriptor with its tables") {
    const fs::path dir = fresh_dir("build");
    CHECK(run_cmd(kBin + " build -c " + shipped("general_k2.json") + " > " +
                  q(dir / "out.json")) == 0);
    const Json j = Json::parse(slurp(dir / "out.json"));
    CHECK(j.at("kind") == "general");
    CHECK(j.at("k") == 2);
    CHECK(j.at("jtable").at("k") == 2);
    CHECK(j.at("qfamily").at("q").size() == 3);  // slots 0..k
    CHECK(j.at("profile").size() == 2);
}

TEST_CASE("build expands a preset block") {
    const fs::path dir = fresh_dir("preset");
    spit(dir / "cfg.json", R"({"system": {"preset": "milnes", "k": 4}})");
    CHECK(run_cmd(kBin + " build -c " + q(dir / "cfg.json") + " > " + q(dir / "out.json")) ==
          0);
    const Json j = Json::parse(slurp(dir / "out.json"));
    CHECK(j.at("kind") == "milnes");
    CHECK(j.at("k") == 4);
}

TEST_CASE("build rejects a family with fractional values") {
    const fs::path dir = fresh_dir("nonint");
    spit(dir / "cfg.json",
         R"({"system": {"kind": "general", "k": 2, "m": 1, "gamma0": ["0", "0"],
             "j": ["1", "1/2"], "profile": ["1", "1"]}})");
    CHECK(run_cmd(kBin + " build -c " + q(dir / "cfg.json") + " 2> /dev/null") == 2);
}

TEST_CASE("command line misuse exits with the parse code") {
    const fs::path dir = fresh_dir("misuse");
    spit(dir / "broken.json", "{oops");
    CHECK(run_cmd(kBin + " 2> /dev/null") == 1);
    CHECK(run_cmd(kBin + " frobnicate 2> /dev/null") == 1);
    CHECK(run_cmd(kBin + " run 2> /dev/null") == 1);
    CHECK(run_cmd(kBin + " build -c " + q(dir / "missing.json") + " 2> /dev/null") == 1);
    CHECK(run_cmd(kBin + " build -c " + q(dir / "broken.json") + " 2> /dev/null") == 1);
}

TEST_CASE("experiment name must match the config") {
    CHECK(run_cmd(kBin + " run weyl -c " + shipped("iterate_hahn_k2.json") +
                  " 2> /dev/null") == 2);
}

TEST_CASE("unknown experiment names are rejected") {
    const fs::path dir = fresh_dir("unknown");
    spit(dir / "cfg.json", R"({"params": {}})");
    CHECK(run_cmd(kBin + " run nonsense -c " + q(dir / "cfg.json") + " -o " + q(dir) +
                  " 2> /dev/null") == 2);
}

TEST_CASE("iterate writes the orbit window") {
    const fs::path dir = fresh_dir("iterate");
    CHECK(run_cmd(kBin + " run iterate -c " + shipped("iterate_hahn_k2.json") + " -o " +
                  q(dir) + " > /dev/null") == 0);
    const std::string csv = slurp(dir / "iterate.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "n,re,im");
    long long lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 17);  // header plus N = 16 rows
    const Json j = Json::parse(slurp(dir / "iterate.json"));
    CHECK(j.at("n0") == 0);
    CHECK(j.at("rows").size() == 16);
}

TEST_CASE("power-check confirms the closed form against the orbit") {
    const fs::path dir = fresh_dir("power");
    CHECK(run_cmd(kBin + " run power-check -c " + shipped("power_check_hahn_k3.json") +
                  " -o " + q(dir) + " > " + q(dir / "stdout.txt")) == 0);
    CHECK(slurp(dir / "stdout.txt") == "ok: 129 powers exact\n");
    const Json j = Json::parse(slurp(dir / "power_check.json"));
    CHECK(j.at("ok") == true);
    CHECK(j.at("powers") == 129);
}

TEST_CASE("equidist runs are deterministic down to the byte") {
    const fs::path dir = fresh_dir("equidist");
    spit(dir / "cfg.json",
         R"({"experiment": "equidist",
             "system": {"preset": "milnes", "k": 3},
             "params": {"N": 2000, "checkpoints": [1000, 2000]},
             "bounds": {"abs_avg": 0.9}})");
    const fs::path a = fresh_dir("equidist-a"), b = fresh_dir("equidist-b"),
                   c = fresh_dir("equidist-c");
    CHECK(run_cmd(kBin + " run equidist -c " + q(dir / "cfg.json") + " -o " + q(a) +
                  " > /dev/null") == 0);
    CHECK(run_cmd(kBin + " run equidist -c " + q(dir / "cfg.json") + " -o " + q(b) +
                  " > /dev/null") == 0);
    CHECK(run_cmd("SKEWFLOW_THREADS=3 " + kBin + " run equidist -c " + q(dir / "cfg.json") +
                  " -o " + q(c) + " > /dev/null") == 0);
    const std::string csv = slurp(a / "equidist.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "n_checkpoint,re_avg,im_avg,abs_avg");
    CHECK(csv == slurp(b / "equidist.csv"));
    CHECK(csv == slurp(c / "equidist.csv"));
    const Json j = Json::parse(slurp(a / "equidist.json"));
    CHECK(j.at("rows").size() == 2);
}

TEST_CASE("a violated bound exits with the assertion code") {
    const fs::path dir = fresh_dir("bound");
    spit(dir / "cfg.json",
         R"({"experiment": "equidist",
             "system": {"preset": "milnes", "k": 2},
             "params": {"N": 500, "checkpoints": [500]},
             "bounds": {"abs_avg": 1e-12}})");
    CHECK(run_cmd(kBin + " run equidist -c " + q(dir / "cfg.json") + " -o " + q(dir) +
                  " 2> /dev/null > /dev/null") == 4);
}

TEST_CASE("gamma emits the window with both verdicts") {
    const fs::path dir = fresh_dir("gamma");
    CHECK(run_cmd(kBin + " run gamma -c " + shipped("gamma_k3.json") + " -o " + q(dir) +
                  " > /dev/null") == 0);
    const Json j = Json::parse(slurp(dir / "gamma.json"));
    CHECK(j.at("rows").size() == 8);
    CHECK(j.at("kernel").at("equal") == true);
    CHECK(j.at("homomorphism").at("ok") == true);
    const std::string csv = slurp(dir / "gamma.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "n,re,im");
}

TEST_CASE("scan over the preset tower finds no fixed characters") {
    const fs::path dir = fresh_dir("scan");
    CHECK(run_cmd(kBin + " run scan -c " + shipped("scan_milnes_k3.json") + " -o " + q(dir) +
                  " > " + q(dir / "stdout.txt")) == 0);
    const Json j = Json::parse(slurp(dir / "scan.json"));
    CHECK(j.at("characters_checked") == 1330);
    CHECK(j.at("hits").empty());
    CHECK(slurp(dir / "stdout.txt") == "scan: 1330 characters, 0 fixed\n");
}

TEST_CASE("distal certifies the constant gap") {
    const fs::path dir = fresh_dir("distal");
    CHECK(run_cmd(kBin + " run distal -c " + shipped("distal_milnes_k3.json") + " -o " +
                  q(dir) + " > /dev/null") == 0);
    const Json j = Json::parse(slurp(dir / "distal.json"));
    CHECK(j.at("gap_constant") == true);
    CHECK(j.at("min_distance").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j.at("first_coordinate") == 0);
}

TEST_CASE("ellis sweep multiplies embedded powers without mismatch") {
    const fs::path dir = fresh_dir("ellis");
    CHECK(run_cmd(kBin + " run ellis -c " + shipped("ellis_milnes_k4.json") + " -o " +
                  q(dir) + " > " + q(dir / "stdout.txt")) == 0);
    const Json j = Json::parse(slurp(dir / "ellis.json"));
    CHECK(j.at("failures").empty());
    CHECK(j.at("formal_rejected") == true);
    CHECK(j.at("scalar_rejected") == true);
    CHECK(slurp(dir / "stdout.txt").find("ellis: 441 pairs, 0 mismatches") !=
          std::string::npos);
}

TEST_CASE("report merges tables into one summary") {
    const fs::path dir = fresh_dir("report");
    spit(dir / "cfg.json",
         R"({"experiment": "weyl",
             "params": {"poly": ["0", "1/7", "1/3"], "checkpoints": [500, 1000]}})");
    const fs::path a = fresh_dir("report-a"), b = fresh_dir("report-b");
    CHECK(run_cmd(kBin + " run weyl -c " + q(dir / "cfg.json") + " -o " + q(a) +
                  " > /dev/null") == 0);
    CHECK(run_cmd(kBin + " run weyl -c " + q(dir / "cfg.json") + " -o " + q(b) +
                  " > /dev/null") == 0);
    CHECK(run_cmd(kBin + " report " + q(a / "weyl.csv") + " " + q(b / "weyl.csv") + " > " +
                  q(dir / "merged.json")) == 0);
    const Json j = Json::parse(slurp(dir / "merged.json"));
    CHECK(j.at("total_rows") == 4);
    CHECK(j.at("files").size() == 2);
    CHECK(j.at("files").at(0).at("columns").contains("abs_avg"));
}

TEST_CASE("report rejects a damaged table with the schema code") {
    const fs::path dir = fresh_dir("badcsv");
    spit(dir / "empty.csv", "");
    CHECK(run_cmd(kBin + " report " + q(dir / "empty.csv") + " 2> /dev/null > /dev/null") ==
          3);
    spit(dir / "short.csv", "n_checkpoint,re_avg,im_avg,abs_avg\n1000,0.5\n");
    CHECK(run_cmd(kBin + " report " + q(dir / "short.csv") + " 2> /dev/null > /dev/null") ==
          3);
}
