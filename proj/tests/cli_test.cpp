#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "coneq/io.hpp"
#include "coneq/quantile.hpp"
#include "oracles.hpp"

using json = nlohmann::json;
using namespace coneq;

namespace {

const std::string kCli = CONEQ_CLI_PATH;

std::filesystem::path work_dir() {
    auto dir = std::filesystem::temp_directory_path() / "coneq_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " > " + path_of("stdout.txt") + " 2> " +
                      path_of("stderr.txt");
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_s4() {
    write(path_of("s4.csv"), "0,0\n1,0\n0,1\n1,1\n");
}

}  // namespace

TEST_CASE("cdf subcommand emits values and argmin directions") {
    write_s4();
    write(path_of("query.csv"), "0,0\n1,1\n0.5,0.5\n");
    int rc = run("cdf --data " + path_of("s4.csv") + " --cone orthant --query " +
                 path_of("query.csv") + " --json " + path_of("cdf.json"));
    REQUIRE(rc == 0);
    json out = json::parse(slurp(path_of("cdf.json")));
    REQUIRE(out["results"].size() == 3);
    CHECK(out["results"][0]["value"].get<double>() == 0.25);
    CHECK(out["results"][1]["value"].get<double>() == 1.0);
    CHECK(out["results"][2]["value"].get<double>() == 0.25);
    CHECK(out["config"]["command"] == "cdf");
    CHECK(out["results"][0]["argmin_direction"].size() == 2);
}

TEST_CASE("depth subcommand uses the zero cone") {
    write_s4();
    write(path_of("query.csv"), "0.5,0.5\n10,10\n");
    int rc = run("depth --data " + path_of("s4.csv") + " --query " + path_of("query.csv") +
                 " --json " + path_of("depth.json"));
    REQUIRE(rc == 0);
    json out = json::parse(slurp(path_of("depth.json")));
    CHECK(out["results"][0]["value"].get<double>() == 0.5);
    CHECK(out["results"][1]["value"].get<double>() == 0.0);
}

TEST_CASE("quantile subcommand: nested regions, svg, json probes") {
    write_s4();
    int rc = run("quantile --data " + path_of("s4.csv") +
                 " --cone orthant --p 0.25 --p 0.5 --bbox -1,-1,2,2 --svg " + path_of("q.svg") +
                 " --json " + path_of("q.json"));
    REQUIRE(rc == 0);

    json out = json::parse(slurp(path_of("q.json")));
    REQUIRE(out["regions"].size() == 2);
    ConvexCone orthant = ConvexCone::orthant(2);
    QuantileFn qf(ConeCdf(
        EmpiricalSample({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}), orthant));

    for (const auto& rj : out["regions"]) {
        double p = rj["p"].get<double>();
        Region r = io::region_from_json(rj.dump(), orthant);
        oracle::Rng rng(31);
        for (int k = 0; k < 100; ++k) {
            Vec z = {rng.range(-1.0, 2.0), rng.range(-1.0, 2.0)};
            if (qf.member(p, z)) CHECK(region_member(r, z));
        }
    }

    std::string svg = slurp(path_of("q.svg"));
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(svg.find("p = 0.25") != std::string::npos);
}

TEST_CASE("closure subcommand") {
    write_s4();
    int rc = run("closure --data " + path_of("s4.csv") + " --cone orthant --genset " +
                 "'{\"G\": [[1, 1]]}' --json " + path_of("cl.json"));
    REQUIRE(rc == 0);
    json out = json::parse(slurp(path_of("cl.json")));
    CHECK(out["value"].get<double>() == 1.0);
    CHECK(out["is_psi_fixed"].get<bool>());
    CHECK(out["psi_closure"]["variant"] == "hrep");
}

TEST_CASE("rank subcommand") {
    write_s4();
    int rc = run("rank --data " + path_of("s4.csv") + " --cone orthant --g1 '{\"G\": [[0,0]]}'" +
                 " --g2 '{\"G\": [[1,1]]}' --json " + path_of("rank.json"));
    REQUIRE(rc == 0);
    json out = json::parse(slurp(path_of("rank.json")));
    CHECK(out["psi"]["order"] == "less");
    CHECK(out["phi"]["outcome"] == "less-or-equal");
    CHECK(out["psi"]["values"][0].get<double>() == 0.25);
}

TEST_CASE("simulate subcommand: estimate near exact, reproducible bytes, trace") {
    write_s4();
    write(path_of("k.csv"), "0,0\n");
    std::string args = "simulate --data " + path_of("s4.csv") +
                       " --cone orthant --K " + path_of("k.csv") +
                       " --n 20000 --seed 7 --trace " + path_of("trace.csv") + " --json ";
    REQUIRE(run(args + path_of("sim1.json")) == 0);
    REQUIRE(run(args + path_of("sim2.json")) == 0);

    std::string first = slurp(path_of("sim1.json"));
    CHECK(first == slurp(path_of("sim2.json")));

    json out = json::parse(first);
    CHECK(out["exact"].get<double>() == 0.25);
    double mc = out["mc_estimate"].get<double>();
    double se = out["std_error"].get<double>();
    CHECK(std::abs(mc - 0.25) <= 3.0 * se);

    std::string trace = slurp(path_of("trace.csv"));
    CHECK(trace.rfind("u,hit", 0) == 0);
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 20001);
}

TEST_CASE("selftest passes on the fixtures") {
    REQUIRE(run("selftest") == 0);
    std::string log = slurp(path_of("stdout.txt"));
    CHECK(log.find("FAIL") == std::string::npos);
    CHECK(log.find("PASS galois-adjunction") != std::string::npos);
}

TEST_CASE("error paths map to documented exit codes") {
    write_s4();
    // Malformed input: missing file.
    CHECK(run("cdf --data " + path_of("nope_missing.csv") + " --query " + path_of("s4.csv")) == 2);
    // Numerical failure: the full-space cone has a degenerate dual.
    write(path_of("full.json"),
          R"({"dim": 2, "generators": [[1,0],[-1,0],[0,1],[0,-1]]})");
    CHECK(run("cdf --data " + path_of("s4.csv") + " --cone " + path_of("full.json") +
              " --query " + path_of("s4.csv")) == 3);
    // Unknown flags are parse errors.
    CHECK(run("cdf --frobnicate") == 2);
    // Gaussian in d = 2 with an invalid covariance.
    CHECK(run("cdf --gaussian '{\"mu\": [0,0], \"sigma\": [[1,0],[0,-1]]}' --query " +
              path_of("s4.csv")) == 2);
}

TEST_CASE("gaussian quantile run over an inline model") {
    int rc = run("quantile --gaussian '{\"mu\": [0,0], \"sigma\": [[1,0],[0,1]]}'"
                 " --cone orthant --p 0.5 --json " + path_of("gq.json"));
    REQUIRE(rc == 0);
    json out = json::parse(slurp(path_of("gq.json")));
    REQUIRE(out["regions"].size() == 1);
    // The median region of the standard gaussian under the orthant order
    // contains the positive diagonal and misses points below the origin.
    ConvexCone orthant = ConvexCone::orthant(2);
    Region r = io::region_from_json(out["regions"][0].dump(), orthant);
    CHECK(region_member(r, {2.0, 2.0}));
    CHECK_FALSE(region_member(r, {-1.0, -1.0}));
}
