#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlsl2/cli.hpp"
#include "nlsl2/error.hpp"

using namespace nlsl2;
using nlsl2::io::json;
using doctest::Approx;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("nlsl2_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("cut prints the r=2 s=1 d=4 highest weight") {
    const auto r = run({"cut", "--linear", "r=2", "s=1", "--d", "4"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j["solutions"].size() == 1);
    CHECK(j["solutions"][0]["alpha_j"].get<double>() == Approx(14.0 / 17.0).epsilon(1e-10));
    CHECK(j["closed_form"].get<double>() == Approx(0.823529).epsilon(1e-6));
}

TEST_CASE("analyze on the two-cycle regime") {
    const auto r = run({"analyze", "--quadratic", "t=1", "r=1", "s=1.1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["classification"]["delta"].get<double>() == Approx(4.4));
    CHECK(j["classification"]["regime"] == "stable_two_cycle");
    CHECK(j["allowed_region"]["low"].get<double>() == Approx(-0.683772).epsilon(1e-6));
    CHECK(j["allowed_region"]["high"].get<double>() == Approx(1.04881).epsilon(1e-6));
    CHECK(j["fixed_points"].size() == 2);
}

TEST_CASE("analyze classifies a start point") {
    const auto r = run({"analyze", "--linear", "r=1", "s=1", "--x0", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["start"]["kind"] == "finite_cut");
    CHECK(j["start"]["d"] == 5);
    CHECK(j["linear_case"] == "I");
}

TEST_CASE("build | verify round trip") {
    const std::string path = temp_path("rep.json");
    auto b = run({"build", "--linear", "r=0.7", "s=1", "--d", "4", "--output", path});
    REQUIRE(b.code == 0);
    auto v = run({"verify", "--input", path});
    CHECK(v.code == 0);
    const auto j = json::parse(v.out);
    CHECK(j["passed"] == true);
    CHECK(j["rdeformed_form"].size() == 3);

    b = run({"build", "--quadratic", "t=1", "r=1", "s=1.1", "--d", "2", "--cycle", "--mode", "algebraic", "-o", path});
    REQUIRE(b.code == 0);
    v = run({"verify", "-i", path});
    CHECK(v.code == 0);
    std::remove(path.c_str());
}

TEST_CASE("verify fails with exit code 1 on a corrupted representation") {
    const std::string path = temp_path("bad.json");
    auto b = run({"build", "--linear", "r=1", "s=1", "--d", "5"});
    REQUIRE(b.code == 0);
    auto j = json::parse(b.out);
    j["jplus"][1][2] = j["jplus"][1][2].get<double>() * 1.1;
    write_file(path, j.dump());
    const auto v = run({"verify", "--input", path});
    CHECK(v.code == cli::kVerificationFailed);
    std::remove(path.c_str());
}

TEST_CASE("unitary build of a non-unitary cycle is a solver failure") {
    const auto r = run({"build", "--quadratic", "t=1", "r=1", "s=1.1", "--d", "2", "--cycle"});
    CHECK(r.code == cli::kSolverFailure);
    CHECK(r.err.find("N_") != std::string::npos);
}

TEST_CASE("marginal r = -1 build") {
    const auto r = run({"build", "--linear", "r=-1", "s=1", "--alpha", "0.25"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["d"] == 2);
    CHECK(j["ladder"]["termination"] == "cycle");
}

TEST_CASE("qmap") {
    auto r = run({"qmap", "--q", "1.4142135623730951", "--s", "1", "--j", "3/2"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["alpha_j"].get<double>() == Approx(14.0 / 17.0));
    CHECK(j["map_residuals"]["jplus"].get<double>() < 1e-8);
    r = run({"qmap", "--linear", "r=0.7", "s=1", "--j", "1.5"});
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["literal_jplus"] != "real");
}

TEST_CASE("cobweb CSV") {
    const auto r = run({"cobweb", "--linear", "r=1", "s=1", "--x0", "2", "--steps", "5"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "x0,step,x,y,kind");
    int rows = 0;
    std::string last;
    while (std::getline(is, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 10);
    CHECK(last == "2,4,-3,-3,H");
}

TEST_CASE("sweep is ordered and independent of --jobs") {
    const std::vector<std::string> base{"sweep", "--r-grid", "0.5:2.5:5", "--s-grid", "1,2", "--d-list", "2,3,4"};
    auto one = base, many = base;
    one.insert(one.end(), {"--jobs", "1"});
    many.insert(many.end(), {"--jobs", "7"});
    const auto a = run(one), b = run(many);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("t,r,s,d,alpha_j,unitary\n", 0) == 0);
}

TEST_CASE("config file with flag overrides") {
    const std::string path = temp_path("cfg.json");
    write_file(path, R"({"command": "cut", "function": {"kind": "linear", "r": 2, "s": 1}, "d": 3})");
    auto r = run({"--config", path});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["d"] == 3);
    r = run({"--config", path, "--d", "4"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["solutions"][0]["alpha_j"].get<double>() == Approx(14.0 / 17.0));

    write_file(path, R"({"command": "cut", "bogus": 1})");
    r = run({"--config", path});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("bogus") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("errors map to distinct exit codes") {
    CHECK(run({"cut", "--linear", "r=2"}).code == cli::kUsage);
    CHECK(run({"cut", "--linear", "r=2", "q=1", "--d", "3"}).code == cli::kUsage);
    CHECK(run({"cut", "--quadratic", "t=0", "r=1", "s=1", "--d", "2"}).code == cli::kUsage);
    CHECK(run({"cut", "--linear", "r=2", "s=1"}).code == cli::kUsage);
    CHECK(run({"--nonsense"}).code == cli::kUsage);
    CHECK(run({"cycles", "--quadratic", "t=1", "r=0", "s=1", "--d", "11"}).code == cli::kSolverFailure);
    CHECK(run({"verify", "--input", "/nonexistent/rep.json"}).code == cli::kIoFailure);
    CHECK(run({"--function", R"({"kind": "linear", "r": 1})", "cut", "--d", "2"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"cycles", "--quadratic", "t=1", "r=0", "s=1.8", "--d", "5"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("value list parsing") {
    CHECK(cli::parse_values("0:1:3") == std::vector<double>{0, 0.5, 1});
    CHECK(cli::parse_values("1,2.5") == std::vector<double>{1, 2.5});
    CHECK(cli::parse_values("4") == std::vector<double>{4});
    CHECK_THROWS_AS(cli::parse_values("1:2"), SchemaError);
    CHECK_THROWS_AS(cli::parse_values("a"), SchemaError);
    CHECK(cli::parse_spin("3/2").two_j == 3);
    CHECK(cli::parse_spin("2").two_j == 4);
    CHECK_THROWS_AS(cli::parse_spin("1/3"), SchemaError);
}
