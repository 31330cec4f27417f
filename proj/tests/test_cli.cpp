#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "su3/cli.hpp"

namespace {

struct Outcome {
    int code = 0;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "su3corr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = su3::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("two-site at the homogeneous point") {
    const auto r = run({"two-site", "--lambda", "0"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["command"] == "two-site");
    for (const char* key : {"command", "inputs", "results", "diagnostics", "paper_reference_values"})
        CHECK(j.contains(key));
    CHECK(std::abs(j["results"]["omega33"].get<double>() - (-0.703212076746182)) < 1e-12);
    CHECK(std::abs(j["results"]["alpha33"].get<double>() - (-0.12956817625994)) < 1e-12);
    CHECK(j["paper_reference_values"]["omega33_at_0"].get<double>() == -0.703212076746182);
}

TEST_CASE("verification suites exit 0 on an unmodified build") {
    const auto a = run({"verify-algebra", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.json()["results"]["all_pass"] == true);
    const auto m = run({"verify-matrices", "--seed", "7"});
    CHECK(m.code == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"two-site", "--format", "xml"}).code == 2);
    CHECK(run({"ed", "-L", "40"}).code == 2);
    CHECK(run({"two-site", "--threads", "0"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("domain errors at poles are reported") {
    const auto r = run({"two-site", "--lambda", "3"});
    CHECK(r.code != 0);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("identical invocations give byte-identical JSON") {
    const auto a = run({"verify-algebra", "--seed", "11", "--samples", "10"});
    const auto b = run({"verify-algebra", "--seed", "11", "--samples", "10"});
    CHECK(a.out == b.out);
    const auto c = run({"three-site"});
    const auto d = run({"three-site"});
    CHECK(c.out == d.out);
}

TEST_CASE("thread count does not change results") {
    const auto a = run({"three-site", "--threads", "1"});
    const auto b = run({"three-site", "--threads", "3"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.json()["results"] == b.json()["results"]);
    const auto e1 = run({"ed", "-L", "9", "--threads", "1"});
    const auto e4 = run({"ed", "-L", "9", "--threads", "4"});
    CHECK(std::abs(e1.json()["results"]["energy_per_bond"].get<double>() -
                   e4.json()["results"]["energy_per_bond"].get<double>()) < 1e-12);
    CHECK(std::abs(e1.json()["results"]["p12p23"].get<double>() - e4.json()["results"]["p12p23"].get<double>()) <
          1e-12);
}

TEST_CASE("report-table1 lists finite chains and thermodynamic values") {
    const auto r = run({"report-table1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["results"]["finite_chains"].size() == 3);
    CHECK(j["results"]["finite_chains"][1]["L"] == 6);
    CHECK(std::abs(j["results"]["finite_chains"][1]["p12p23_delta"].get<double>()) < 1e-10);
    CHECK(std::abs(j["results"]["thermodynamic"]["p12p23_delta"].get<double>()) < 1e-6);
    CHECK(j["paper_reference_values"]["finite_chains"].size() == 3);
}

TEST_CASE("csv and text formats") {
    const auto c = run({"two-site", "--lambda", "0.5", "--format", "csv"});
    CHECK(c.code == 0);
    CHECK(c.out.find("results.omega33") != std::string::npos);
    CHECK(c.out.find(',') != std::string::npos);
    const auto t = run({"two-site", "--lambda", "0.5", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("results.omega33") != std::string::npos);
}

TEST_CASE("config file, environment and flag precedence") {
    const auto path = std::filesystem::temp_directory_path() / "su3corr_test.conf";
    {
        std::ofstream f(path);
        f << "lambda = 0.25\nthreads = 2\n";
    }
    const auto fromfile = run({"--config", path.string(), "two-site"});
    REQUIRE(fromfile.code == 0);
    CHECK(fromfile.json()["inputs"]["lambda"].get<double>() == 0.25);
    CHECK(fromfile.json()["inputs"]["threads"].get<int>() == 2);

    const auto flagwins = run({"--config", path.string(), "two-site", "--lambda", "0.5"});
    CHECK(flagwins.json()["inputs"]["lambda"].get<double>() == 0.5);

    ::setenv("SU3_THREADS", "3", 1);
    const auto env = run({"--config", path.string(), "two-site"});
    CHECK(env.json()["inputs"]["threads"].get<int>() == 3);
    const auto flag = run({"two-site", "--threads", "5"});
    CHECK(flag.json()["inputs"]["threads"].get<int>() == 5);
    ::setenv("SU3_THREADS", "zero", 1);
    CHECK(run({"two-site"}).code == 2);
    ::unsetenv("SU3_THREADS");
    std::filesystem::remove(path);
}

TEST_CASE("ed output with reduced density matrices") {
    const auto r = run({"ed", "-L", "6", "--rdm"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["results"]["method"] == "dense");
    CHECK(j["results"].contains("rdm2"));
}
