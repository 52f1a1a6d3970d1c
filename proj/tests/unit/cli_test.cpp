// Copyright 2026 The qunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qunc/io.hpp"

namespace qunc {
namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(QUNC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qunc_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

TEST(Csv, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(-1234567.891234567), "-1234567.89123");
    std::ostringstream out;
    CsvWriter w(out, {"a", "b"});
    w.row({1.0, 0.5});
    EXPECT_EQ(out.str(), "a,b\n1,0.5\n");
    EXPECT_THROW(w.row({1.0}), ParamError);
}

TEST(JsonIo, MatrixRoundTrip) {
    Rng rng(1);
    const ComplexMatrix m = ginibre(3, rng);
    EXPECT_EQ(matrix_from_json(matrix_to_json(m), "m"), m);
    EXPECT_EQ(matrix_from_json(json::parse("[[1, [0, 2]], [[0, -2], 3]]"), "m")(0, 1), cplx(0, 2));
    EXPECT_THROW(matrix_from_json(json::parse("[[1, 2]]"), "m"), ConfigError);
    EXPECT_THROW(matrix_from_json(json::parse("[[\"x\"]]"), "m"), ConfigError);
}

TEST(JsonIo, ScenarioRoundTripAndErrors) {
    const Scenario sc = scenarios::amplitude_damping();
    const Scenario back = scenario_from_json(scenario_to_json(sc));
    EXPECT_EQ(back.name, sc.name);
    EXPECT_EQ(back.generator.jumpOps.size(), 1u);
    EXPECT_EQ(back.rho0, sc.rho0);
    EXPECT_DOUBLE_EQ(back.tau, sc.tau);

    json bad = scenario_to_json(sc);
    bad["rates"] = json::array();
    EXPECT_THROW(scenario_from_json(bad), ConfigError);
    bad = scenario_to_json(sc);
    bad.erase("tau");
    EXPECT_THROW(scenario_from_json(bad), ConfigError);
    bad = scenario_to_json(sc);
    bad["rho0"] = matrix_to_json(ComplexMatrix::Identity(2, 2));
    EXPECT_THROW(scenario_from_json(bad), ConfigError);
}

TEST(JsonIo, BundledScenarioFilesLoad) {
    for (const char* name : {"dephasing", "amplitude_damping", "rabi"}) {
        const Scenario sc = load_scenario(std::string(QUNC_SCENARIO_DIR) + "/" + name + ".json");
        EXPECT_EQ(sc.name, name);
    }
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST_F(Cli, Fig1Schema) {
    ASSERT_EQ(run("fig1 --samples 11 --out " + path("f1.csv")), 0);
    const std::string csv = slurp(path("f1.csv"));
    EXPECT_EQ(first_line(csv), "p,sum_variances,robertson,theorem2_pb,theorem4_reverse");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
    EXPECT_NE(csv.find("\n0,1.33333333333,0,0.859067522446,2.66666666667\n"), std::string::npos);
}

TEST_F(Cli, Fig3DeterministicUnderSeed) {
    ASSERT_EQ(run("fig3 --samples 2000 --seed 5 --out " + path("a.csv")), 0);
    ASSERT_EQ(run("fig3 --samples 2000 --seed 5 --out " + path("b.csv")), 0);
    ASSERT_EQ(run("fig3 --samples 2000 --seed 6 --out " + path("c.csv")), 0);
    const std::string a = slurp(path("a.csv"));
    EXPECT_EQ(a, slurp(path("b.csv")));
    EXPECT_NE(a, slurp(path("c.csv")));
    EXPECT_EQ(first_line(a), "angle,blochRadius,purity_of_rho");
}

TEST_F(Cli, Fig3SmokeRunIsFastAndBounded) {
    const auto t0 = std::chrono::steady_clock::now();
    ASSERT_EQ(run("fig3 --samples 100 --seed 1 --out " + path("s.csv")), 0);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
    std::istringstream in(slurp(path("s.csv")));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        const double radius = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        EXPECT_GE(radius, 0.0);
        EXPECT_LE(radius, 1.0 + 1e-9);
        ++rows;
    }
    EXPECT_EQ(rows, 100);
}

TEST_F(Cli, AuditPassesAndRecordsDiagnostics) {
    ASSERT_EQ(run("audit --samples 60 --seed 3 --out " + path("audit.json")), 0);
    const json j = json::parse(slurp(path("audit.json")));
    EXPECT_TRUE(j["passes"].get<bool>());
    bool saw_relent = false;
    for (const auto& f : j["families"]) {
        if (f["name"] == "theorem4_relative_entropy_form") {
            saw_relent = true;
            EXPECT_EQ(f["status"], "diagnostic");
            ASSERT_FALSE(f["counterexamples"].empty());
            const auto& ce = f["counterexamples"][0];
            EXPECT_TRUE(ce.contains("rho") && ce.contains("A") && ce.contains("B"));
        } else if (f["asserted"].get<bool>()) {
            EXPECT_EQ(f["status"], "pass") << f["name"];
        }
    }
    EXPECT_TRUE(saw_relent);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("audit --dims 1 --samples 5"), 2);
    EXPECT_EQ(run("nonsense"), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("qsl"), 2);
    EXPECT_EQ(run("qsl --scenario nope"), 2);
    EXPECT_EQ(run("fig1 --samples 3 --out /nonexistent/dir/out.csv"), 2);
    std::ofstream(path("bad.json")) << "{\"hamiltonian\": [[1]]";
    EXPECT_EQ(run("qsl --config " + path("bad.json")), 2);
}

TEST_F(Cli, QslDephasing) {
    ASSERT_EQ(run("qsl --config " + std::string(QUNC_SCENARIO_DIR) + "/dephasing.json --out " + path("q.json") +
                  " --trajectory " + path("t.csv")),
              0);
    const json j = json::parse(slurp(path("q.json")));
    EXPECT_LT(j["lambda_reverse"].get<double>(), 0.0);
    EXPECT_TRUE(j["integrated"]["holds"].get<bool>());
    EXPECT_TRUE(j["assumptions"]["passes"].get<bool>());
    EXPECT_EQ(first_line(slurp(path("t.csv"))), "t,bures_angle,sin2_bures");
}

TEST_F(Cli, FidelityAnalyticCase) {
    ASSERT_EQ(run("fidelity --r 0 0 0 --s 0.6 0 0 --m 0 0 1 --out " + path("f.json")), 0);
    const json j = json::parse(slurp(path("f.json")));
    EXPECT_EQ(j["status"], "solved");
    EXPECT_LT(j["residual"].get<double>(), 1e-8);
    EXPECT_LE(j["fidelity_bound"].get<double>(), j["fidelity_sq"].get<double>() + 1e-8);
}

TEST_F(Cli, HexagonColumns) {
    ASSERT_EQ(run("hexagon --samples 20 --seed 2 --out " + path("h.csv")), 0);
    const std::string header = first_line(slurp(path("h.csv")));
    EXPECT_NE(header.find("variant1_residual"), std::string::npos);
    EXPECT_NE(header.find("variant2_residual"), std::string::npos);
}

}  // namespace
}  // namespace qunc
