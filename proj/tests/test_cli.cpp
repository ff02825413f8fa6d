// Copyright 2026 The Naimark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "naimark/dilation.hpp"
#include "naimark/io.hpp"

#ifndef NAIMARK_CLI_PATH
#error "NAIMARK_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("naimark_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    CliRun run(const std::string &args) {
        const fs::path err = dir_ / "stderr.txt";
        const std::string cmd =
            std::string(NAIMARK_CLI_PATH) + " " + args + " 2>" + err.string();
        CliRun r;
        FILE *pipe = ::popen(cmd.c_str(), "r");
        if (pipe == nullptr) {
            return r;
        }
        char buf[4096];
        size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
            r.out.append(buf, n);
        }
        const int status = ::pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        std::ifstream in(err);
        std::stringstream ss;
        ss << in.rdbuf();
        r.err = ss.str();
        return r;
    }

    fs::path dir_;
};

const char *kUnbiasedHalf = R"({"effects": [
  {"e0": 1, "ex": 0, "ey": 0, "ez": 0.5},
  {"e0": 1, "ex": 0, "ey": 0, "ez": -0.5}]})";

}  // namespace

TEST_F(CliTest, DilateUnbiased) {
    const CliRun r = run("dilate " + write("e.json", kUnbiasedHalf));
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["m"], Json({2, 2}));
    ASSERT_EQ(j["rows"].size(), 4u);
    const auto d = naimark::io::dilation_from_json(j);
    const auto p = naimark::io::povm_from_json(Json::parse(kUnbiasedHalf));
    EXPECT_LE(naimark::verify_dilation(d, p), 1e-12);
    EXPECT_NEAR(j["rows"][0]["c_re"].get<double>(), std::sqrt(0.75), 1e-15);
    EXPECT_NE(r.err.find("residual"), std::string::npos);
}

TEST_F(CliTest, DilateWritesOutFile) {
    const std::string out = (dir_ / "out.json").string();
    const CliRun r = run("--out " + out + " dilate " + write("e.json", kUnbiasedHalf));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(Json::parse(ss.str())["m"], Json({2, 2}));
}

TEST_F(CliTest, ParseAndValidationErrors) {
    EXPECT_EQ(run("dilate " + write("bad.json", "{not json")).code, 2);
    EXPECT_EQ(run("dilate " + write("missing.json", R"({"effects": [{"e0": 1}]})")).code, 2);
    EXPECT_EQ(run("dilate " + (dir_ / "nope.json").string()).code, 2);
    const char *unnormalized = R"({"effects": [
      {"e0": 1, "ex": 0, "ey": 0, "ez": 0.5},
      {"e0": 0.9, "ex": 0, "ey": 0, "ez": -0.5}]})";
    const CliRun r = run("dilate " + write("v.json", unnormalized));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("validation error"), std::string::npos);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("trinary --lambda 2 --eta 0.5").code, 2);
    EXPECT_EQ(run("--max-iters 0 busch --e 1 0 0 0 --b 1 0 0 0").code, 2);
}

TEST_F(CliTest, BuschNoisySpinsBoundary) {
    const std::string s = "0.70710678118654752";
    const CliRun r = run("busch --e 1 0 0 " + s + " --b 1 " + s + " 0 0");
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["verdict"], "compatible (boundary)");
    EXPECT_EQ(j["grid"].size(), 2u);
    EXPECT_NEAR(j["grid"][0][0]["e0"].get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, BuschTrivialAndIncompatible) {
    const CliRun zero = run("busch --e 1 0 0 0 --b 1 0 0 0");
    EXPECT_EQ(zero.code, 0);
    EXPECT_EQ(Json::parse(zero.out)["verdict"], "compatible");
    const CliRun bad = run("busch --e 1 0 0 0.9 --b 1 0.9 0 0");
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(Json::parse(bad.out)["verdict"], "incompatible");
    EXPECT_EQ(run("busch --e 1 0 0 1.5 --b 1 0 0 0").code, 3);
}

TEST_F(CliTest, BuschBiasedCounterexample) {
    const std::string r15 = "0.96824583655185422";
    const CliRun r = run("busch --e " + r15 + " 0 0 " + r15 + " --b 0.25 0.25 0 0");
    EXPECT_EQ(r.code, 1);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["verdict"], "incompatible");
    EXPECT_EQ(j["note"], "busch_equivalent_form holds but pair incompatible");
    EXPECT_EQ(j["feasibility"]["verdict"], "infeasible");
    EXPECT_EQ(j["feasibility"]["certificate"]["kind"], "rank1-order");
}

TEST_F(CliTest, JointCommutingPair) {
    const std::string e = write("e.json", R"({"effects": [
      {"e0": 1, "ex": 0, "ey": 0, "ez": 1}, {"e0": 1, "ex": 0, "ey": 0, "ez": -1}]})");
    const std::string b = write("b.json", R"({"effects": [
      {"e0": 1, "ex": 0, "ey": 0, "ez": 0.4}, {"e0": 1, "ex": 0, "ey": 0, "ez": -0.4}]})");
    const CliRun r = run("joint " + e + " " + b);
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["verdict"], "feasible");
    const auto grid = naimark::io::grid_from_json(j);
    EXPECT_LE(j["marginal_residual"].get<double>(), 1e-9);
    // N_00 = E_0 B_0 = diag(0.7, 0).
    EXPECT_NEAR(grid.grid[0][0](0, 0).real(), 0.7, 1e-9);
    EXPECT_NEAR(std::abs(grid.grid[0][0](1, 1)), 0.0, 1e-9);
}

TEST_F(CliTest, TrinaryBoundaryAndGap) {
    const CliRun ok = run("trinary --lambda 0.8 --eta 0.8");
    ASSERT_EQ(ok.code, 0) << ok.err;
    const Json j = Json::parse(ok.out);
    EXPECT_EQ(j["verdict"], "feasible");
    EXPECT_LE(j["marginal_residual"].get<double>(), 1e-12);
    const CliRun no = run("trinary --lambda 0.81 --eta 0.81");
    EXPECT_EQ(no.code, 1);
    const Json n = Json::parse(no.out);
    EXPECT_EQ(n["verdict"], "infeasible");
    EXPECT_NE(n["note"].get<std::string>().find("0.866"), std::string::npos);
    EXPECT_EQ(run("trinary --lambda 0.5 --eta 0.5 --psi plus").code, 0);
    EXPECT_EQ(run("trinary --lambda 0.5 --eta 0.5 --psi other").code, 2);
}

TEST_F(CliTest, ThresholdsCsvBoundaries) {
    const CliRun r = run("continuous thresholds");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "eps,triple,pair_qq,pair_nq");
    // First eps at which each column switches on.
    std::array<std::string, 3> first{"", "", ""};
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ls(line);
        std::string eps;
        std::getline(ls, eps, ',');
        for (int c = 0; c < 3; ++c) {
            std::string cell;
            std::getline(ls, cell, ',');
            if (cell == "1" && first[c].empty()) {
                first[c] = eps;
            }
        }
    }
    EXPECT_EQ(rows, 101);
    EXPECT_EQ(first[0], "0.72");
    EXPECT_EQ(first[1], "0.5");
    EXPECT_EQ(first[2], "0.59");
    EXPECT_EQ(r.out.back(), '\n');
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST_F(CliTest, ThresholdsJson) {
    const CliRun r = run("--format json continuous thresholds --step 0.25");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j.size(), 5u);
    EXPECT_EQ(j[2]["eps"], 0.5);
    EXPECT_EQ(j[2]["pair_qq"], true);
    EXPECT_EQ(j[2]["triple"], false);
    EXPECT_EQ(run("continuous thresholds --step 0.3").code, 2);
}

TEST_F(CliTest, GprimeAtFourSevenths) {
    const CliRun r = run("continuous gprime --eps 0.5714285714285714");
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_NEAR(j["coefficients"]["f"].get<double>(), 1.0 / 7, 1e-15);
    EXPECT_NEAR(j["coefficients"]["g"].get<double>(), 0.0, 1e-15);
    EXPECT_EQ(j["positivity"]["positive"], true);
    const CliRun empty = run("continuous gprime --eps 0.5");
    EXPECT_EQ(empty.code, 1);
    EXPECT_NE(empty.err.find("empty"), std::string::npos);
}

TEST_F(CliTest, PhaseCurveContainsEpsMin) {
    const CliRun r = run("continuous phase-curve");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n0.2928932188134525,"), std::string::npos);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "eps,f_eps");
    bool found = false;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double e = std::stod(line.substr(0, comma));
        const double f = std::stod(line.substr(comma + 1));
        if (std::abs(e - (1 - 1 / std::sqrt(2.0))) < 1e-15) {
            found = true;
            EXPECT_NEAR(f, 2.0, 1e-12);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_NE(r.err.find("eps_min"), std::string::npos);
}

TEST_F(CliTest, DeterministicOutput) {
    const std::string e = write("e.json", kUnbiasedHalf);
    for (const std::string &args :
         {"dilate " + e, std::string("busch --e 1 0 0 0.6 --b 1 0.6 0 0"),
          std::string("trinary --lambda 0.7 --eta 0.6"), std::string("continuous thresholds"),
          std::string("continuous gprime --eps 0.8 --theta 0.4"),
          std::string("continuous phase-curve --step 0.05"), "joint " + e + " " + e}) {
        const CliRun a = run(args);
        const CliRun b = run(args);
        EXPECT_EQ(a.code, b.code) << args;
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty()) << args;
    }
}

TEST_F(CliTest, NumbersRoundTrip) {
    const CliRun r = run("continuous phase-curve --step 0.01");
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const std::string cell = line.substr(comma + 1);
        const double v = std::stod(cell);
        EXPECT_EQ(naimark::io::format_double(v), cell);
    }
}
