// SPDX-License-Identifier: Apache-2.0
//
// beamcb: data-driven analog beam codebook synthesis for antenna arrays
// Copyright (C) 2026 The beamcb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beamcb/codebook.hpp"
#include "beamcb/synthesis.hpp"
#include "cli.hpp"
#include "selfcheck.hpp"

using namespace beamcb;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("beamcb-test-" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string path(const std::string& f) const { return (dir / f).generic_string(); }
  void write(const std::string& f, const std::string& text) const { std::ofstream(dir / f) << text; }
};

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text != nullptr) {
    *out_text = out.str();
  }
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kIrregularUla = R"({"arrays": [{"id": "ula", "synthetic": {"elements": 4, "spacing_lambda": 0.65}}],
  "algorithm": {"name": "kmeans", "K": 4, "phase_bits": 5, "init": "benchmark", "seed": 7}})";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen-efield") {
  Scratch s("gen");
  REQUIRE(run({"gen-efield", "--elements", "4", "--spacing-lambda", "0.65", "--pattern-q", "0", "-o", s.path("a")}) ==
          0);
  const EFieldGrid g = load_efield(s.dir / "a" / "ula.csv");
  CHECK(g.num_theta() == 241);
  const std::string first = slurp(s.dir / "a" / "ula.csv");
  const std::string side = slurp(s.dir / "a" / "ula.json");
  REQUIRE(run({"gen-efield", "--elements", "4", "--spacing-lambda", "0.65", "--pattern-q", "0", "-o", s.path("a")}) ==
          0);
  CHECK(slurp(s.dir / "a" / "ula.csv") == first);
  CHECK(slurp(s.dir / "a" / "ula.json") == side);
  CHECK(cli::check_file(s.dir / "a" / "ula.json").empty());

  CHECK(run({"gen-efield", "--elements", "0", "-o", s.path("b")}) == 2);
  CHECK(run({"gen-efield", "--elements", "abc"}) == 2);
  CHECK(run({"gen-efield", "--bogus"}) == 2);
}

TEST_CASE("design kmeans from benchmark init") {
  Scratch s("design");
  s.write("irregular.json", kIrregularUla);
  REQUIRE(run({"design", "-c", s.path("irregular.json"), "-o", s.path("r1")}) == 0);
  REQUIRE(run({"design", "-c", s.path("irregular.json"), "-o", s.path("r2")}) == 0);
  CHECK(slurp(s.dir / "r1" / "codebook.json") == slurp(s.dir / "r2" / "codebook.json"));
  CHECK(slurp(s.dir / "r1" / "design_log.json") == slurp(s.dir / "r2" / "design_log.json"));

  const auto log = nlohmann::json::parse(slurp(s.dir / "r1" / "design_log.json"));
  CHECK(log["seed"] == 7);
  CHECK(log["trace"]["mean_gain_db"].size() >= 2);

  std::string text;
  REQUIRE(run({"eval", "-c", s.path("irregular.json"), "--codebook", s.path("r1/codebook.json"), "-o", s.path("e")},
              &text) == 0);
  const auto stats = nlohmann::json::parse(slurp(s.dir / "e" / "stats.json"));
  const double median = stats["composite"]["percentiles"]["50"].get<double>();
  CHECK(median == doctest::Approx(5.38).epsilon(0.2 / 5.38));
  for (const char* f : {"stats.json", "pattern.csv", "bound.csv", "gap.csv"}) {
    CHECK(cli::check_file(s.dir / "e" / f).empty());
  }
  CHECK(run({"selfcheck", s.path("r1"), s.path("e")}) == 0);
}

TEST_CASE("design overrides and benchmark codewords") {
  Scratch s("bench");
  s.write("irregular.json", kIrregularUla);
  REQUIRE(run({"design", "-c", s.path("irregular.json"), "--algorithm", "benchmark", "-o", s.path("b")}) == 0);
  const Codebook cb = load_codebook(s.dir / "b" / "codebook.json");
  const Codebook ref = benchmark_codebook(4, 0.65, 4, PhaseSpec::discrete(5), "ula");
  REQUIRE(cb.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(cb.entries[i].weights == ref.entries[i].weights);
  }
  CHECK(run({"design", "-c", s.path("irregular.json"), "--phase-bits", "0"}) == 2);
  CHECK(run({"design", "-c", s.path("missing.json")}) == 2);
  s.write("bad.json", R"({"algorithm": {"name": "kmeans", "colour": 1}})");
  CHECK(run({"design", "-c", s.path("bad.json")}) == 2);
}

TEST_CASE("infeasible stop completes with status") {
  Scratch s("stop");
  s.write("g.json", R"({"arrays": [{"synthetic": {"elements": 4, "spacing_lambda": 0.5}}],
    "algorithm": {"name": "greedy", "phase_bits": 3, "candidates": {"count": 20},
                  "stop": {"type": "mean", "threshold_db": 40}}})");
  REQUIRE(run({"design", "-c", s.path("g.json"), "-o", s.path("o")}) == 0);
  const auto log = nlohmann::json::parse(slurp(s.dir / "o" / "design_log.json"));
  CHECK(log["status"] == "pool_exhausted");
  CHECK(log["warnings"].size() == 1);
}

TEST_CASE("eval modes") {
  Scratch s("eval");
  s.write("irregular.json", kIrregularUla);
  REQUIRE(run({"eval", "-c", s.path("irregular.json"), "--bound-only", "-o", s.path("b")}) == 0);
  CHECK(fs::exists(s.dir / "b" / "bound.csv"));
  CHECK_FALSE(fs::exists(s.dir / "b" / "pattern.csv"));

  // Single beam: pattern equals the beam pattern.
  Codebook one;
  one.entries.push_back(benchmark_codebook(4, 0.65, 4, PhaseSpec::discrete(5), "ula").entries[2]);
  save_codebook(s.dir / "one.json", one);
  REQUIRE(run({"eval", "-c", s.path("irregular.json"), "--codebook", s.path("one.json"), "-o", s.path("o")}) == 0);
  const SyntheticUla ula = generate_ula_efield({4, 0.65, 0.0, std::nullopt});
  std::ostringstream expected;
  write_pattern_csv(expected, beam_pattern(ula.grid, one.entries[0].weights, ula.directions));
  CHECK(slurp(s.dir / "o" / "pattern.csv") == expected.str());

  CHECK(run({"eval", "-c", s.path("irregular.json"), "--elements", "8", "--codebook", s.path("one.json"), "-o",
             s.path("mismatch")}) == 2);
  CHECK_FALSE(fs::exists(s.dir / "mismatch"));
  CHECK(run({"eval", "-c", s.path("irregular.json"), "-o", s.path("none")}) == 2);
}

TEST_CASE("compare") {
  Scratch s("cmp");
  s.write("kmeans.json", kIrregularUla);
  s.write("benchmark.json", R"({"arrays": [{"id": "ula", "synthetic": {"elements": 4, "spacing_lambda": 0.65}}],
    "algorithm": {"name": "benchmark", "K": 4, "phase_bits": 5}})");
  s.write("ieee.json", R"({"arrays": [{"id": "ula", "synthetic": {"elements": 4, "spacing_lambda": 0.65}}],
    "algorithm": {"name": "3c", "K": 4, "phase_bits": 5}})");
  REQUIRE(run({"compare", s.path("benchmark.json"), s.path("ieee.json"), s.path("kmeans.json"), "-o", s.path("o")}) ==
          0);
  std::istringstream csv(slurp(s.dir / "o" / "comparison.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("label,algorithm,size,mean_db,median_db", 0) == 0);
  std::vector<double> medians;
  std::vector<std::string> labels;
  while (std::getline(csv, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    labels.push_back(cells[0]);
    medians.push_back(std::stod(cells[4]));
  }
  REQUIRE(medians.size() == 3);
  CHECK(labels == std::vector<std::string>{"benchmark", "ieee", "kmeans"});
  CHECK(medians[0] < medians[1]);
  CHECK(medians[1] < medians[2]);

  REQUIRE(run({"compare", s.path("ieee.json"), s.path("ieee.json"), "-o", s.path("same")}) == 0);
  std::istringstream same(slurp(s.dir / "same" / "comparison.csv"));
  std::string header, a, b;
  std::getline(same, header);
  std::getline(same, a);
  std::getline(same, b);
  CHECK(a == b);

  CHECK(run({"compare", s.path("ieee.json")}) == 2);
}

TEST_CASE("output dir from environment") {
  Scratch s("env");
  setenv(cli::kOutputDirEnv, s.path("envout").c_str(), 1);
  const int code = run({"gen-efield", "--elements", "2"});
  unsetenv(cli::kOutputDirEnv);
  REQUIRE(code == 0);
  CHECK(fs::exists(s.dir / "envout" / "ula.csv"));
}

TEST_CASE("selfcheck") {
  CHECK(run({"selfcheck"}) == 0);
  Scratch s("check");
  s.write("gap.csv", "theta_deg,phi_deg,weight,gain_db\n90,0,1,-0.5\n");
  CHECK(run({"selfcheck", s.path("gap.csv")}) == 1);
  CHECK(run({"selfcheck", s.path("nope")}) == 2);
}

} // TEST_SUITE
