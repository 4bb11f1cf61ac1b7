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

#include "selfcheck.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "beamcb/codebook.hpp"
#include "beamcb/efield.hpp"
#include "cli.hpp"
#include "config.hpp"

namespace beamcb::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    out.push_back(cell);
  }
  return out;
}

bool parse_number(const std::string& s, double& v) {
  try {
    std::size_t pos = 0;
    v = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string check_pattern(const fs::path& p, bool nonnegative) {
  std::istringstream in(slurp(p));
  std::string line;
  if (!std::getline(in, line) || line != "theta_deg,phi_deg,weight,gain_db") {
    return "bad header";
  }
  std::size_t rows = 0;
  double total = 0.0;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    double v[4];
    if (cells.size() != 4) {
      return "row " + std::to_string(rows + 2) + ": expected 4 columns";
    }
    for (int i = 0; i < 4; ++i) {
      if (!parse_number(cells[i], v[i])) {
        return "row " + std::to_string(rows + 2) + ": not a number";
      }
    }
    if (v[0] < 0.0 || v[0] > 180.0 || v[1] < 0.0 || v[1] >= 360.0 || v[2] < 0.0) {
      return "row " + std::to_string(rows + 2) + ": out of range";
    }
    if (nonnegative && v[3] < 0.0) {
      return "row " + std::to_string(rows + 2) + ": negative gap";
    }
    total += v[2];
    ++rows;
  }
  if (rows == 0) {
    return "no rows";
  }
  if (std::abs(total - 1.0) > 1e-9) {
    return "weights do not sum to 1";
  }
  return "";
}

std::string check_stats_block(const json& j) {
  if (!j.is_object() || !j.contains("mean_db") || !j.at("mean_db").is_number() || !j.contains("percentiles") ||
      !j.at("percentiles").is_object() || !j.contains("cdf") || !j.at("cdf").is_array()) {
    return "stats block needs mean_db, percentiles and cdf";
  }
  double prev_g = -1e300;
  double prev_c = 0.0;
  for (const auto& pt : j.at("cdf")) {
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
      return "cdf points must be [gain_db, cumulative]";
    }
    const double g = pt[0].get<double>();
    const double c = pt[1].get<double>();
    if (g <= prev_g || c < prev_c || c > 1.0) {
      return "cdf is not increasing";
    }
    prev_g = g;
    prev_c = c;
  }
  if (prev_c != 1.0) {
    return "cdf does not end at 1";
  }
  return "";
}

std::string check_json_file(const fs::path& p) {
  json j;
  try {
    j = json::parse(slurp(p));
  } catch (const json::parse_error& e) {
    return e.what();
  }
  const auto name = p.filename().string();
  if (name == "stats.json") {
    if (!j.contains("num_directions") || !j.contains("bound")) {
      return "missing num_directions or bound";
    }
    if (auto e = check_stats_block(j.at("bound")); !e.empty()) {
      return "bound: " + e;
    }
    if (j.contains("composite")) {
      if (auto e = check_stats_block(j.at("composite")); !e.empty()) {
        return "composite: " + e;
      }
      if (!j.contains("gap") || j.at("gap").value("min_db", -1.0) < 0.0) {
        return "gap summary missing or negative";
      }
    }
    return "";
  }
  if (name == "design_log.json") {
    for (const char* key : {"algorithm", "seed", "status", "warnings", "codebook_size", "trace", "config"}) {
      if (!j.contains(key)) {
        return std::string("missing ") + key;
      }
    }
    try {
      parse_run_config(j.at("config"), p.parent_path());
    } catch (const std::exception& e) {
      return std::string("config: ") + e.what();
    }
    return "";
  }
  if (j.contains("entries")) {
    try {
      codebook_from_json(slurp(p));
    } catch (const std::exception& e) {
      return e.what();
    }
    return "";
  }
  if (j.contains("synthetic") && j.contains("array_id")) {
    try {
      parse_synthetic(j.at("synthetic"));
    } catch (const std::exception& e) {
      return e.what();
    }
    return "";
  }
  if (j.contains("algorithm") || j.contains("arrays")) {
    try {
      parse_run_config(j, p.parent_path());
    } catch (const std::exception& e) {
      return e.what();
    }
    return "";
  }
  return "skip";
}

std::string check_csv_file(const fs::path& p) {
  const auto name = p.filename().string();
  if (name == "pattern.csv" || name == "bound.csv") {
    return check_pattern(p, false);
  }
  if (name == "gap.csv") {
    return check_pattern(p, true);
  }
  std::istringstream in(slurp(p));
  std::string header;
  std::getline(in, header);
  if (header.rfind("label,algorithm,size,mean_db,median_db", 0) == 0) {
    const auto cols = split(header).size();
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      const auto cells = split(line);
      if (cells.size() != cols) {
        return "row " + std::to_string(rows + 2) + ": column count";
      }
      double v;
      for (std::size_t i = 3; i < cells.size(); ++i) {
        if (!parse_number(cells[i], v)) {
          return "row " + std::to_string(rows + 2) + ": not a number";
        }
      }
      ++rows;
    }
    return rows >= 2 ? "" : "fewer than two rows";
  }
  if (header.rfind("elem,", 0) == 0) {
    try {
      load_efield(p);
    } catch (const std::exception& e) {
      return e.what();
    }
    return "";
  }
  return "skip";
}

void collect(const fs::path& p, std::vector<fs::path>& files) {
  if (fs::is_directory(p)) {
    std::vector<fs::path> entries;
    for (const auto& e : fs::recursive_directory_iterator(p)) {
      if (e.is_regular_file()) {
        entries.push_back(e.path());
      }
    }
    std::sort(entries.begin(), entries.end());
    files.insert(files.end(), entries.begin(), entries.end());
  } else {
    files.push_back(p);
  }
}

int validate(const std::vector<fs::path>& roots, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& r : roots) {
    if (!fs::exists(r)) {
      err << "error: no such file or directory: " << r.generic_string() << "\n";
      return kExitUsage;
    }
    collect(r, files);
  }
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (const auto& f : files) {
    const std::string result = check_file(f);
    if (result == "skip") {
      continue;
    }
    ++checked;
    if (result.empty()) {
      out << "ok   " << f.generic_string() << "\n";
    } else {
      ++failed;
      out << "FAIL " << f.generic_string() << ": " << result << "\n";
    }
  }
  out << checked << " files checked, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitInternal;
}

int smoke(std::ostream& out, std::ostream& err) {
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() / ("beamcb-selfcheck-" + std::to_string(rd()));
  fs::create_directories(root);
  std::ostringstream quiet;
  auto step = [&](const std::vector<std::string>& args) {
    const int code = run(args, quiet, err);
    if (code != kExitOk) {
      err << "selfcheck: '" << args.front() << "' exited with " << code << "\n";
    }
    return code;
  };
  auto write = [&](const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2) << "\n"; };

  json base = {{"arrays", {{{"id", "ula"}, {"file", "ula.csv"}}}},
               {"algorithm", {{"name", "kmeans"}, {"K", 4}, {"phase_bits", 5}, {"init", "benchmark"},
                              {"spacing_lambda", 0.65}}},
               {"evaluation", {{"percentiles", {10, 50, 90}}}}};
  json bench = base;
  bench["algorithm"]["name"] = "benchmark";
  base["output_dir"] = "design";
  write(root / "kmeans.json", base);
  write(root / "benchmark.json", bench);

  const std::string r = root.generic_string();
  int code = step({"gen-efield", "--elements", "4", "--spacing-lambda", "0.65", "--output", r + "/ula.csv"});
  if (code == kExitOk) {
    code = step({"design", "--config", r + "/kmeans.json"});
  }
  if (code == kExitOk) {
    code = step({"eval", "--config", r + "/kmeans.json", "--codebook", r + "/design/codebook.json", "--output-dir",
                 r + "/eval"});
  }
  if (code == kExitOk) {
    code = step({"compare", r + "/benchmark.json", r + "/kmeans.json", "--output-dir", r + "/compare"});
  }
  if (code == kExitOk) {
    code = validate({root}, out, err);
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return code;
}

} // namespace

std::string check_file(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") {
    return check_json_file(path);
  }
  if (ext == ".csv") {
    return check_csv_file(path);
  }
  return "skip";
}

int selfcheck(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
  if (paths.empty()) {
    return smoke(out, err);
  }
  return validate(std::vector<fs::path>(paths.begin(), paths.end()), out, err);
}

} // namespace beamcb::cli
