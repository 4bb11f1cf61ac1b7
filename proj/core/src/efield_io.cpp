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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beamcb/efield.hpp"
#include "beamcb/format.hpp"

namespace beamcb {

namespace {

constexpr std::string_view kHeader = "elem,theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi";

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  double v = 0.0;
  // from_chars rejects a leading '+'; accept it for hand-edited files.
  std::string_view body = field;
  if (!body.empty() && body.front() == '+') {
    body.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) {
    // from_chars does not parse "nan"/"inf" spellings consistently; catch them by name.
    std::string lower(field);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower.find("nan") != std::string::npos || lower.find("inf") != std::string::npos) {
      fail(line, std::string("non-finite sample in column ") + name);
    }
    fail(line, std::string("cannot parse ") + name + " value '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) {
    fail(line, std::string("non-finite sample in column ") + name);
  }
  return v;
}

std::size_t parse_index(std::string_view field, std::size_t line) {
  field = trim(field);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    fail(line, "element index must be a nonnegative integer, got '" + std::string(field) + "'");
  }
  return v;
}

struct Row {
  std::size_t elem;
  double theta;
  double phi;
  cplx et;
  cplx ep;
  std::size_t line;
};

} // namespace

EFieldGrid read_efield_csv(std::istream& in, std::string array_id) {
  std::string text;
  std::size_t line_no = 0;
  std::vector<Row> rows;
  bool header_seen = false;
  while (std::getline(in, text)) {
    ++line_no;
    const std::string_view line = trim(text);
    if (line.empty()) {
      continue;
    }
    if (!header_seen) {
      if (line != kHeader) {
        fail(line_no, "expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 7) {
      fail(line_no, "expected 7 columns, found " + std::to_string(cols.size()));
    }
    Row r;
    r.line = line_no;
    r.elem = parse_index(cols[0], line_no);
    r.theta = parse_double(cols[1], line_no, "theta_deg");
    r.phi = parse_double(cols[2], line_no, "phi_deg");
    r.et = {parse_double(cols[3], line_no, "re_etheta"), parse_double(cols[4], line_no, "im_etheta")};
    r.ep = {parse_double(cols[5], line_no, "re_ephi"), parse_double(cols[6], line_no, "im_ephi")};
    if (r.theta < 0.0 || r.theta > 180.0) {
      fail(line_no, "theta_deg outside [0, 180]");
    }
    if (r.phi < 0.0 || r.phi >= 360.0) {
      fail(line_no, "phi_deg outside [0, 360)");
    }
    rows.push_back(r);
  }
  if (!header_seen) {
    throw ParseError("line 1: missing header");
  }
  if (rows.empty()) {
    throw ParseError("incomplete grid: no samples");
  }

  std::vector<double> thetas;
  std::vector<double> phis;
  std::size_t max_elem = 0;
  for (const auto& r : rows) {
    thetas.push_back(r.theta);
    phis.push_back(r.phi);
    max_elem = std::max(max_elem, r.elem);
  }
  auto unique_sorted = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  unique_sorted(thetas);
  unique_sorted(phis);
  const std::size_t L = max_elem + 1;
  const std::size_t T = thetas.size();
  const std::size_t P = phis.size();

  std::vector<cplx> e_theta(L * T * P);
  std::vector<cplx> e_phi(L * T * P);
  std::vector<std::size_t> seen(L * T * P, 0);
  auto index_of = [](const std::vector<double>& axis, double v) {
    return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
  };
  for (const auto& r : rows) {
    const std::size_t t = index_of(thetas, r.theta);
    const std::size_t p = index_of(phis, r.phi);
    const std::size_t off = (r.elem * T + t) * P + p;
    if (seen[off] != 0) {
      fail(r.line, "duplicate sample (first seen on line " + std::to_string(seen[off]) + ")");
    }
    seen[off] = r.line;
    e_theta[off] = r.et;
    e_phi[off] = r.ep;
  }
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t p = 0; p < P; ++p) {
        if (seen[(l * T + t) * P + p] == 0) {
          std::ostringstream os;
          os.precision(17);
          os << "incomplete grid: no sample for element " << l << " at theta=" << thetas[t]
             << ", phi=" << phis[p];
          throw ParseError(os.str());
        }
      }
    }
  }
  return EFieldGrid(std::move(array_id), L, std::move(thetas), std::move(phis), std::move(e_theta),
                    std::move(e_phi));
}

EFieldGrid load_efield(const std::filesystem::path& path, std::string array_id) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open E-field file '" + path.string() + "'");
  }
  try {
    return read_efield_csv(in, std::move(array_id));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

EFieldGrid load_efield(const std::filesystem::path& path) {
  return load_efield(path, path.stem().string());
}

void write_efield_csv(std::ostream& out, const EFieldGrid& grid) {
  out << kHeader << '\n';
  std::string line;
  for (std::size_t l = 0; l < grid.num_elements(); ++l) {
    for (std::size_t t = 0; t < grid.num_theta(); ++t) {
      for (std::size_t p = 0; p < grid.num_phi(); ++p) {
        const MeshIndex idx{t, p};
        const cplx et = grid.e_theta(l, idx);
        const cplx ep = grid.e_phi(l, idx);
        line.clear();
        line += std::to_string(l);
        for (double v : {grid.theta_axis()[t], grid.phi_axis()[p], et.real(), et.imag(), ep.real(), ep.imag()}) {
          line += ',';
          line += format_double(v);
        }
        line += '\n';
        out << line;
      }
    }
  }
}

void save_efield(const std::filesystem::path& path, const EFieldGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write E-field file '" + path.string() + "'");
  }
  write_efield_csv(out, grid);
  if (!out) {
    throw Error("write failed for '" + path.string() + "'");
  }
}

} // namespace beamcb
