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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beamcb/codebook.hpp"

namespace beamcb {

std::optional<PhaseSpec> Codebook::phase_spec() const {
  if (entries.empty()) {
    return std::nullopt;
  }
  const PhaseSpec first = entries.front().weights.phase_spec();
  for (const auto& e : entries) {
    if (!(e.weights.phase_spec() == first)) {
      return std::nullopt;
    }
  }
  return first;
}

std::string codebook_to_json(const Codebook& cb) {
  nlohmann::ordered_json j;
  const auto spec = cb.phase_spec();
  if (!cb.empty() && !spec) {
    throw InvalidArgument("codebook entries use different phase resolutions");
  }
  if (spec && spec->is_discrete()) {
    j["phase_bits"] = spec->bits();
  } else {
    j["phase_bits"] = nullptr;
  }
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : cb.entries) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < e.weights.vector().size(); ++i) {
      const cplx z = e.weights.vector()[i];
      w.push_back({z.real(), z.imag()});
    }
    entries.push_back({{"array", e.array_id}, {"weights", w}});
  }
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

Codebook codebook_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("codebook JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("entries") || !j.contains("phase_bits")) {
      throw ParseError("codebook JSON needs 'phase_bits' and 'entries'");
    }
    const PhaseSpec spec =
        j.at("phase_bits").is_null() ? PhaseSpec::continuous() : PhaseSpec::discrete(j.at("phase_bits").get<int>());
    Codebook cb;
    std::size_t index = 0;
    for (const auto& e : j.at("entries")) {
      const auto& ws = e.at("weights");
      CVector w(static_cast<Eigen::Index>(ws.size()));
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const auto& pair = ws.at(i);
        if (!pair.is_array() || pair.size() != 2) {
          throw ParseError("codebook entry " + std::to_string(index) + ": weights must be [re, im] pairs");
        }
        w[static_cast<Eigen::Index>(i)] = {pair.at(0).get<double>(), pair.at(1).get<double>()};
      }
      try {
        cb.entries.push_back({e.at("array").get<std::string>(), BeamWeights::from_vector(w, spec)});
      } catch (const InvalidArgument& err) {
        throw ParseError("codebook entry " + std::to_string(index) + ": " + err.what());
      }
      ++index;
    }
    return cb;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("codebook JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("codebook JSON: ") + e.what());
  }
}

void save_codebook(const std::filesystem::path& path, const Codebook& cb) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write codebook '" + path.string() + "'");
  }
  out << codebook_to_json(cb);
}

Codebook load_codebook(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open codebook '" + path.string() + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return codebook_from_json(ss.str());
}

} // namespace beamcb
