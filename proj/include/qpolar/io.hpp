// Copyright 2026 The qpolar Authors
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

#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpolar/channel.hpp"
#include "qpolar/codec.hpp"
#include "qpolar/polarization.hpp"

namespace qpolar::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

/// Fixed 17-significant-digit rendering so output bytes do not depend on locale or stream state.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline PauliProbVec pauli_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("Pauli vector must have 4 entries");
  PauliProbVec p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = j.at(i).get<double>();
  validate(p);
  return p;
}

inline CmpChannel channel_from_json(const json& j) {
  if (j.contains("pauli")) return CmpChannel::pauli(pauli_from_json(j.at("pauli")));
  if (j.contains("cmp")) {
    std::vector<CmpComponent> comps;
    for (const auto& c : j.at("cmp")) {
      if (!c.is_array() || c.size() != 2) throw std::invalid_argument("cmp entries are [weight, [p0,p1,p2,p3]]");
      comps.push_back({c.at(0).get<double>(), pauli_from_json(c.at(1))});
    }
    CmpChannel ch(std::move(comps));
    ch.validate();
    return ch;
  }
  throw std::invalid_argument("channel JSON needs a \"pauli\" or \"cmp\" field");
}

inline json channel_to_json(const CmpChannel& ch) {
  if (ch.size() == 1) return json{{"pauli", ch.components()[0].p}};
  json arr = json::array();
  for (const auto& c : ch.components()) arr.push_back(json::array({c.weight, c.p}));
  return json{{"cmp", arr}};
}

/// Accepts a preset such as depolarizing(0.05), inline JSON, or a path to a JSON file.
inline CmpChannel parse_channel(const std::string& text) {
  static const std::regex preset(R"(^\s*(depolarizing|dephasing|bitflip)\s*\(\s*([0-9eE.+-]+)\s*\)\s*$)");
  std::smatch m;
  if (text == "noiseless") return CmpChannel::pauli(presets::noiseless());
  if (std::regex_match(text, m, preset)) {
    double q = 0;
    try {
      q = std::stod(m[2].str());
    } catch (const std::exception&) {
      throw std::invalid_argument("bad preset parameter in " + text);
    }
    if (!(q >= 0 && q <= 1)) throw std::invalid_argument("preset parameter must lie in [0,1]");
    if (m[1] == "depolarizing") return CmpChannel::pauli(presets::depolarizing(q));
    if (m[1] == "dephasing") return CmpChannel::pauli(presets::dephasing(q));
    return CmpChannel::pauli(presets::bitflip(q));
  }
  auto first = text.find_first_not_of(" \t\r\n");
  std::string body = (first != std::string::npos && text[first] == '{') ? text : read_file(text);
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("channel JSON: ") + e.what());
  }
  return channel_from_json(j);
}

/// The single Pauli vector of a channel; coding needs an unflagged Pauli channel.
inline PauliProbVec single_pauli(const CmpChannel& ch) {
  if (ch.size() != 1) throw std::invalid_argument("coding requires a Pauli channel, not a flagged mixture");
  return ch.components()[0].p;
}

/// Gate policy from the command-line form: L, R, S3, all20 (random) or fixed:<name>.
inline GatePolicy parse_gate_option(const std::string& text, std::uint64_t seed) {
  if (text.rfind("fixed:", 0) == 0) return GatePolicy::fixed(text.substr(6));
  if (text == "L" || text == "R" || text == "S3" || text == "all20") return GatePolicy::random(text, seed);
  throw std::invalid_argument("unknown gate option " + text);
}

inline json policy_to_json(const GatePolicy& p) {
  switch (p.kind) {
    case GatePolicy::Kind::kFixed:
      return json{{"policy", "fixed"}, {"gate", p.gates.at(0)}};
    case GatePolicy::Kind::kPerLevel:
      return json{{"policy", "per-level"}, {"gates", p.gates}};
    case GatePolicy::Kind::kRandom:
      return json{{"policy", "random"}, {"set", p.set}, {"seed", p.seed}};
  }
  return {};
}

inline json tree_to_json(const GateTree& t) {
  json levels = json::array();
  for (const auto& level : t.levels()) {
    json names = json::array();
    for (const auto& g : level) names.push_back(g.name);
    levels.push_back(names);
  }
  return json{{"policy", "tree"}, {"tree", levels}};
}

inline GateTree tree_from_json(const json& j, unsigned n) {
  const auto policy = j.at("policy").get<std::string>();
  if (policy == "tree") {
    std::vector<std::vector<NamedPermutation>> levels;
    for (const auto& level : j.at("tree")) {
      std::vector<NamedPermutation> row;
      for (const auto& name : level) row.push_back(named_gamma(name.get<std::string>()));
      levels.push_back(std::move(row));
    }
    GateTree t(std::move(levels));
    if (t.depth() != n) throw std::invalid_argument("gate tree depth differs from n");
    return t;
  }
  if (policy == "fixed") return make_gate_tree(n, GatePolicy::fixed(j.at("gate").get<std::string>()));
  if (policy == "per-level") return make_gate_tree(n, GatePolicy::per_level(j.at("gates").get<std::vector<std::string>>()));
  if (policy == "random")
    return make_gate_tree(n, GatePolicy::random(j.value("set", std::string("S3")), j.at("seed").get<std::uint64_t>()));
  throw std::invalid_argument("unknown gate policy " + policy);
}

inline json code_to_json(const PolarCodeSpec& s, const json& gates) {
  json j;
  j["n"] = s.n;
  j["gates"] = gates;
  j["frozen"] = s.frozen;
  j["info"] = s.info;
  j["chain_subset"] = s.chain_subset;
  return j;
}

inline PolarCodeSpec code_from_json(const json& j) {
  PolarCodeSpec s;
  s.n = j.at("n").get<unsigned>();
  if (s.n > 24) throw std::invalid_argument("n too large");
  s.tree = tree_from_json(j.at("gates"), s.n);
  s.frozen = j.at("frozen").get<std::vector<std::size_t>>();
  s.info = j.at("info").get<std::vector<std::size_t>>();
  if (j.contains("chain_subset")) s.chain_subset = j.at("chain_subset").get<std::vector<std::size_t>>();
  std::sort(s.frozen.begin(), s.frozen.end());
  std::sort(s.info.begin(), s.info.end());
  std::sort(s.chain_subset.begin(), s.chain_subset.end());
  s.validate();
  return s;
}

inline std::string report_csv(const PolarizationReport& r) {
  std::ostringstream o;
  o << "index,Z1,Z2,Z3,Z,I,components,pruned_mass\n";
  for (const auto& rec : r.records)
    o << rec.index << ',' << fmt(rec.z_d[0]) << ',' << fmt(rec.z_d[1]) << ',' << fmt(rec.z_d[2]) << ','
      << fmt(rec.z) << ',' << fmt(rec.mutual_info) << ',' << rec.components << ',' << fmt(rec.pruned_mass) << '\n';
  return o.str();
}

}  // namespace qpolar::io
