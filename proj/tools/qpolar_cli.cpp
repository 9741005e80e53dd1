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

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpolar/qpolar.hpp"

namespace {

using nlohmann::json;
using namespace qpolar;

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
};

class Output {
 public:
  explicit Output(const Globals& g) : g_(g) {}

  /// Machine output goes to --out when set, otherwise to standard output.
  void emit(const std::string& machine, const std::string& summary) const {
    if (g_.out.empty()) {
      std::cout << machine;
      if (!machine.empty() && machine.back() != '\n') std::cout << '\n';
    } else {
      io::write_file(g_.out, machine.back() == '\n' ? machine : machine + "\n");
      std::cout << summary << '\n';
    }
  }

 private:
  const Globals& g_;
};

std::string symbol_name(PauliSymbol s) {
  static const char* kNames[] = {"I", "X", "Y", "Z"};
  return kNames[s.value()];
}

std::string bits(std::uint8_t v, unsigned width) {
  std::string s;
  for (int b = static_cast<int>(width) - 1; b >= 0; --b) s += ((v >> b) & 1u) ? '1' : '0';
  return s;
}

// cliffords -----------------------------------------------------------------

struct CliffordsArgs {
  bool table = false;
  std::string set, name;
};

int run_enumerate(const CliffordsArgs& a, const Output& out) {
  auto one = enumerate_single_qubit_group();
  auto two = enumerate_clifford_group();
  json j{{"one_qubit", one.elements.size()}, {"two_qubit", two.elements.size()}};
  if (a.table) {
    static const char* kGen[] = {"H1", "S1", "H2", "S2", "CNOT12"};
    json rows = json::array();
    for (std::size_t i = 0; i < two.elements.size(); ++i) {
      const auto& c = two.elements[i];
      json sym = json::array();
      for (auto r : c.symplectic()) sym.push_back(bits(r, 4));
      json word = json::array();
      for (auto g : two.words[i]) word.push_back(kGen[static_cast<int>(g)]);
      rows.push_back({{"index", i}, {"symplectic", sym}, {"signs", bits(c.signs(), 4)}, {"word", word}});
    }
    j["table"] = rows;
  }
  std::ostringstream s;
  s << one.elements.size() << " one-qubit and " << two.elements.size() << " two-qubit Clifford actions";
  out.emit(j.dump(2), s.str());
  return 0;
}

int run_classify(const Output& out) {
  auto group = enumerate_clifford_group();
  auto cls = classify_cosets(group);
  json cells = json::array();
  for (std::size_t c = 0; c < cls.cells.size(); ++c)
    cells.push_back({{"class", c},
                     {"size", cls.cells[c].size()},
                     {"representative", cls.representatives[c].name},
                     {"representative_index", cls.representative_index[c]}});
  json j{{"classes", cls.cells.size()}, {"class_size", cls.cells.empty() ? 0 : cls.cells[0].size()}, {"cells", cells}};
  std::ostringstream s;
  s << cls.cells.size() << " classes × " << (cls.cells.empty() ? 0 : cls.cells[0].size());
  out.emit(j.dump(2), s.str());
  return 0;
}

int run_gamma(const CliffordsArgs& a, const Output& out) {
  const PairPermutation* found = nullptr;
  auto set = gamma_set(a.set);
  for (const auto& g : set)
    if (g.name == a.name) found = &g.gamma;
  if (!found) throw std::invalid_argument("gate " + a.name + " is not in set " + a.set);
  std::ostringstream o;
  o << "a,b,A,B\n";
  for (unsigned a0 = 0; a0 < 4; ++a0)
    for (unsigned b0 = 0; b0 < 4; ++b0) {
      auto [x, y] = (*found)(PauliSymbol(a0), PauliSymbol(b0));
      o << symbol_name(PauliSymbol(a0)) << ',' << symbol_name(PauliSymbol(b0)) << ',' << symbol_name(x) << ','
        << symbol_name(y) << '\n';
    }
  out.emit(o.str(), "permutation table of " + a.name + " written to output");
  return 0;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string lemma = "all";
  std::size_t trials = 20;
};

int run_verify(const VerifyArgs& a, const Globals& g, const Output& out) {
  auto reports = quantum::run_checks(a.lemma, g.seed, a.trials);
  json arr = json::array();
  bool pass = true;
  std::ostringstream s;
  for (const auto& r : reports) {
    arr.push_back(json{{"lemma", r.lemma}, {"trials", r.trials}, {"max_abs_dev", r.max_abs_dev}, {"pass", r.pass}});
    pass &= r.pass;
    s << "lemma " << r.lemma << ": " << (r.pass ? "pass" : "FAIL") << " (max deviation " << r.max_abs_dev << ")\n";
  }
  json j = reports.size() == 1 ? arr[0] : json{{"lemma", a.lemma}, {"pass", pass}, {"reports", arr}};
  std::string summary = s.str();
  summary.pop_back();
  out.emit(j.dump(2), summary);
  return pass ? 0 : 1;
}

// polarize ------------------------------------------------------------------

struct PolarizeArgs {
  std::string channel = "depolarizing(0.05)";
  unsigned n = 4;
  std::string gates = "S3";
  double delta = 0.01;
  std::size_t reduce = 0;
  double prune = 0;
};

int run_polarize(const PolarizeArgs& a, const Globals& g, const Output& out) {
  auto w = io::parse_channel(a.channel);
  auto tree = make_gate_tree(a.n, io::parse_gate_option(a.gates, g.seed));
  SynthesisOptions opt;
  opt.reduce_to = a.reduce;
  opt.canonical.prune = a.prune;
  opt.threads = g.threads;
  auto rep = polarization_histogram(w, tree, opt, a.delta);
  std::ostringstream s;
  s << "n=" << a.n << " I(W)=" << rep.source_mutual_info << " mean=" << rep.mean_mutual_info
    << " good=" << rep.fraction_good << " middle=" << rep.fraction_middle << " bad=" << rep.fraction_bad
    << (rep.degraded ? " (degraded)" : "");
  out.emit(io::report_csv(rep), s.str());
  return 0;
}

// construct -----------------------------------------------------------------

struct ConstructArgs {
  std::string channel = "depolarizing(0.05)";
  unsigned n = 6;
  std::string gates = "S3";
  double rate = -1;        // fraction of N; negative means 0.5 * I(W)
  std::string method = "report";
  std::size_t reduce = 64;
  std::size_t trials = 10000;
  bool chain = false;
};

int run_construct(const ConstructArgs& a, const Globals& g, const Output& out) {
  auto w = io::parse_channel(a.channel);
  const std::size_t len = std::size_t{1} << a.n;
  double r = a.rate >= 0 ? a.rate : 0.5 * mutual_info(w);
  if (r > 1) throw std::invalid_argument("rate must not exceed 1");
  auto k = static_cast<std::size_t>(std::floor(r * static_cast<double>(len) + 1e-9));
  auto policy = io::parse_gate_option(a.gates, g.seed);
  auto tree = make_gate_tree(a.n, policy);
  std::vector<double> score;
  if (a.method == "report") {
    SynthesisOptions opt;
    opt.reduce_to = a.reduce;
    opt.threads = g.threads;
    score = z_scores(polarization_histogram(w, tree, opt));
  } else if (a.method == "genie") {
    PolarCodeSpec probe{a.n, tree, {}, {}, {}};
    for (std::size_t i = 0; i < len; ++i) probe.info.push_back(i);
    score = genie_channel_error_rates(probe, io::single_pauli(w), a.trials, g.seed, g.threads);
  } else {
    throw std::invalid_argument("method must be report or genie");
  }
  auto sets = select_by_count(score, k);
  std::vector<std::size_t> chain;
  if (a.chain) {
    if (sets.info.size() < sets.frozen.size()) throw std::invalid_argument("chaining needs |I| >= |J|");
    std::vector<std::size_t> order = sets.info;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return score[x] < score[y]; });
    chain.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sets.frozen.size()));
  }
  auto spec = make_code(a.n, tree, sets, chain);
  json gates = io::policy_to_json(policy);
  std::ostringstream s;
  s << "N=" << len << " |I|=" << spec.info.size() << " |J|=" << spec.frozen.size() << " method=" << a.method;
  out.emit(io::code_to_json(spec, gates).dump(2), s.str());
  return 0;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  std::string code;
  std::string channel = "depolarizing(0.05)";
  std::size_t trials = 10000;
  long bound_components = -1;  // -1: automatic, 0: exact
  bool no_bound = false;
};

int run_simulate(const SimulateArgs& a, const Globals& g, const Output& out) {
  auto spec = io::code_from_json(json::parse(io::read_file(a.code)));
  auto w = io::parse_channel(a.channel);
  auto p = io::single_pauli(w);
  std::optional<double> bound;
  if (!a.no_bound) {
    SynthesisOptions opt;
    opt.reduce_to = a.bound_components >= 0 ? static_cast<std::size_t>(a.bound_components) : (spec.n <= 4 ? 0 : 64);
    opt.threads = g.threads;
    bound = union_bound(polarization_histogram(w, spec.tree, opt), spec.info);
  }
  auto r = monte_carlo(spec, p, a.trials, g.seed, g.threads, bound);
  json j{{"trials", r.trials}, {"errors", r.errors}, {"bler", r.bler}, {"stderr", r.stderr}};
  j["bound"] = bound ? json(*bound) : json(nullptr);
  j["within_bound"] = r.within_bound();
  std::ostringstream s;
  s << "BLER " << r.bler << " ± " << r.stderr;
  if (bound) s << " (bound " << *bound << (r.within_bound() ? ", satisfied)" : ", VIOLATED)");
  out.emit(j.dump(2), s.str());
  return r.within_bound() ? 0 : 1;
}

// chain ---------------------------------------------------------------------

struct ChainArgs {
  std::string code;
  std::string channel = "depolarizing(0.05)";
  std::size_t k = 3;
  std::size_t trials = 10000;
  std::size_t sweep = 0;
};

int run_chain(const ChainArgs& a, const Globals& g, const Output& out) {
  auto spec = io::code_from_json(json::parse(io::read_file(a.code)));
  auto len = static_cast<std::int64_t>(spec.length());
  auto ni = static_cast<std::int64_t>(spec.info.size());
  auto nj = static_cast<std::int64_t>(spec.frozen.size());
  std::ostringstream o;
  if (a.sweep > 0) {
    o << "k,R_num,R_den,R,E_num,E_den,E\n";
    for (std::size_t k = 1; k <= a.sweep; ++k) {
      auto c = chain_rates(static_cast<std::int64_t>(k), len, ni, nj);
      o << k << ',' << c.rate.num << ',' << c.rate.den << ',' << io::fmt(c.rate.value()) << ',' << c.entanglement.num
        << ',' << c.entanglement.den << ',' << io::fmt(c.entanglement.value()) << '\n';
    }
    out.emit(o.str(), "rate sweep for k = 1.." + std::to_string(a.sweep));
    return 0;
  }
  auto c = chain_rates(static_cast<std::int64_t>(a.k), len, ni, nj);
  auto r = simulate_chain(spec, io::single_pauli(io::parse_channel(a.channel)), a.k, a.trials, g.seed, g.threads);
  o << "metric,value\n";
  o << "k," << a.k << '\n';
  o << "R," << c.rate.num << '/' << c.rate.den << '\n';
  o << "E," << c.entanglement.num << '/' << c.entanglement.den << '\n';
  o << "trials," << r.trials << '\n';
  o << "chain_bler," << io::fmt(r.chain_bler) << '\n';
  o << "catalyst_ok," << io::fmt(r.catalyst_ok) << '\n';
  for (std::size_t l = 0; l < r.per_block_bler.size(); ++l) o << "block_" << l << "_bler," << io::fmt(r.per_block_bler[l]) << '\n';
  std::ostringstream s;
  s << "k=" << a.k << " R=" << c.rate.num << '/' << c.rate.den << " E=" << c.entanglement.num << '/'
    << c.entanglement.den << " chain BLER " << r.chain_bler << " catalyst ok " << r.catalyst_ok;
  out.emit(o.str(), s.str());
  return 0;
}

// probe-fast ----------------------------------------------------------------

struct ProbeArgs {
  std::string channel = "depolarizing(0.05)";
  std::vector<unsigned> n_list{8, 10, 12};
  std::size_t trajectories = 2000;
  double theta = 0.5;
  std::size_t max_components = 64;
};

int run_probe(const ProbeArgs& a, const Globals& g, const Output& out) {
  auto w = io::parse_channel(a.channel);
  McOptions opt;
  opt.max_components = a.max_components;
  opt.threads = g.threads;
  auto rows = fast_polarization_probe(w, gamma_set("S3"), a.n_list, a.trajectories, g.seed, a.theta, opt);
  std::ostringstream o, s;
  o << "n,rate,bound\n";
  for (const auto& r : rows) {
    o << r.n << ',' << io::fmt(r.rate) << ',' << io::fmt(r.bound) << '\n';
    s << "n=" << r.n << " rate=" << r.rate << " bound=" << r.bound << '\n';
  }
  std::string summary = s.str();
  if (!summary.empty()) summary.pop_back();
  out.emit(o.str(), summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-based polarization of Pauli channels"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads, 0 for all cores");
  app.add_option("--out", g.out, "Machine-readable output file");

  CliffordsArgs ca;
  auto* cliffords = app.add_subcommand("cliffords", "Clifford group enumeration and coset tools");
  cliffords->require_subcommand(1);
  auto* enumerate = cliffords->add_subcommand("enumerate", "Count the Clifford actions");
  enumerate->add_flag("--table", ca.table, "Include the full two-qubit table");
  auto* classify = cliffords->add_subcommand("classify", "Coset classes modulo local Cliffords");
  auto* gamma = cliffords->add_subcommand("gamma", "Permutation table of a named gate");
  gamma->add_option("set", ca.set, "L, R, S3 or all20")->required();
  gamma->add_option("name", ca.name, "Gate name, e.g. L13")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the entropy identities on random channels");
  verify->add_option("--lemma", va.lemma)->check(CLI::IsMember({"2", "3", "4", "5", "6", "7", "swap", "duality", "all"}));
  verify->add_option("--trials", va.trials)->check(CLI::PositiveNumber);

  PolarizeArgs pa;
  auto* polarize = app.add_subcommand("polarize", "Per-index polarization report as CSV");
  polarize->add_option("--channel", pa.channel, "Preset, JSON text or JSON file");
  polarize->add_option("--n", pa.n)->check(CLI::Range(0u, 20u));
  polarize->add_option("--gates", pa.gates, "L, R, S3, all20 or fixed:<name>");
  polarize->add_option("--delta", pa.delta)->check(CLI::Range(0.0, 0.5));
  polarize->add_option("--reduce", pa.reduce, "Degrade each channel to at most this many components, 0 for exact");
  polarize->add_option("--prune", pa.prune, "Drop components lighter than this weight");

  ConstructArgs cna;
  auto* construct = app.add_subcommand("construct", "Choose frozen and info sets");
  construct->add_option("--channel", cna.channel);
  construct->add_option("--n", cna.n)->check(CLI::Range(0u, 20u));
  construct->add_option("--gates", cna.gates);
  construct->add_option("--rate", cna.rate, "Info fraction of N, default 0.5 I(W)");
  construct->add_option("--method", cna.method)->check(CLI::IsMember({"report", "genie"}));
  construct->add_option("--reduce", cna.reduce, "Component budget for the report method, 0 for exact");
  construct->add_option("--trials", cna.trials, "Trials for the genie method")->check(CLI::PositiveNumber);
  construct->add_flag("--chain", cna.chain, "Add a chain subset of the most reliable info indices");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo block error rate");
  simulate->add_option("--code", sa.code)->required();
  simulate->add_option("--channel", sa.channel);
  simulate->add_option("--trials", sa.trials)->check(CLI::PositiveNumber);
  simulate->add_option("--bound-components", sa.bound_components, "Component budget for the bound, 0 for exact");
  simulate->add_flag("--no-bound", sa.no_bound);

  ChainArgs cha;
  auto* chain = app.add_subcommand("chain", "Chained blocks with recycled entanglement");
  chain->add_option("--code", cha.code)->required();
  chain->add_option("--channel", cha.channel);
  chain->add_option("--k", cha.k)->check(CLI::PositiveNumber);
  chain->add_option("--trials", cha.trials)->check(CLI::PositiveNumber);
  chain->add_option("--sweep", cha.sweep, "Only tabulate rates for k = 1..K");

  ProbeArgs pra;
  auto* probe = app.add_subcommand("probe-fast", "Fraction of fast-polarized indices");
  probe->add_option("--channel", pra.channel);
  probe->add_option("--n-list", pra.n_list)->delimiter(',');
  probe->add_option("--trajectories", pra.trajectories)->check(CLI::PositiveNumber);
  probe->add_option("--theta", pra.theta);
  probe->add_option("--max-components", pra.max_components)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  g.threads = resolve_threads(g.threads);
  Output out(g);
  try {
    if (*cliffords) {
      if (*enumerate) return run_enumerate(ca, out);
      if (*classify) return run_classify(out);
      return run_gamma(ca, out);
    }
    if (*verify) return run_verify(va, g, out);
    if (*polarize) return run_polarize(pa, g, out);
    if (*construct) return run_construct(cna, g, out);
    if (*simulate) return run_simulate(sa, g, out);
    if (*chain) return run_chain(cha, g, out);
    if (*probe) return run_probe(pra, g, out);
  } catch (const verification_failure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
