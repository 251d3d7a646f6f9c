#include "qctl/selftest.hpp"

#include <random>

#include "qctl/oracle.hpp"
#include "qctl/qbf_solver.hpp"
#include "qctl/random_gen.hpp"
#include "qctl/reduce.hpp"

namespace qctl {

namespace {

void record(SelftestResult& r, const SelftestOptions& o, bool agree, const std::string& what) {
  ++r.checks;
  if (agree) return;
  ++r.disagreements;
  r.failures.push_back(what);
  if (o.log) *o.log << "disagreement: " << what << '\n';
}

std::string describe(const KripkeStructure& k, const FormulaPtr& f, const std::string& how) {
  std::string s = how + " on [";
  for (const auto& [a, b] : k.edges()) s += " " + k.name(a) + "->" + k.name(b);
  s += " |";
  for (VertexIndex v = 0; v < k.num_vertices(); ++v) {
    for (const auto& l : k.labels(v)) s += " " + k.name(v) + ":" + l;
  }
  return s + " ] " + to_string(f);
}

}  // namespace

SelftestResult check_oracle_equivalence(const SelftestOptions& o) {
  SelftestResult r;
  std::mt19937_64 rng(o.seed);
  static const Exists1Mode modes[] = {Exists1Mode::Propositional, Exists1Mode::Onehot};
  static const Exists1Mode x_modes[] = {Exists1Mode::Bitvector, Exists1Mode::Onehot, Exists1Mode::Propositional};
  int total = o.jobs + o.jobs / 2;
  for (int i = 0; i < total; ++i) {
    bool prenex = i < o.jobs;
    KripkeStructure k = random_structure(rng);
    RandomFormulaOptions fo;
    fo.prenex = prenex;
    FormulaPtr f = random_formula(rng, fo);
    VertexIndex x = std::uniform_int_distribution<VertexIndex>(0, k.num_vertices() - 1)(rng);
    bool expected = model_check(k, x, f);
    ++r.jobs;

    std::vector<Strategy> strategies{Strategy::UU, Strategy::FP};
    if (prenex) {
      strategies.push_back(Strategy::FPF);
      strategies.push_back(Strategy::X);
    }
    for (Strategy s : strategies) {
      Exists1Mode m = s == Strategy::X ? x_modes[i % 3] : modes[i % 2];
      ReductionJob job{k, x, f, s, std::nullopt, m};
      std::string what = describe(k, f, strategy_name(s) + " at " + k.name(x));
      try {
        bool got = check_validity(reduce(job));
        record(r, o, got == expected, what + " expected " + (expected ? "true" : "false"));
      } catch (const std::exception& e) {
        record(r, o, false, what + " threw " + e.what());
      }
    }
    if (o.log && (i + 1) % 100 == 0) *o.log << "  " << (i + 1) << "/" << total << " jobs\n";
  }
  return r;
}

SelftestResult check_environment_bridge(const SelftestOptions& o) {
  SelftestResult r;
  std::mt19937_64 rng(o.seed ^ 0x5bd1e995);
  for (int i = 0; i < o.jobs; ++i) {
    KripkeStructure k = random_structure(rng);
    RandomFormulaOptions fo;
    fo.atoms = {"a", "b", "p", "q"};
    fo.max_quantifiers = 0;
    FormulaPtr f = random_formula(rng, fo);
    Environment env;
    std::bernoulli_distribution coin(0.5);
    std::vector<std::string> dom = {"p"};
    if (coin(rng)) dom.push_back("q");
    for (const auto& p : dom) {
      auto& set = env[p];
      for (VertexIndex v = 0; v < k.num_vertices(); ++v) {
        if (coin(rng)) set.insert(v);
      }
    }
    VertexIndex x = std::uniform_int_distribution<VertexIndex>(0, k.num_vertices() - 1)(rng);
    ++r.jobs;
    std::set<std::string> props(dom.begin(), dom.end());
    std::string what = describe(k, f, "uu under environment at " + k.name(x));
    try {
      bool expected = eval(k, x, env, f);
      bool got = eval_qbf(valuation_from_env(env, k), reduce_uu(k, x, f, props));
      record(r, o, got == expected, what);
    } catch (const std::exception& e) {
      record(r, o, false, what + " threw " + e.what());
    }
  }
  return r;
}

}  // namespace qctl
