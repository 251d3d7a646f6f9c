// Acceptance run: one PASS / FAIL / SKIP line per criterion, nonzero exit on
// any FAIL. Criterion 4 needs QCTLMC_SOLVER (an SMT-LIB solver command).

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qctl/benchgen.hpp"
#include "qctl/external_solver.hpp"
#include "qctl/pipeline.hpp"
#include "qctl/qbf_solver.hpp"
#include "qctl/random_gen.hpp"
#include "qctl/reduce.hpp"
#include "qctl/selftest.hpp"
#include "qctl/transform.hpp"

using namespace qctl;

namespace {

// Constants for the size claims of criterion 6.
constexpr double kFpcFactor = 12;  // |fpc(F)| <= c |F|
constexpr double kFpfFactor = 1;   // FPF dag size <= c' |V| (|V|+|E|) |F|

enum class Outcome { Pass, Fail, Skip };

struct Line {
  Outcome outcome = Outcome::Pass;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      outcome = Outcome::Fail;
      detail << " [FAILED: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_time(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << s << "s";
  return o.str();
}

std::string verdict_word(bool holds) { return holds ? "sat" : "unsat"; }

// Some chain of maximal temporal height ends in an until over atoms.
bool until_bottomed(const FormulaPtr& g) {
  std::size_t h = temporal_height(g);
  for (const auto& s : subformulas(g)) {
    Op o = s.formula->op();
    if (o != Op::EU && o != Op::AU && o != Op::EF && o != Op::AF) continue;
    if (temporal_height(s.formula) == 1 && temporal_depth(g, s.path) + 1 == h) return true;
  }
  return false;
}

struct Job {
  std::string name;
  Benchmark bench;
  FormulaPtr formula;
  Strategy strategy;
  Exists1Mode exists1 = Exists1Mode::Default;
  bool expected = false;
};

CheckConfig config_for(const Job& j, const std::string& solver) {
  CheckConfig c{.structure = j.bench.structure, .initial = j.bench.initial, .formula = j.formula};
  c.strategy = j.strategy;
  c.exists1 = j.exists1;
  c.solver = solver;
  return c;
}

// Runs a job and appends "name=verdict (time)" to the line.
void run_job(Line& line, const Job& j, const std::string& solver) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    RunReport r = run_check(config_for(j, solver));
    bool ok = r.verdict == (j.expected ? Verdict::Holds : Verdict::Fails);
    line.detail << " " << j.name << "=" << verdict_name(r.verdict) << "(" << fmt_time(seconds_since(t0)) << ")";
    line.require(ok, j.name + " expected " + verdict_word(j.expected));
  } catch (const std::exception& e) {
    line.detail << " " << j.name << "=error";
    line.require(false, j.name + ": " + e.what());
  }
}

Line criterion1() {
  Line l;
  SelftestResult r = check_oracle_equivalence({.jobs = 500, .seed = 2024});
  l.detail << r.jobs << " jobs, " << r.checks << " strategy checks, " << r.disagreements << " disagreements";
  for (const auto& f : r.failures) l.detail << "\n    " << f;
  l.require(r.jobs >= 500 && r.ok(), "oracle disagreement");
  return l;
}

Line criterion2() {
  Line l;
  SelftestResult r = check_environment_bridge({.jobs = 250, .seed = 2025});
  l.detail << r.checks << " cases, " << r.disagreements << " disagreements";
  for (const auto& f : r.failures) l.detail << "\n    " << f;
  l.require(r.checks >= 200 && r.ok(), "bridge disagreement");
  return l;
}

Line criterion3() {
  Line l;
  std::vector<Job> jobs = {
      {"kconn(3,2)+Psi2", gen_kconn(3, 2), kconn_formula(KconnVariant::Psi, 2), Strategy::FP, {}, true},
      {"kconn(4,3)+Psi4/UU", gen_kconn(4, 3), kconn_formula(KconnVariant::Psi, 4), Strategy::UU, {}, false},
      {"nim[2,2]", gen_nim({2, 2}, 1), nim_formula(1), Strategy::UU, {}, false},
      {"res(10,5)+(2,8)/X", gen_resources(10, 5), resources_formula(2, 8), Strategy::X, Exists1Mode::Bitvector, true},
  };
  for (const Job& j : jobs) run_job(l, j, "internal");
  // The UU translation of Psi4 has no quantifiers.
  Qbf q = reduce_uu(jobs[1].bench.structure, jobs[1].bench.initial, jobs[1].formula);
  l.require(!q->has_quantifier(), "UU translation of Psi4 is quantifier-free");
  return l;
}

Line criterion4() {
  Line l;
  auto cmd = default_solver_command();
  if (!cmd) {
    l.outcome = Outcome::Skip;
    l.detail << "no external solver configured (set " << kSolverEnv << ")";
    return l;
  }
  std::string solver = "exec:" + *cmd;
  l.detail << "solver " << *cmd << ":";
  Benchmark k43 = gen_kconn(4, 3), res = gen_resources(10, 5);
  std::vector<Job> jobs = {
      {"kconn(4,3)+Phi4[negated]", k43, kconn_formula(KconnVariant::Phi, 4, PhiReading::Negated), Strategy::X, {}, false},
      {"kconn(5,4)+Psi5", gen_kconn(5, 4), kconn_formula(KconnVariant::Psi, 5), Strategy::FP, Exists1Mode::Onehot, false},
      {"nim[3,2]", gen_nim({3, 2}, 1), nim_formula(1), Strategy::X, {}, true},
      {"nim[4,5,2]", gen_nim({4, 5, 2}, 1), nim_formula(1), Strategy::UU, {}, true},
      {"res(10,5)+(4,4)", res, resources_formula(4, 4), Strategy::X, Exists1Mode::Bitvector, false},
      {"res(10,5)+(4,6)", res, resources_formula(4, 6), Strategy::X, Exists1Mode::Bitvector, true},
  };
  for (const Job& j : jobs) run_job(l, j, solver);

  // Informational: with un-negated markers the formula does not force disjoint paths.
  Job printed{"", k43, kconn_formula(KconnVariant::Phi, 4, PhiReading::AsPrinted), Strategy::X, {}, false};
  try {
    RunReport r = run_check(config_for(printed, solver));
    l.detail << "\n    info: kconn(4,3)+Phi4[as-printed]=" << verdict_name(r.verdict);
  } catch (const std::exception& e) {
    l.detail << "\n    info: kconn(4,3)+Phi4[as-printed] error: " << e.what();
  }
  return l;
}

Line criterion5() {
  Line l;
  auto expect = [&](const std::string& name, const Benchmark& b, std::size_t n) {
    std::size_t got = b.structure.num_vertices();
    l.detail << " " << name << "=" << got;
    l.require(got == n, name + " expected " + std::to_string(n));
  };
  expect("kconn(3)", gen_kconn(3, 2), 18);
  expect("kconn(4)", gen_kconn(4, 3), 32);
  expect("kconn(5)", gen_kconn(5, 4), 50);
  expect("nim[2,2]", gen_nim({2, 2}, 1), 16);
  expect("nim[3,2]", gen_nim({3, 2}, 1), 31);
  expect("nim[4,5,2]", gen_nim({4, 5, 2}, 1), 280);
  expect("nim[3,4,5]", gen_nim({3, 4, 5}, 1), 328);
  expect("nim[2,3,4,4]", gen_nim({2, 3, 4, 4}, 1), 398);
  expect("res(10,5)", gen_resources(10, 5), 50);
  expect("res(10,7)", gen_resources(10, 7), 70);
  expect("res(10,10)", gen_resources(10, 10), 100);
  l.detail << " (nim: sorted heaps, empty heaps dropped, one intermediary per distinct move target)";
  return l;
}

std::vector<Job> benchmark_jobs() {
  Benchmark k32 = gen_kconn(3, 2), k43 = gen_kconn(4, 3), res = gen_resources(10, 5);
  return {
      {"kconn(3,2)+Psi2", k32, kconn_formula(KconnVariant::Psi, 2), Strategy::FP},
      {"kconn(4,3)+Psi4", k43, kconn_formula(KconnVariant::Psi, 4), Strategy::FP},
      {"kconn(4,3)+Phi4[as-printed]", k43, kconn_formula(KconnVariant::Phi, 4, PhiReading::AsPrinted), Strategy::FP},
      {"kconn(4,3)+Phi4[negated]", k43, kconn_formula(KconnVariant::Phi, 4, PhiReading::Negated), Strategy::FP},
      {"kconn(5,4)+Psi5", gen_kconn(5, 4), kconn_formula(KconnVariant::Psi, 5), Strategy::FP},
      {"nim[2,2]", gen_nim({2, 2}, 1), nim_formula(1), Strategy::FP},
      {"nim[3,2]", gen_nim({3, 2}, 1), nim_formula(1), Strategy::FP},
      {"nim[4,5,2]", gen_nim({4, 5, 2}, 1), nim_formula(1), Strategy::FP},
      {"res(10,5)+(2,8)", res, resources_formula(2, 8), Strategy::FP},
      {"res(10,5)+(4,4)", res, resources_formula(4, 4), Strategy::FP},
      {"res(10,5)+(4,6)", res, resources_formula(4, 6), Strategy::FP},
  };
}

Line criterion6() {
  Line l;
  // Height grows by exactly one when some chain of maximal height ends in
  // an until; otherwise it may stay the same, never more than +1.
  std::mt19937_64 rng(606);
  int equal_cases = 0, other_cases = 0, strict_other = 0;
  while (equal_cases < 100) {
    FormulaPtr g = random_formula(rng);
    std::size_t h = temporal_height(g), h2 = temporal_height(fpc(g));
    l.require(h2 <= h + 1, "HT(fpc) <= HT+1 for " + to_string(g));
    if (until_bottomed(g)) {
      ++equal_cases;
      l.require(h2 == h + 1, "HT(fpc) = HT+1 for " + to_string(g));
    } else {
      ++other_cases;
      if (h2 < h + 1) ++strict_other;
    }
  }
  l.detail << "HT(fpc)=HT+1 on " << equal_cases << " until-terminated formulas (" << strict_other << " of "
           << other_cases << " others stay below +1);";

  RandomFormulaOptions po;
  po.prenex = true;
  std::size_t max_flat = 0;
  for (int i = 0; i < 300; ++i) {
    FormulaPtr g = random_formula(rng, po);
    for (const FlatFormula& flat : {flatten_equiv(g), flatten_nnf(g)}) {
      max_flat = std::max(max_flat, temporal_height(to_formula(flat)));
    }
  }

  double fpc_ratio = 0, fpf_ratio = 0;
  for (const Job& j : benchmark_jobs()) {
    const KripkeStructure& k = j.bench.structure;
    double fs = static_cast<double>(formula_size(j.formula));
    fpc_ratio = std::max(fpc_ratio, formula_size(fpc(j.formula)) / fs);
    for (const FlatFormula& flat : {flatten_equiv(j.formula), flatten_nnf(j.formula)}) {
      max_flat = std::max(max_flat, temporal_height(to_formula(flat)));
    }
    Qbf q = reduce_fpf(k, j.bench.initial, j.formula, Exists1Mode::Onehot);
    double denom = static_cast<double>(k.num_vertices()) * static_cast<double>(k.num_vertices() + k.num_edges()) * fs;
    fpf_ratio = std::max(fpf_ratio, dag_size(q) / denom);
  }
  l.require(max_flat <= 2, "flatten height <= 2");
  l.require(fpc_ratio <= kFpcFactor, "fpc size factor");
  l.require(fpf_ratio <= kFpfFactor, "FPF size factor");
  l.detail << " flatten height max " << max_flat << "; |fpc|/|F| max " << std::setprecision(3) << fpc_ratio
           << " <= c=" << kFpcFactor << "; FPF size/(|V|(|V|+|E|)|F|) max " << fpf_ratio << " <= c'=" << kFpfFactor;
  return l;
}

Line criterion7() {
  Line l;
  std::mt19937_64 rng(707);
  RandomFormulaOptions qf;
  qf.max_quantifiers = 0;
  RandomFormulaOptions po;
  po.prenex = true;
  int uu_ok = 0, x_ok = 0;
  for (int i = 0; i < 200; ++i) {
    KripkeStructure k = random_structure(rng, 2, 5);
    if (!reduce_uu(k, 0, random_formula(rng, qf))->has_quantifier()) ++uu_ok;
    if (is_prenex_qbf(reduce_x(k, 0, random_formula(rng, po)))) ++x_ok;
  }
  for (const Job& j : benchmark_jobs()) {
    l.require(is_prenex_qbf(reduce_x(j.bench.structure, j.bench.initial, j.formula)), "X prenex on " + j.name);
  }
  l.require(uu_ok == 200, "UU quantifier-free");
  l.require(x_ok == 200, "X prenex");
  l.detail << "UU quantifier-free " << uu_ok << "/200; X prenex " << x_ok << "/200 + benchmarks;";

  for (const std::vector<int>& heaps : {std::vector<int>{2, 2}, std::vector<int>{3, 2}}) {
    int n = 0;
    for (int h : heaps) n += h;
    std::size_t bound = static_cast<std::size_t>(std::ceil(1.5 * n));
    Benchmark b = gen_nim(heaps, 1);
    bool bounded = check_validity(reduce_x(b.structure, b.initial, nim_formula(1), bound));
    bool full = check_validity(reduce_x(b.structure, b.initial, nim_formula(1)));
    std::string name = "nim[" + std::to_string(heaps[0]) + "," + std::to_string(heaps[1]) + "]";
    l.detail << " " << name << " bound " << bound << ": " << verdict_word(bounded) << " vs unbounded "
             << verdict_word(full) << ";";
    l.require(bounded == full, name + " bounded verdict");
  }
  return l;
}

Line criterion8() {
  Line l;
  int negated_divergent = 0;
  for (int m = 1; m <= 2; ++m) {
    Benchmark b = gen_kconn(3, m);
    for (int k = 1; k <= 3; ++k) {
      auto holds = [&](const FormulaPtr& g, Strategy s, Exists1Mode e = Exists1Mode::Default) {
        return check_validity(reduce(ReductionJob{b.structure, b.initial, g, s, std::nullopt, e}));
      };
      bool psi = holds(kconn_formula(KconnVariant::Psi, k), Strategy::FP, Exists1Mode::Onehot);
      bool neg = holds(kconn_formula(KconnVariant::Phi, k, PhiReading::Negated), Strategy::FP);
      bool printed = holds(kconn_formula(KconnVariant::Phi, k, PhiReading::AsPrinted), Strategy::FP);
      l.detail << " (m=" << m << ",k=" << k << ") Psi=" << verdict_word(psi) << " Phi[negated]=" << verdict_word(neg)
               << (neg == psi ? "" : "!") << " Phi[as-printed]=" << verdict_word(printed)
               << (printed == psi ? "" : "!") << ";";
      if (neg != psi) ++negated_divergent;
    }
  }
  l.detail << " ('!' marks divergence from Psi; as-printed divergence is recorded, not asserted)";
  l.require(negated_divergent == 0, "negated reading agrees with Psi");
  return l;
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Line()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
  };
  bool failed = false;
  for (auto& [n, run] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
      l = run();
    } catch (const std::exception& e) {
      l.outcome = Outcome::Fail;
      l.detail << "exception: " << e.what();
    }
    const char* tag = l.outcome == Outcome::Pass ? "PASS" : l.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    std::cout << "criterion " << n << ": " << tag << " (" << fmt_time(seconds_since(t0)) << ") " << l.detail.str()
              << std::endl;
    failed = failed || l.outcome == Outcome::Fail;
  }
  return failed ? 1 : 0;
}
