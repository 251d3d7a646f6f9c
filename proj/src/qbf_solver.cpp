#include "qctl/qbf_solver.hpp"

#include <optional>
#include <unordered_map>

#include "qctl/errors.hpp"
#include "qctl/prenex.hpp"
#include "qctl/sat.hpp"

namespace qctl {

namespace {

SatSolver::Lit to_lit(int dimacs) {
  return dimacs > 0 ? SatSolver::pos(dimacs - 1) : SatSolver::neg(-dimacs - 1);
}

// SAT solver plus a Tseitin encoder writing into it.
struct Encoder {
  SatSolver sat;
  Tseitin ts{[this] { return sat.new_var() + 1; },
             [this](std::vector<int> c) {
               std::vector<SatSolver::Lit> lits;
               lits.reserve(c.size());
               for (int d : c) lits.push_back(to_lit(d));
               sat.add_clause(std::move(lits));
             }};

  bool value(int v) { return sat.model_value(v - 1); }
};

using Assignment = std::map<std::string, bool>;

Qbf rebuild(const Qbf& f, std::vector<Qbf> kids) {
  switch (f->op()) {
    case QOp::Not: return qbf::neg(kids[0]);
    case QOp::And: return qbf::conj(std::move(kids));
    case QOp::Or: return qbf::disj(std::move(kids));
    case QOp::Implies: return qbf::implies(kids[0], kids[1]);
    case QOp::Iff: return qbf::iff(kids[0], kids[1]);
    case QOp::Exists: return qbf::exists(f->vars(), kids[0]);
    case QOp::Forall: return qbf::forall(f->vars(), kids[0]);
    default: return f;
  }
}

// Renames free occurrences.
class Renamer {
 public:
  explicit Renamer(std::map<std::string, std::string> names) : names_(std::move(names)) {}

  Qbf operator()(const Qbf& f) {
    if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    Qbf out;
    if (f->op() == QOp::Var) {
      auto it = names_.find(f->name());
      out = it == names_.end() ? f : qbf::var(it->second);
    } else if (f->op() == QOp::Exists || f->op() == QOp::Forall) {
      auto inner = names_;
      for (const auto& v : f->vars()) inner.erase(v);
      out = inner.size() == names_.size() ? rebuild(f, {(*this)(f->kid(0))}) : rebuild(f, {Renamer(inner)(f->kid(0))});
    } else {
      std::vector<Qbf> kids;
      for (const auto& k : f->kids()) kids.push_back((*this)(k));
      out = kids.empty() ? f : rebuild(f, std::move(kids));
    }
    memo_.emplace(f.get(), out);
    return out;
  }

 private:
  std::map<std::string, std::string> names_;
  std::unordered_map<const QbfNode*, Qbf> memo_;
};

std::size_t block_count(const PrenexQbf& p) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.prefix.size(); ++i) {
    if (p.prefix[i].vars.empty()) continue;
    if (n == 0 || i == 0 || p.prefix[i].universal != p.prefix[i - 1].universal) ++n;
  }
  return n;
}

class Solver {
 public:
  Solver(const SolverOptions& opts, SolverStats& stats) : opts_(opts), stats_(stats) {}

  bool valid(const Qbf& f) { return exists({}, f).has_value(); }

 private:
  // Witness for xs making `body` true, where xs are the only free variables.
  std::optional<Assignment> exists(const std::vector<std::string>& xs, const Qbf& input) {
    Qbf body = simplify(input);
    if (body->op() == QOp::False) return std::nullopt;
    Qbf key = qbf::exists(xs, body);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ++stats_.levels;

    std::optional<Assignment> r;
    if (body->op() == QOp::True) {
      r = Assignment{};
      for (const auto& x : xs) (*r)[x] = false;
    } else if (!body->has_quantifier()) {
      r = sat(xs, body);
    } else {
      PrenexQbf p = prenex(key);
      std::size_t blocks = block_count(p);
      if (blocks <= 2 && !p.prefix.empty() && !p.prefix[0].universal) {
        std::vector<std::string> ys = blocks == 2 ? p.prefix.back().vars : std::vector<std::string>{};
        r = exists_forall(p.prefix[0].vars, ys, p.matrix);
      } else {
        r = abstract(xs, body);
      }
      if (r) {
        Assignment only;
        for (const auto& x : xs) only[x] = r->count(x) ? r->at(x) : false;
        r = std::move(only);
      }
    }
    memo_.emplace(key, r);
    return r;
  }

  std::optional<Assignment> sat(const std::vector<std::string>& xs, const Qbf& m) {
    ++stats_.sat_calls;
    Encoder e;
    std::vector<int> vs;
    for (const auto& x : xs) vs.push_back(e.ts.var_for(x));
    e.ts.assert_formula(m);
    if (!e.sat.solve()) return std::nullopt;
    Assignment a;
    for (std::size_t i = 0; i < xs.size(); ++i) a[xs[i]] = e.value(vs[i]);
    return a;
  }

  void refined() {
    ++stats_.refinements;
    if (stats_.refinements > opts_.max_refinements) throw ScaleError("internal scale exceeded");
  }

  // exists X forall Y . m, m quantifier-free
  std::optional<Assignment> exists_forall(const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                                          const Qbf& m) {
    if (ys.empty()) return sat(xs, m);
    Encoder abstraction;
    std::vector<int> ax;
    for (const auto& x : xs) ax.push_back(abstraction.ts.var_for(x));

    Encoder checker;
    std::vector<int> cx, cy;
    for (const auto& x : xs) cx.push_back(checker.ts.var_for(x));
    for (const auto& y : ys) cy.push_back(checker.ts.var_for(y));
    checker.ts.assert_formula(qbf::neg(m));

    for (;;) {
      ++stats_.sat_calls;
      if (!abstraction.sat.solve()) return std::nullopt;
      Assignment mu;
      std::vector<SatSolver::Lit> assumptions;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        bool val = abstraction.value(ax[i]);
        mu[xs[i]] = val;
        assumptions.push_back(val ? SatSolver::pos(cx[i] - 1) : SatSolver::neg(cx[i] - 1));
      }
      ++stats_.sat_calls;
      if (!checker.sat.solve(assumptions)) return mu;
      Assignment sigma;
      for (std::size_t i = 0; i < ys.size(); ++i) sigma[ys[i]] = checker.value(cy[i]);
      refined();
      abstraction.ts.assert_formula(simplify(substitute(m, sigma)));
    }
  }

  // Quantified subformulas whose truth value is guessed by the abstraction.
  struct Guess {
    Qbf formula;
    std::string var;
    std::set<std::string> free;
  };

  struct Abstraction {
    Encoder enc;
    std::vector<Guess> guesses;
    std::unordered_map<Qbf, std::size_t, QbfHash, QbfEq> index;
  };

  // Replaces quantified subformulas by guess variables. Existentials in
  // positive and universals in negative position are opened with fresh
  // copies of their variables instead.
  Qbf skeleton(Abstraction& a, const Qbf& f, int polarity) {
    switch (f->op()) {
      case QOp::Var:
      case QOp::True:
      case QOp::False: return f;
      case QOp::Not: return qbf::neg(skeleton(a, f->kid(0), -polarity));
      case QOp::And:
      case QOp::Or: {
        std::vector<Qbf> kids;
        for (const auto& k : f->kids()) kids.push_back(skeleton(a, k, polarity));
        return rebuild(f, std::move(kids));
      }
      case QOp::Implies: return qbf::implies(skeleton(a, f->kid(0), -polarity), skeleton(a, f->kid(1), polarity));
      case QOp::Iff: return qbf::iff(skeleton(a, f->kid(0), 0), skeleton(a, f->kid(1), 0));
      case QOp::Exists:
      case QOp::Forall: {
        bool open = (f->op() == QOp::Exists && polarity > 0) || (f->op() == QOp::Forall && polarity < 0);
        if (open) {
          std::map<std::string, std::string> names;
          std::size_t id = ++copies_;
          for (const auto& v : f->vars()) names.emplace(v, v + "^" + std::to_string(id));
          return skeleton(a, Renamer(std::move(names))(f->kid(0)), polarity);
        }
        auto [it, fresh] = a.index.emplace(f, a.guesses.size());
        if (fresh) {
          a.guesses.push_back({f, "?q" + std::to_string(++copies_), free_vars(f)});
          a.enc.ts.var_for(a.guesses.back().var);
          for (const auto& v : a.guesses.back().free) a.enc.ts.var_for(v);
        }
        return qbf::var(a.guesses[it->second].var);
      }
    }
    return f;
  }

  // exists xs . body, with quantifiers nested inside body.
  std::optional<Assignment> abstract(const std::vector<std::string>& xs, const Qbf& body) {
    Abstraction a;
    std::vector<int> xv;
    for (const auto& x : xs) xv.push_back(a.enc.ts.var_for(x));
    a.enc.ts.assert_formula(skeleton(a, body, 1));

    for (;;) {
      ++stats_.sat_calls;
      if (!a.enc.sat.solve()) return std::nullopt;
      Assignment mu;
      for (std::size_t i = 0; i < xs.size(); ++i) mu[xs[i]] = a.enc.value(xv[i]);
      bool consistent = true;
      for (std::size_t g = 0, n = a.guesses.size(); g < n; ++g) {
        Guess guess = a.guesses[g];
        Assignment local;
        for (const auto& v : guess.free) local[v] = a.enc.value(a.enc.ts.var_for(v));
        bool guessed = a.enc.value(a.enc.ts.var_for(guess.var));

        const Qbf& q = guess.formula;
        bool universal = q->op() == QOp::Forall;
        Qbf inner = substitute(q->kid(0), local);
        std::optional<Assignment> move = exists(q->vars(), universal ? qbf::neg(inner) : inner);
        bool truth = universal ? !move.has_value() : move.has_value();
        if (truth == guessed) continue;

        consistent = false;
        refined();
        Qbf guess_var = qbf::var(guess.var);
        if (move) {
          // The move refutes (forall) or establishes (exists) the subformula
          // for every value of its free variables, as far as the
          // instantiated body goes.
          Qbf inst = substitute(q->kid(0), *move);
          if (universal) a.enc.ts.assert_formula(qbf::implies(guess_var, skeleton(a, inst, 1)));
          else a.enc.ts.assert_formula(qbf::implies(skeleton(a, inst, -1), guess_var));
        } else {
          std::vector<Qbf> here;
          for (const auto& [v, b] : local) here.push_back(b ? qbf::var(v) : qbf::neg(qbf::var(v)));
          a.enc.ts.assert_formula(qbf::implies(qbf::conj(here), truth ? guess_var : qbf::neg(guess_var)));
        }
      }
      if (consistent) return mu;
    }
  }

  const SolverOptions& opts_;
  SolverStats& stats_;
  std::size_t copies_ = 0;
  std::unordered_map<Qbf, std::optional<Assignment>, QbfHash, QbfEq> memo_;
};

}  // namespace

bool check_validity(const Qbf& f, const SolverOptions& opts, SolverStats* stats) {
  if (!is_closed(f)) throw ValidationError("formula has free variables");
  SolverStats local;
  Solver s(opts, stats ? *stats : local);
  return s.valid(f);
}

}  // namespace qctl
