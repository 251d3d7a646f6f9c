#include <doctest.h>

#include <random>

#include "qctl/emit.hpp"
#include "qctl/errors.hpp"
#include "qctl/prenex.hpp"
#include "qctl/qbf.hpp"
#include "qctl/qbf_solver.hpp"
#include "qctl/sat.hpp"

using namespace qctl;
using namespace qctl::qbf;

namespace {

const std::vector<std::string> kNames{"x1", "x2", "x3", "x4", "x5", "x6"};

Qbf random_qbf(std::mt19937_64& rng, int depth, int vars, bool quantify) {
  std::uniform_int_distribution<int> pick(0, 9);
  int r = pick(rng);
  if (depth == 0 || r < 2) {
    int v = std::uniform_int_distribution<int>(0, vars - 1)(rng);
    if (r == 0 && pick(rng) == 0) return constant(pick(rng) < 5);
    return var(kNames[v]);
  }
  auto sub = [&] { return random_qbf(rng, depth - 1, vars, quantify); };
  switch (r) {
    case 2: return neg(sub());
    case 3: return conj(sub(), sub());
    case 4: return disj(sub(), sub());
    case 5: return implies(sub(), sub());
    case 6: return iff(sub(), sub());
    case 7:
    case 8:
      if (quantify) {
        std::string v = kNames[std::uniform_int_distribution<int>(0, vars - 1)(rng)];
        return quantifier(r == 8, {v}, sub());
      }
      return conj(sub(), neg(sub()));
    default: return disj(sub(), neg(sub()));
  }
}

// Closes a formula over all six names with a random alternating prefix.
Qbf close(std::mt19937_64& rng, Qbf body) {
  for (int i = 5; i >= 0; --i) body = quantifier(rng() % 2 == 0, {kNames[i]}, body);
  return body;
}

}  // namespace

TEST_CASE("eval_qbf basics") {
  CHECK(eval_qbf({{"x", true}}, disj(var("x"), neg(var("x")))));
  CHECK(eval_qbf({}, forall({"x"}, disj(var("x"), neg(var("x"))))));
  CHECK(eval_qbf({}, forall({"x"}, exists({"y"}, iff(var("x"), var("y"))))));
  CHECK_FALSE(eval_qbf({}, exists({"x"}, forall({"y"}, iff(var("x"), var("y"))))));
  CHECK_THROWS_AS(eval_qbf({}, var("x")), ValidationError);
}

TEST_CASE("simplify preserves semantics exhaustively") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    Qbf g = random_qbf(rng, 5, 6, true);
    Qbf s = simplify(g);
    for (int m = 0; m < 64; ++m) {
      Valuation v;
      for (int b = 0; b < 6; ++b) v[kNames[b]] = (m >> b) & 1;
      REQUIRE(eval_qbf(v, g) == eval_qbf(v, s));
    }
  }
}

TEST_CASE("free variables and substitution") {
  Qbf g = conj(var("a"), exists({"b"}, disj(var("b"), var("c"))));
  CHECK(free_vars(g) == std::set<std::string>{"a", "c"});
  CHECK_FALSE(is_closed(g));
  Qbf s = simplify(substitute(g, {{"a", true}, {"c", false}}));
  CHECK(s->op() == QOp::True);
}

TEST_CASE("prenex keeps validity and produces a quantifier-free matrix") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 300; ++i) {
    Qbf g = close(rng, random_qbf(rng, 5, 6, true));
    PrenexQbf p = prenex(g);
    CHECK_FALSE(p.matrix->has_quantifier());
    for (std::size_t b = 1; b < p.prefix.size(); ++b) CHECK(p.prefix[b].universal != p.prefix[b - 1].universal);
    Qbf back = p.matrix;
    for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) back = quantifier(it->universal, it->vars, back);
    CHECK(eval_qbf({}, back) == eval_qbf({}, g));
  }
}

TEST_CASE("prenex CNF of a tautology") {
  PrenexCnf cnf = to_prenex_cnf(forall({"x"}, disj(var("x"), neg(var("x")))));
  REQUIRE(!cnf.prefix.empty());
  CHECK(cnf.prefix[0].universal);
  CHECK(cnf.names[0] == "x");
}

TEST_CASE("QDIMACS golden outputs") {
  CHECK(emit_qdimacs(to_prenex_cnf(forall({"x"}, var("x")))) == "p cnf 1 1\na 1 0\n1 0\n");
  CHECK(emit_qdimacs(PrenexCnf{}) == "p cnf 0 0\n");
  CHECK_THROWS_AS(to_prenex_cnf(var("x")), ValidationError);
}

TEST_CASE("prenex CNF preserves validity") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 200; ++i) {
    Qbf g = close(rng, random_qbf(rng, 4, 4, true));
    PrenexCnf cnf = to_prenex_cnf(g);
    // Rebuild the CNF as a formula and expand it.
    auto name = [&](int l) { return var(cnf.names[std::abs(l) - 1]); };
    std::vector<Qbf> clauses;
    for (const auto& c : cnf.clauses) {
      std::vector<Qbf> lits;
      for (int l : c) lits.push_back(l > 0 ? name(l) : neg(name(l)));
      clauses.push_back(disj(lits));
    }
    Qbf back = conj(clauses);
    for (auto it = cnf.prefix.rbegin(); it != cnf.prefix.rend(); ++it) {
      std::vector<std::string> vs;
      for (int v : it->vars) vs.push_back(cnf.names[v - 1]);
      back = quantifier(it->universal, vs, back);
    }
    CHECK(check_validity(back) == eval_qbf({}, g));
  }
}

TEST_CASE("SAT solver") {
  SatSolver s;
  int a = s.new_var(), b = s.new_var();
  s.add_clause({SatSolver::pos(a), SatSolver::pos(b)});
  s.add_clause({SatSolver::neg(a), SatSolver::pos(b)});
  REQUIRE(s.solve());
  CHECK(s.model_value(b));
  CHECK_FALSE(s.solve({SatSolver::neg(b)}));
  CHECK(s.solve());
  s.add_clause({SatSolver::neg(b)});
  CHECK_FALSE(s.solve());
}

TEST_CASE("SAT solver on pigeonhole 5 into 4") {
  SatSolver s;
  int p[5][4];
  for (auto& row : p) {
    for (int& v : row) v = s.new_var();
  }
  for (auto& row : p) {
    std::vector<SatSolver::Lit> c;
    for (int v : row) c.push_back(SatSolver::pos(v));
    s.add_clause(c);
  }
  for (int h = 0; h < 4; ++h) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) s.add_clause({SatSolver::neg(p[i][h]), SatSolver::neg(p[j][h])});
    }
  }
  CHECK_FALSE(s.solve());
}

TEST_CASE("internal solver examples") {
  CHECK(check_validity(forall({"x"}, exists({"y"}, iff(var("x"), var("y"))))));
  CHECK_FALSE(check_validity(exists({"x"}, forall({"y"}, iff(var("x"), var("y"))))));
  CHECK(check_validity(top()));
  CHECK_THROWS_AS(check_validity(var("x")), ValidationError);
}

TEST_CASE("internal solver agrees with expansion") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 500; ++i) {
    Qbf g = close(rng, random_qbf(rng, 6, 6, true));
    bool want = eval_qbf({}, g);
    REQUIRE(check_validity(g) == want);
    CHECK(check_validity(neg(g)) == !want);
  }
}

TEST_CASE("refinement budget raises a scale error") {
  // Every counter-move y = !x rules out a single candidate x.
  std::vector<std::string> xs, ys;
  std::vector<Qbf> parts;
  for (int i = 0; i < 8; ++i) {
    xs.push_back("x" + std::to_string(i));
    ys.push_back("y" + std::to_string(i));
    parts.push_back(iff(var(xs.back()), var(ys.back())));
  }
  Qbf hard = exists(xs, forall(ys, disj(parts)));
  CHECK_THROWS_AS(check_validity(hard, SolverOptions{.max_refinements = 1}), ScaleError);
  SolverStats st;
  CHECK_FALSE(check_validity(hard, {}, &st));
  CHECK(st.refinements == 256);
}
