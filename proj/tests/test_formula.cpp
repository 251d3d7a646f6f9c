#include <doctest.h>

#include <random>

#include "common.hpp"
#include "qctl/errors.hpp"
#include "qctl/oracle.hpp"
#include "qctl/random_gen.hpp"

using namespace qctl;
using namespace qctl::fml;
using testing::f;
using testing::k1;

TEST_CASE("parser builds the expected trees") {
  CHECK(equal(f("E[a U b]"), eu(atom("a"), atom("b"))));
  CHECK(equal(f("exists p. (EX p & AX !p)"), exists("p", conj(ex(atom("p")), ax(neg(atom("p")))))));
  CHECK(equal(f("E>=2 X a"), at_least_x(2, atom("a"))));
  CHECK(equal(f("A[a W b]"), aw(atom("a"), atom("b"))));
  CHECK(equal(f("forall1 p. AG p"), forall1("p", ag(atom("p")))));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(f("E[a U"), ParseError);
  CHECK_THROWS_AS(f("a &"), ParseError);
  try {
    f("a & & b");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.column() > 0);
  }
}

TEST_CASE("printing round-trips") {
  std::mt19937_64 rng(11);
  RandomFormulaOptions o;
  o.allow_counting = true;
  for (int i = 0; i < 200; ++i) {
    FormulaPtr g = random_formula(rng, o);
    CHECK(equal(parse_formula(to_string(g)), g));
  }
}

TEST_CASE("size and temporal height") {
  CHECK(formula_size(atom("q")) == 1);
  CHECK(temporal_height(atom("q")) == 0);
  CHECK(formula_size(ex(atom("q"))) == 2);
  CHECK(temporal_height(ex(atom("q"))) == 1);
  FormulaPtr u = eu(ex(atom("a")), atom("b"));
  CHECK(formula_size(u) == 4);
  CHECK(temporal_height(u) == 2);
}

TEST_CASE("temporal depth of a subformula") {
  CHECK(temporal_depth(ex(atom("a")), {0}) == 1);
  CHECK(temporal_depth(conj(atom("a"), atom("b")), {0}) == 0);
  CHECK(temporal_depth(ag(ex(atom("a"))), {0, 0}) == 2);
  CHECK_THROWS_AS(temporal_depth(atom("a"), {0}), std::out_of_range);
}

TEST_CASE("rename_apart") {
  FormulaPtr g = rename_apart(f("(exists p. p) & (exists p. !p)"));
  REQUIRE(g->op() == Op::And);
  CHECK(g->child(0)->name() != g->child(1)->name());
  FormulaPtr h = rename_apart(f("exists a. a"), {"a"});
  CHECK(h->name() != "a");
  CHECK(h->child(0)->name() == h->name());
}

TEST_CASE("to_nnf pushes negation to atoms") {
  CHECK(equal(to_nnf(f("!EX a")), ax(neg(atom("a")))));
  CHECK(equal(to_nnf(f("!E[a U b]")), aw(neg(atom("b")), conj(neg(atom("b")), neg(atom("a"))))));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr g = to_nnf(random_formula(rng));
    for (const auto& s : subformulas(g)) {
      if (s.formula->op() == Op::Not) CHECK(s.formula->child(0)->op() == Op::Atom);
    }
  }
}

TEST_CASE("counting macro expansions") {
  FormulaPtr u = expand_derived(unique_x(atom("a")));
  CHECK(contains_temporal(u));
  CHECK(contains_quantifier(u));
  FormulaPtr one = expand_derived(at_least_x(1, atom("a")));
  REQUIRE(one->op() == Op::Exists);
  CHECK(equal(one->child(0), conj(ex(atom(one->name())), ax(implies(atom(one->name()), atom("a"))))));
  // unique F on K1 at v1: only v1 carries a among the reachable states.
  CHECK(model_check(k1(), 0, expand_derived(unique_f(atom("a")))));
  CHECK_FALSE(model_check(k1(), 0, expand_derived(unique_f(top()))));
}

TEST_CASE("E>=kX expansion grows quadratically") {
  std::size_t prev = 0;
  for (int k = 1; k <= 4; ++k) {
    std::size_t s = formula_size(expand_derived(at_least_x(k, atom("a"))));
    CHECK(s <= 12u * static_cast<std::size_t>(k * k) + 12u);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("rewrites preserve the oracle verdict") {
  std::mt19937_64 rng(17);
  RandomFormulaOptions o;
  o.allow_counting = true;
  for (int i = 0; i < 150; ++i) {
    KripkeStructure k = random_structure(rng, 2, 3);
    FormulaPtr g = random_formula(rng, o);
    for (VertexIndex x = 0; x < k.num_vertices(); ++x) {
      bool want = model_check(k, x, g);
      CHECK(model_check(k, x, rename_apart(g)) == want);
      CHECK(model_check(k, x, expand_derived(g)) == want);
      CHECK(model_check(k, x, to_nnf(g)) == want);
      CHECK(model_check(k, x, to_core_ctl(expand_derived(g))) == want);
    }
  }
}
