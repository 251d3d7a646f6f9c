#include <doctest.h>

#include <random>

#include "common.hpp"
#include "qctl/benchgen.hpp"
#include "qctl/errors.hpp"
#include "qctl/random_gen.hpp"

using namespace qctl;
using testing::k1;

TEST_CASE("parse K1") {
  KripkeStructure k = k1();
  CHECK(k.num_vertices() == 2);
  CHECK(k.num_edges() == 2);
  CHECK(k.has_label(0, "a"));
  CHECK(k.has_label(1, "b"));
  CHECK_FALSE(k.has_label(0, "b"));
}

TEST_CASE("totality is enforced and names the dead end") {
  try {
    parse_kripke("states: v1 v2\nedges: v1->v2\nlabel v1: a\nlabel v2: b\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("v2") != std::string::npos);
  }
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_kripke("states: v1\nedges: v1->v9\n"), Error);
  CHECK_THROWS_AS(parse_kripke("states: v1 v1\nedges: v1->v1\n"), Error);
  CHECK_THROWS_AS(parse_kripke("nonsense here\n"), ParseError);
}

TEST_CASE("successors and reachable on K1") {
  KripkeStructure k = k1();
  CHECK(successors(k, "v1") == std::vector<VertexIndex>{1});
  CHECK(successors(k, "v2") == std::vector<VertexIndex>{1});
  CHECK(reachable(k, "v2") == std::vector<VertexIndex>{1});
  CHECK(reachable(k, "v1") == std::vector<VertexIndex>{0, 1});
  CHECK_THROWS_AS(successors(k, "nope"), ValidationError);
}

TEST_CASE("kconn entry corner reaches its first row and column directly") {
  Benchmark b = gen_kconn(3, 2);
  const auto& k = b.structure;
  CHECK(k.name(b.initial) == "q_1_1");
  auto succ = successors(k, "q_1_1");
  std::set<std::string> names;
  for (auto v : succ) names.insert(k.name(v));
  CHECK(names == std::set<std::string>{"q_1_2", "q_1_3", "q_2_1", "q_3_1"});
}

TEST_CASE("resources torus is strongly connected") {
  Benchmark b = gen_resources(10, 5);
  for (VertexIndex v = 0; v < b.structure.num_vertices(); ++v) CHECK(b.structure.reachable(v).size() == 50);
}

TEST_CASE("p-equivalence") {
  KripkeStructure a = k1();
  CHECK(p_equivalent(a, a, {"a", "b"}));
  KripkeStructure c = parse_kripke("states: v1 v2\nedges: v1->v2 v2->v2\nlabel v1: a c\nlabel v2: b\n");
  CHECK(p_equivalent(a, c, {"a", "b"}));
  KripkeStructure d = parse_kripke("states: v1 v2\nedges: v1->v2 v2->v2\nlabel v2: b\n");
  CHECK_FALSE(p_equivalent(a, d, {"a"}));
}

TEST_CASE("serialize then parse is the identity on generated structures") {
  for (const Benchmark& b : {gen_kconn(3, 2), gen_nim({3, 2}, 1), gen_resources(3, 4)}) {
    CHECK(parse_kripke(serialize_kripke(b.structure)) == b.structure);
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    KripkeStructure k = random_structure(rng);
    CHECK(parse_kripke(serialize_kripke(k)) == k);
  }
}

TEST_CASE("successor sets are non-empty and reachability is idempotent") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    KripkeStructure k = random_structure(rng, 2, 6);
    for (VertexIndex v = 0; v < k.num_vertices(); ++v) {
      CHECK_FALSE(k.successors(v).empty());
      for (VertexIndex s : k.successors(v)) CHECK(s < k.num_vertices());
      auto r = k.reachable(v);
      std::set<VertexIndex> closure(r.begin(), r.end());
      for (VertexIndex w : r) {
        for (VertexIndex u : k.reachable(w)) CHECK(closure.count(u) == 1);
      }
    }
  }
}

TEST_CASE("reachability cache agrees with direct computation") {
  Benchmark b = gen_kconn(3, 1);
  ReachabilityCache cache(b.structure);
  for (VertexIndex v = 0; v < b.structure.num_vertices(); ++v) CHECK(cache(v) == b.structure.reachable(v));
}
