#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "qctl/emit.hpp"
#include "qctl/errors.hpp"
#include "qctl/external_solver.hpp"
#include "qctl/qbf_solver.hpp"

using namespace qctl;
using namespace qctl::qbf;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::optional<std::string> solver() { return default_solver_command(); }

}  // namespace

TEST_CASE("SMT-LIB emission of simple formulas") {
  std::string t = emit_smtlib(top());
  CHECK(t.find("(assert true)") != std::string::npos);
  CHECK(t.find("(check-sat)") != std::string::npos);

  std::string e = emit_smtlib(exists({"x"}, forall({"y"}, iff(var("x"), var("y")))));
  CHECK(e.find("(declare-const |x| Bool)") != std::string::npos);
  CHECK(e.find("(forall ((|y| Bool))") != std::string::npos);
  CHECK_THROWS_AS(emit_smtlib(var("x")), ValidationError);
}

TEST_CASE("SMT-LIB emission shares repeated subterms and is deterministic") {
  Qbf shared = conj(var("a"), var("b"));
  Qbf g = exists({"a", "b"}, disj(conj(shared, var("a")), iff(shared, var("b"))));
  std::string s = emit_smtlib(g);
  CHECK(s.find("s!1") != std::string::npos);
  CHECK(s == emit_smtlib(g));
}

TEST_CASE("external solver classification") {
  std::string sat_script = write_temp("qctl_sat.txt", "sat\n");
  std::string unsat_script = write_temp("qctl_unsat.txt", "unsat\n");
  std::string junk = write_temp("qctl_junk.txt", "whatever\n");
  CHECK(invoke_external_solver("cat", sat_script).answer == SolverAnswer::Sat);
  CHECK(invoke_external_solver("cat", unsat_script).answer == SolverAnswer::Unsat);
  CHECK_THROWS_AS(invoke_external_solver("cat", junk), SolverError);
  CHECK_THROWS_AS(invoke_external_solver("/nonexistent/solver", sat_script), SolverError);
  ExternalResult slow = invoke_external_solver("sleep 5; cat", sat_script, 0.2);
  CHECK(slow.timed_out);
  CHECK(slow.answer == SolverAnswer::Unknown);
}

TEST_CASE("external solver agrees with the internal one") {
  auto cmd = solver();
  if (!cmd) {
    MESSAGE("no external solver configured, skipping");
    return;
  }
  std::string t = write_temp("qctl_top.smt2", emit_smtlib(top()));
  CHECK(invoke_external_solver(*cmd, t).answer == SolverAnswer::Sat);
  std::string u = write_temp("qctl_ef.smt2", emit_smtlib(exists({"x"}, forall({"y"}, iff(var("x"), var("y"))))));
  CHECK(invoke_external_solver(*cmd, u).answer == SolverAnswer::Unsat);

  std::mt19937_64 rng(67);
  const std::vector<std::string> names{"a", "b", "c", "d"};
  for (int i = 0; i < 50; ++i) {
    std::function<Qbf(int)> gen = [&](int depth) -> Qbf {
      int r = static_cast<int>(rng() % 7);
      if (depth == 0 || r == 0) return var(names[rng() % 4]);
      switch (r) {
        case 1: return neg(gen(depth - 1));
        case 2: return conj(gen(depth - 1), gen(depth - 1));
        case 3: return disj(gen(depth - 1), gen(depth - 1));
        case 4: return iff(gen(depth - 1), gen(depth - 1));
        default: return quantifier(r == 5, {names[rng() % 4]}, gen(depth - 1));
      }
    };
    Qbf g = gen(5);
    for (const auto& n : names) g = quantifier(rng() % 2 == 0, {n}, g);
    std::string path = write_temp("qctl_rand.smt2", emit_smtlib(g));
    bool want = check_validity(g);
    CHECK((invoke_external_solver(*cmd, path).answer == SolverAnswer::Sat) == want);
  }
}
