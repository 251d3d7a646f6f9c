#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "common.hpp"
#include "qctl/benchgen.hpp"
#include "qctl/errors.hpp"
#include "qctl/external_solver.hpp"
#include "qctl/pipeline.hpp"

using namespace qctl;
using testing::f;
using testing::k1;

namespace {

namespace fs = std::filesystem;

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "qctl_pipeline_test";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(QCTLMC_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CheckConfig config(const KripkeStructure& k, VertexIndex x, const FormulaPtr& g, Strategy s) {
  CheckConfig c{.structure = k, .initial = x, .formula = g};
  c.strategy = s;
  return c;
}

}  // namespace

TEST_CASE("verdict names and exit codes") {
  CHECK(verdict_name(Verdict::Holds) == "holds");
  CHECK(exit_code(Verdict::Holds) == 0);
  CHECK(exit_code(Verdict::Fails) == 1);
  CHECK(exit_code(Verdict::Unknown) == 2);
}

TEST_CASE("run_check on small and benchmark instances") {
  RunReport r = run_check(config(k1(), 0, f("EX b"), Strategy::UU));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.solver == "internal");

  Benchmark kc = gen_kconn(3, 2);
  RunReport p = run_check(config(kc.structure, kc.initial, kconn_formula(KconnVariant::Psi, 2), Strategy::FP));
  CHECK(p.verdict == Verdict::Holds);
  CHECK(p.qbf_size > 0);
  CHECK(p.qbf_vars > 0);
  std::string text = format_report(p);
  for (const char* key : {"verdict:", "strategy:", "build_time:", "qbf_size:", "qbf_vars:", "solve_time:", "solver:"}) {
    CHECK(text.find(key) != std::string::npos);
  }
}

TEST_CASE("bounded X reports unknown only for incomplete refutations") {
  Benchmark n22 = gen_nim({2, 2}, 1);
  CheckConfig c = config(n22.structure, n22.initial, nim_formula(1), Strategy::X);
  c.bound = 6;
  RunReport r = run_check(c);
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.bound == std::optional<std::size_t>(6));
  Benchmark n32 = gen_nim({3, 2}, 1);
  CheckConfig d = config(n32.structure, n32.initial, nim_formula(1), Strategy::X);
  d.bound = 8;
  CHECK(run_check(d).verdict == Verdict::Holds);
}

TEST_CASE("emitted files are byte-identical across runs") {
  fs::path dir = scratch();
  Benchmark kc = gen_kconn(3, 2);
  for (EmitFormat fmt : {EmitFormat::Smt2, EmitFormat::Qdimacs}) {
    std::string a = (dir / "a.out").string(), b = (dir / "b.out").string();
    CheckConfig c = config(kc.structure, kc.initial, kconn_formula(KconnVariant::Psi, 2), Strategy::FP);
    c.emit = fmt;
    c.emit_path = a;
    RunReport ra = run_check(c);
    c.emit_path = b;
    RunReport rb = run_check(c);
    CHECK(ra.verdict == rb.verdict);
    CHECK(slurp(a) == slurp(b));
    CHECK(ra.script_bytes == slurp(a).size());
  }
}

TEST_CASE("external solver path") {
  fs::path dir = scratch();
  std::ofstream(dir / "say_unsat.sh") << "#!/bin/sh\necho unsat\n";
  fs::permissions(dir / "say_unsat.sh", fs::perms::owner_all);
  CheckConfig c = config(k1(), 0, f("EX b"), Strategy::UU);
  c.solver = "exec:" + (dir / "say_unsat.sh").string();
  RunReport r = run_check(c);
  CHECK(r.verdict == Verdict::Fails);
  CHECK(r.solver.find("external") == 0);

  c.solver = "exec:false";
  CHECK_THROWS_AS(run_check(c), SolverError);
  c.solver = "bogus";
  CHECK_THROWS_AS(run_check(c), ValidationError);

  if (auto cmd = default_solver_command()) {
    Benchmark kc = gen_kconn(3, 2);
    CheckConfig e = config(kc.structure, kc.initial, kconn_formula(KconnVariant::Psi, 2), Strategy::FP);
    e.solver = "exec:" + *cmd;
    CHECK(run_check(e).verdict == Verdict::Holds);
    e.formula = kconn_formula(KconnVariant::Psi, 3);
    CHECK(run_check(e).verdict == Verdict::Fails);
  }
}

TEST_CASE("batch keeps order and isolates failures") {
  std::vector<CheckConfig> jobs;
  for (const char* g : {"EX b", "AG a", "EX exists p. p", "EF b"}) {
    jobs.push_back(config(k1(), 0, f(g), std::string(g) == "EX exists p. p" ? Strategy::X : Strategy::FP));
  }
  auto out = run_batch(jobs, 3);
  REQUIRE(out.size() == 4);
  CHECK(out[0].report->verdict == Verdict::Holds);
  CHECK(out[1].report->verdict == Verdict::Fails);
  CHECK_FALSE(out[2].report.has_value());
  CHECK_FALSE(out[2].error.empty());
  CHECK(out[3].report->verdict == Verdict::Holds);
}

TEST_CASE("command line exit codes") {
  fs::path dir = scratch();
  std::ofstream(dir / "k1.txt") << testing::kK1;
  std::string k = (dir / "k1.txt").string();
  CHECK(run_cli("check --kripke " + k + " --formula 'EX b' --strategy uu") == 0);
  CHECK(run_cli("check --kripke " + k + " --formula 'AG a' --strategy fp --solver internal") == 1);
  CHECK(run_cli("check --kripke " + k + " --formula 'AG a' --init v2 --strategy x --bound 1") == 1);
  CHECK(run_cli("check --kripke " + k + " --formula 'E[a U' --strategy uu") == 3);
  CHECK(run_cli("check --kripke /nonexistent --formula 'a'") == 3);
  CHECK(run_cli("frobnicate") == 3);

  std::string s = (dir / "k.smt2").string();
  CHECK(run_cli("check --kripke " + k + " --formula 'EF b' --strategy fpf --emit smt2 " + s) == 0);
  CHECK(slurp(s).find("(check-sat)") != std::string::npos);

  std::string g = (dir / "g.txt").string(), gf = (dir / "gf.txt").string();
  CHECK(run_cli("gen kconn 3 2 -k 2 -o " + g + " --formula-out " + gf) == 0);
  CHECK(run_cli("check --kripke " + g + " --formula " + gf + " --strategy fp") == 0);

  std::ofstream(dir / "jobs.json") << R"([{"kripke": "k1.txt", "formula": "EX b"},
    {"kripke": "k1.txt", "formula": "AG a", "strategy": "x"}])";
  CHECK(run_cli("batch " + (dir / "jobs.json").string() + " --jobs 2") == 0);
}
