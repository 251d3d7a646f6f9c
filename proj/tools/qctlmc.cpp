// qctlmc: QCTL model checking by reduction to QBF.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qctl/benchgen.hpp"
#include "qctl/errors.hpp"
#include "qctl/external_solver.hpp"
#include "qctl/pipeline.hpp"
#include "qctl/selftest.hpp"

using namespace qctl;

namespace {

constexpr int kErrorExit = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

// An existing file is read; anything else is parsed as formula text.
FormulaPtr load_formula(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_formula(read_file(arg));
  return parse_formula(arg);
}

Exists1Mode parse_exists1(const std::string& s) {
  if (s.empty() || s == "default") return Exists1Mode::Default;
  if (s == "prop") return Exists1Mode::Propositional;
  if (s == "bits") return Exists1Mode::Bitvector;
  if (s == "onehot") return Exists1Mode::Onehot;
  throw ValidationError("unknown exists1 encoding: " + s);
}

std::string resolve_solver(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (auto cmd = default_solver_command()) return "exec:" + *cmd;
  return "internal";
}

struct CheckArgs {
  std::string kripke, formula, init, strategy = "uu", exists1, emit_format, emit_path, solver;
  std::optional<std::size_t> bound;
  double timeout = 0;
  std::size_t max_refinements = SolverOptions{}.max_refinements;
  bool stats = false;
};

CheckConfig make_config(const KripkeStructure& k, const CheckArgs& a) {
  EmitFormat emit = EmitFormat::None;
  if (a.emit_format == "smt2") emit = EmitFormat::Smt2;
  else if (a.emit_format == "qdimacs") emit = EmitFormat::Qdimacs;
  else if (!a.emit_format.empty()) throw ValidationError("unknown emit format: " + a.emit_format);
  return CheckConfig{
      .structure = k,
      .initial = a.init.empty() ? k.initial() : k.index_of(a.init),
      .formula = load_formula(a.formula),
      .strategy = parse_strategy(a.strategy),
      .bound = a.bound,
      .exists1 = parse_exists1(a.exists1),
      .emit = emit,
      .emit_path = a.emit_path,
      .solver = resolve_solver(a.solver),
      .timeout_seconds = a.timeout,
      .solver_options = SolverOptions{.max_refinements = a.max_refinements},
  };
}

int run_check_command(const CheckArgs& a) {
  KripkeStructure k = parse_kripke(read_file(a.kripke));
  RunReport r = run_check(make_config(k, a));
  if (a.stats) std::cout << format_report(r);
  else std::cout << verdict_name(r.verdict) << '\n';
  return exit_code(r.verdict);
}

// Batch file: JSON array of objects with the same keys as the check options
// (kripke, formula, init, strategy, bound, exists1, solver, timeout).
int run_batch_command(const std::string& path, unsigned workers) {
  nlohmann::json jobs = nlohmann::json::parse(read_file(path));
  if (!jobs.is_array()) throw ValidationError("batch file must hold a JSON array");
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto rel = [&](const std::string& p) { return (base / p).string(); };

  std::vector<CheckConfig> configs;
  for (const auto& j : jobs) {
    CheckArgs a;
    a.kripke = rel(j.at("kripke").get<std::string>());
    a.formula = j.at("formula").get<std::string>();
    if (std::filesystem::is_regular_file(rel(a.formula))) a.formula = rel(a.formula);
    a.init = j.value("init", "");
    a.strategy = j.value("strategy", "uu");
    if (j.contains("bound")) a.bound = j.at("bound").get<std::size_t>();
    a.exists1 = j.value("exists1", "");
    a.solver = j.value("solver", "");
    a.timeout = j.value("timeout", 0.0);
    configs.push_back(make_config(parse_kripke(read_file(a.kripke)), a));
  }

  auto results = run_batch(configs, workers);
  int worst = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::cout << "job " << i + 1 << ": ";
    if (r.report) {
      std::cout << verdict_name(r.report->verdict) << " (" << strategy_name(r.report->strategy) << ", "
                << r.report->build_time + r.report->solve_time << " s)\n";
    } else {
      std::cout << "error: " << r.error << '\n';
      worst = kErrorExit;
    }
  }
  return worst;
}

KconnVariant parse_variant(const std::string& s) {
  if (s == "phi") return KconnVariant::Phi;
  if (s == "psi") return KconnVariant::Psi;
  if (s == "phi-global") return KconnVariant::PhiGlobal;
  if (s == "psi-global") return KconnVariant::PsiGlobal;
  throw ValidationError("unknown kconn formula: " + s);
}

int run_selftest(int jobs, std::uint64_t seed) {
  SelftestOptions o{.jobs = jobs, .seed = seed, .log = &std::cerr};
  SelftestResult a = check_oracle_equivalence(o);
  std::cout << "oracle equivalence: " << a.checks << " checks over " << a.jobs << " jobs, " << a.disagreements
            << " disagreements\n";
  SelftestResult b = check_environment_bridge(o);
  std::cout << "environment bridge: " << b.checks << " checks, " << b.disagreements << " disagreements\n";
  return a.ok() && b.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QCTL model checking by reduction to QBF"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "check a formula at a state");
  check->add_option("--kripke", ca.kripke, "structure file")->required();
  check->add_option("--formula", ca.formula, "formula file or inline formula")->required();
  check->add_option("--init", ca.init, "initial state (default: the structure's)");
  check->add_option("--strategy", ca.strategy, "uu, fp, fpf or x")->capture_default_str();
  check->add_option("--bound", ca.bound, "until distance bound (x only)");
  check->add_option("--exists1", ca.exists1, "prop, bits or onehot");
  std::vector<std::string> emit;
  check->add_option("--emit", emit, "smt2|qdimacs PATH")->expected(2);
  check->add_option("--solver", ca.solver, "internal or exec:CMD (default: $QCTLMC_SOLVER, else internal)");
  check->add_option("--timeout", ca.timeout, "external solver timeout in seconds");
  check->add_option("--max-refinements", ca.max_refinements, "internal solver refinement budget")->capture_default_str();
  check->add_flag("--stats", ca.stats, "print the full run report");

  std::string gen_out, gen_formula_out;
  auto* gen = app.add_subcommand("gen", "generate a benchmark structure and formula");
  gen->require_subcommand(1);
  gen->add_option("-o,--output", gen_out, "structure file (default: stdout)");
  gen->add_option("--formula-out", gen_formula_out, "write the family's formula here");

  int kn = 3, km = 2, kk = 2;
  std::string kvariant = "psi", kreading = "as-printed";
  auto* gk = gen->add_subcommand("kconn", "two grids joined by m bridges");
  gk->add_option("n", kn, "grid side")->required();
  gk->add_option("m", km, "bridges")->required();
  gk->add_option("--variant", kvariant, "phi, psi, phi-global or psi-global")->capture_default_str();
  gk->add_option("-k", kk, "connectivity asked for")->capture_default_str();
  gk->add_option("--reading", kreading, "phi markers: as-printed or negated")->capture_default_str();

  std::vector<int> heaps;
  int player = 1;
  auto* gn = gen->add_subcommand("nim", "Nim game graph");
  gn->add_option("heaps", heaps, "heap sizes")->required();
  gn->add_option("--player", player, "player whose win is checked")->capture_default_str();

  int rows = 10, cols = 5, rk = 2, rd = 8;
  auto* gr = gen->add_subcommand("resources", "torus for resource placement");
  gr->add_option("rows", rows)->required();
  gr->add_option("cols", cols)->required();
  gr->add_option("-k", rk, "resources")->capture_default_str();
  gr->add_option("-d", rd, "distance")->capture_default_str();

  for (auto* s : {gk, gn, gr}) s->fallthrough();

  std::string batch_file;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* batch = app.add_subcommand("batch", "run the jobs of a JSON file concurrently");
  batch->add_option("file", batch_file)->required();
  batch->add_option("-j,--jobs", workers, "worker threads")->capture_default_str();

  int st_jobs = 500;
  std::uint64_t st_seed = 1;
  auto* selftest = app.add_subcommand("selftest", "randomized checks of every strategy against the oracle");
  selftest->add_option("--jobs", st_jobs)->capture_default_str();
  selftest->add_option("--seed", st_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kErrorExit;
  }

  try {
    if (*check) {
      if (!emit.empty()) {
        ca.emit_format = emit[0];
        ca.emit_path = emit[1];
      }
      return run_check_command(ca);
    }
    if (*gen) {
      Benchmark b{KripkeStructure({"v"}, {{0, 0}}, {{}}), 0};
      FormulaPtr f;
      if (*gk) {
        b = gen_kconn(kn, km);
        PhiReading r = kreading == "negated" ? PhiReading::Negated : PhiReading::AsPrinted;
        if (kreading != "negated" && kreading != "as-printed") throw ValidationError("unknown reading: " + kreading);
        f = kconn_formula(parse_variant(kvariant), kk, r);
      } else if (*gn) {
        b = gen_nim(heaps, player);
        f = nim_formula(player);
      } else {
        b = gen_resources(rows, cols);
        f = resources_formula(rk, rd);
      }
      write_output(gen_out, serialize_kripke(b.structure));
      if (!gen_formula_out.empty()) write_output(gen_formula_out, to_string(f) + "\n");
      return 0;
    }
    if (*batch) return run_batch_command(batch_file, workers);
    if (*selftest) return run_selftest(st_jobs, st_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kErrorExit;
  }
  return kErrorExit;
}
