#pragma once

// End-to-end checking: reduce, optionally emit, solve, report.

#include <optional>
#include <string>
#include <vector>

#include "qctl/formula.hpp"
#include "qctl/kripke.hpp"
#include "qctl/qbf_solver.hpp"
#include "qctl/reduce.hpp"

namespace qctl {

enum class Verdict { Holds, Fails, Unknown };
enum class EmitFormat { None, Smt2, Qdimacs };

std::string verdict_name(Verdict v);
/// 0 holds, 1 fails, 2 unknown.
int exit_code(Verdict v);

struct CheckConfig {
  KripkeStructure structure;
  VertexIndex initial = 0;
  FormulaPtr formula;
  Strategy strategy = Strategy::UU;
  std::optional<std::size_t> bound;
  Exists1Mode exists1 = Exists1Mode::Default;
  EmitFormat emit = EmitFormat::None;
  std::string emit_path;
  /// "internal" or "exec:<command>".
  std::string solver = "internal";
  double timeout_seconds = 0;
  SolverOptions solver_options;
};

struct RunReport {
  Verdict verdict = Verdict::Unknown;
  Strategy strategy = Strategy::UU;
  double build_time = 0;
  /// Distinct nodes of the simplified formula.
  std::size_t qbf_size = 0;
  std::size_t qbf_vars = 0;
  /// Size of the solver script in bytes, when one was written.
  std::size_t script_bytes = 0;
  double solve_time = 0;
  std::string solver;
  std::optional<std::size_t> bound;
};

/// Throws Error subclasses for invalid input, scale limits and solver failures.
RunReport run_check(const CheckConfig& config);

/// `key: value` lines.
std::string format_report(const RunReport& r);

struct BatchResult {
  std::optional<RunReport> report;
  std::string error;
};

/// Runs independent checks on up to `workers` threads; results keep input order.
std::vector<BatchResult> run_batch(const std::vector<CheckConfig>& configs, unsigned workers);

}  // namespace qctl
