#pragma once

// Internal validity checker for closed QBFs.
//
// Quantifier-free formulas and two-block prenex formulas go to the SAT
// solver (two blocks by counterexample-guided refinement with incremental
// SAT instances). Anything deeper is solved outermost block first: nested
// quantified subformulas are replaced by guessed truth values, each guess is
// checked recursively once the outer variables are fixed, and wrong guesses
// are refined with the opponent's move or blocked. Results are memoized on
// the simplified subproblem.

#include <cstddef>
#include <cstdint>

#include "qctl/qbf.hpp"

namespace qctl {

struct SolverOptions {
  /// Total counter-moves allowed across all levels before giving up.
  std::size_t max_refinements = 200000;
};

struct SolverStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t refinements = 0;
  std::uint64_t levels = 0;
};

/// Throws ValidationError on free variables, ScaleError past the refinement
/// budget.
bool check_validity(const Qbf& f, const SolverOptions& opts = {}, SolverStats* stats = nullptr);

}  // namespace qctl
