#pragma once

// Solver-facing text formats. Both emitters are deterministic.

#include <string>

#include "qctl/prenex.hpp"
#include "qctl/qbf.hpp"

namespace qctl {

/// SMT-LIB2 script for a closed formula: the outermost existential block is
/// declared as constants, the rest stays quantified, shared subterms are
/// let-bound. The script is satisfiable iff the formula is valid.
/// Throws ValidationError for formulas with free variables.
std::string emit_smtlib(const Qbf& f);

/// QDIMACS 1.1 text.
std::string emit_qdimacs(const PrenexCnf& cnf);

}  // namespace qctl
