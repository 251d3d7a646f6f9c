#pragma once

// Direct-semantics evaluator. Quantifiers enumerate every labeling, so this
// only scales to tiny structures; it is the reference every reduction is
// tested against.

#include <map>
#include <set>
#include <string>

#include "qctl/formula.hpp"
#include "qctl/kripke.hpp"

namespace qctl {

/// Partial map from quantified propositions to the vertices they label.
using Environment = std::map<std::string, std::set<VertexIndex>>;

struct OracleOptions {
  /// Evaluate on the part of the structure reachable from the queried
  /// vertex only, shrinking every labeling enumeration.
  bool restrict_to_reachable = false;
  /// Refuse when (labeling universe size) x (quantifier nesting) exceeds this.
  std::size_t scale_limit = 24;
};

/// K, x |=_env f. Throws ScaleError when the instance is beyond the limit.
bool eval(const KripkeStructure& k, VertexIndex x, const Environment& env, const FormulaPtr& f,
          const OracleOptions& opts = {});

/// eval with the empty environment after renaming bound propositions apart.
bool model_check(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f, const OracleOptions& opts = {});

}  // namespace qctl
