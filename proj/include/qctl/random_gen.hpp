#pragma once

// Random structures and formulas for property tests.

#include <random>
#include <string>
#include <vector>

#include "qctl/formula.hpp"
#include "qctl/kripke.hpp"

namespace qctl {

/// Total structure with a vertex count drawn from [min_vertices, max_vertices]
/// and random labels over `props`.
KripkeStructure random_structure(std::mt19937_64& rng, int min_vertices = 2, int max_vertices = 4,
                                 const std::vector<std::string>& props = {"a", "b"});

struct RandomFormulaOptions {
  std::vector<std::string> atoms{"a", "b"};
  int max_height = 3;
  int max_quantifiers = 2;
  /// Boolean nesting allowed between two temporal operators.
  int max_boolean_depth = 2;
  /// Quantifiers only in an outermost prefix.
  bool prenex = false;
  bool allow_unique = true;
  bool allow_counting = false;
};

FormulaPtr random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts = {});

}  // namespace qctl
