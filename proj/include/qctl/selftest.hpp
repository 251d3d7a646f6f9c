#pragma once

// Randomized agreement checks between the reductions and the oracle.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qctl {

struct SelftestOptions {
  int jobs = 500;
  std::uint64_t seed = 1;
  /// Progress and disagreement details, if set.
  std::ostream* log = nullptr;
};

struct SelftestResult {
  int jobs = 0;
  int checks = 0;
  int disagreements = 0;
  std::vector<std::string> failures;

  bool ok() const { return disagreements == 0 && checks > 0; }
};

/// Every strategy (with varying exists1 encodings) against the oracle, on
/// random structures of 2-4 vertices and formulas of temporal height <= 3
/// with <= 2 quantifiers. `jobs` prenex formulas are run through all four
/// strategies, half as many non-prenex ones through UU and FP.
SelftestResult check_oracle_equivalence(const SelftestOptions& opts);

/// Quantifier-free formulas under random nonempty environments: the oracle
/// against evaluating the UU translation under the induced valuation.
SelftestResult check_environment_bridge(const SelftestOptions& opts);

}  // namespace qctl
