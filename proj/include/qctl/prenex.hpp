#pragma once

// Prenexing of closed QBFs and Tseitin conversion of the matrix.

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qctl/qbf.hpp"

namespace qctl {

struct QuantBlock {
  bool universal = false;
  std::vector<std::string> vars;
};

/// prefix (outermost first, strictly alternating) over a quantifier-free matrix.
struct PrenexQbf {
  std::vector<QuantBlock> prefix;
  Qbf matrix;
};

/// Pulls every quantifier to the front. Bound variables are renamed apart
/// where needed; identical shared subformulas keep shared names. Blocks are
/// aligned from the innermost side, which keeps the number of alternations
/// minimal for each subformula.
PrenexQbf prenex(const Qbf& f);

struct CnfBlock {
  bool universal = false;
  std::vector<int> vars;  // 1-based
};

struct PrenexCnf {
  std::vector<CnfBlock> prefix;
  std::vector<std::vector<int>> clauses;
  /// names[i-1] is the variable with index i; auxiliaries are named `_t<n>`.
  std::vector<std::string> names;

  int num_vars() const { return static_cast<int>(names.size()); }
};

/// Prenex form plus Tseitin CNF of the matrix; auxiliaries go to an innermost
/// existential block. Throws ValidationError for formulas with free variables.
PrenexCnf to_prenex_cnf(const Qbf& f);

/// Tseitin encoder over a caller-provided variable allocator and clause sink.
/// Literals are DIMACS-style signed integers.
class Tseitin {
 public:
  using NewVar = std::function<int()>;
  using AddClause = std::function<void(std::vector<int>)>;

  Tseitin(NewVar new_var, AddClause add_clause) : new_var_(std::move(new_var)), add_(std::move(add_clause)) {}

  /// Binds a formula variable to an existing solver variable.
  void bind(const std::string& name, int var) { vars_[name] = var; }
  int var_for(const std::string& name);
  bool has_var(const std::string& name) const { return vars_.count(name) != 0; }

  /// Literal equivalent to `f` (quantifier-free). Constants get a fixed
  /// variable forced by a unit clause.
  int encode(const Qbf& f);
  /// Asserts `f`, splitting a top-level conjunction into separate units.
  void assert_formula(const Qbf& f);

 private:
  int constant(bool value);

  NewVar new_var_;
  AddClause add_;
  std::unordered_map<std::string, int> vars_;
  std::unordered_map<const QbfNode*, int> memo_;
  std::vector<Qbf> pinned_;
  int true_var_ = 0;
};

}  // namespace qctl
