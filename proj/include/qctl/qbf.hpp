#pragma once

// Quantified Boolean formulas as immutable, hash-consed-by-convention DAGs.
// Builders fold constants, so trivially true or false pieces never survive.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace qctl {

enum class QOp : std::uint8_t { Var, True, False, Not, And, Or, Implies, Iff, Exists, Forall };

class QbfNode;
using Qbf = std::shared_ptr<const QbfNode>;

class QbfNode {
 public:
  QbfNode(QOp op, std::string name, std::vector<std::string> vars, std::vector<Qbf> kids);

  QOp op() const { return op_; }
  const std::string& name() const { return name_; }
  /// Variables bound by an Exists / Forall block, in order.
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Qbf>& kids() const { return kids_; }
  const Qbf& kid(std::size_t i) const { return kids_.at(i); }

  std::size_t hash() const { return hash_; }
  /// Node count of the tree unfolding, saturating at UINT64_MAX.
  std::uint64_t tree_size() const { return size_; }
  bool has_quantifier() const { return has_quant_; }
  bool is_const() const { return op_ == QOp::True || op_ == QOp::False; }

 private:
  QOp op_;
  std::string name_;
  std::vector<std::string> vars_;
  std::vector<Qbf> kids_;
  std::size_t hash_ = 0;
  std::uint64_t size_ = 1;
  bool has_quant_ = false;
};

namespace qbf {

Qbf var(std::string name);
Qbf top();
Qbf bottom();
Qbf constant(bool b);
Qbf neg(const Qbf& a);
Qbf conj(std::vector<Qbf> kids);
Qbf disj(std::vector<Qbf> kids);
Qbf conj(const Qbf& a, const Qbf& b);
Qbf disj(const Qbf& a, const Qbf& b);
Qbf implies(const Qbf& a, const Qbf& b);
Qbf iff(const Qbf& a, const Qbf& b);
Qbf exists(std::vector<std::string> vars, const Qbf& body);
Qbf forall(std::vector<std::string> vars, const Qbf& body);
Qbf quantifier(bool universal, std::vector<std::string> vars, const Qbf& body);

}  // namespace qbf

/// `<prop>@<vertex>`
std::string var_token(const std::string& prop, const std::string& vertex);
/// `<prop>@<vertex>#<bit>`
std::string bit_token(const std::string& prop, const std::string& vertex, unsigned bit);

bool qbf_equal(const Qbf& a, const Qbf& b);

struct QbfHash {
  std::size_t operator()(const Qbf& q) const { return q->hash(); }
};
struct QbfEq {
  bool operator()(const Qbf& a, const Qbf& b) const { return qbf_equal(a, b); }
};

using Valuation = std::map<std::string, bool>;

/// Standard semantics; quantifiers are expanded. Throws ValidationError when
/// a free variable is missing from `v`.
bool eval_qbf(const Valuation& v, const Qbf& f);

std::set<std::string> free_vars(const Qbf& f);
bool is_closed(const Qbf& f);

/// Equivalent formula with constants folded, nested and/or flattened,
/// duplicate and complementary operands resolved, vacuous bound variables
/// dropped and single-literal quantifiers decided.
Qbf simplify(const Qbf& f);

/// Replaces free occurrences of the given variables by constants.
Qbf substitute(const Qbf& f, const std::map<std::string, bool>& values);

/// Distinct nodes of the DAG.
std::size_t dag_size(const Qbf& f);
/// Distinct variables bound anywhere in `f`.
std::size_t quantified_var_count(const Qbf& f);

/// Infix rendering for diagnostics.
std::string to_string(const Qbf& f);

}  // namespace qctl
