#pragma once

// QCTL abstract syntax. Nodes are immutable and shared; every rewrite returns
// a new tree that reuses untouched subtrees.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qctl {

enum class Op : std::uint8_t {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  EX,
  AX,
  EF,
  AF,
  EG,
  AG,
  EU,
  AU,
  EW,
  AW,
  Exists,
  Forall,
  Exists1,
  Forall1,
  UniqueF,   // E=1F
  UniqueX,   // E=1X
  AtLeastX,  // E>=kX
  ExactlyX,  // E=kX
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  Formula(Op op, std::string name, int count, std::vector<FormulaPtr> children)
      : op_(op), name_(std::move(name)), count_(count), children_(std::move(children)) {}

  Op op() const { return op_; }
  /// Proposition of an atom, or the proposition bound by a quantifier.
  const std::string& name() const { return name_; }
  /// k of E>=kX / E=kX.
  int count() const { return count_; }
  const std::vector<FormulaPtr>& children() const { return children_; }
  const FormulaPtr& child(std::size_t i) const { return children_.at(i); }
  std::size_t arity() const { return children_.size(); }

 private:
  Op op_;
  std::string name_;
  int count_;
  std::vector<FormulaPtr> children_;
};

bool is_temporal(Op op);
bool is_quantifier(Op op);  // exists, forall, exists1, forall1
bool is_counting(Op op);    // E=1F, E=1X, E>=kX, E=kX
/// Binary temporal nodes: EU, AU, EW, AW.
bool is_until_like(Op op);

namespace fml {

FormulaPtr atom(std::string name);
FormulaPtr top();
FormulaPtr bottom();
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
/// Left-nested conjunction; empty list yields true, singletons are returned as is.
FormulaPtr conj(const std::vector<FormulaPtr>& fs);
FormulaPtr disj(const std::vector<FormulaPtr>& fs);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr ex(FormulaPtr f);
FormulaPtr ax(FormulaPtr f);
FormulaPtr ef(FormulaPtr f);
FormulaPtr af(FormulaPtr f);
FormulaPtr eg(FormulaPtr f);
FormulaPtr ag(FormulaPtr f);
FormulaPtr eu(FormulaPtr a, FormulaPtr b);
FormulaPtr au(FormulaPtr a, FormulaPtr b);
FormulaPtr ew(FormulaPtr a, FormulaPtr b);
FormulaPtr aw(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string p, FormulaPtr f);
FormulaPtr forall(std::string p, FormulaPtr f);
FormulaPtr exists1(std::string p, FormulaPtr f);
FormulaPtr forall1(std::string p, FormulaPtr f);
FormulaPtr unique_f(FormulaPtr f);
FormulaPtr unique_x(FormulaPtr f);
FormulaPtr at_least_x(int k, FormulaPtr f);
FormulaPtr exactly_x(int k, FormulaPtr f);

/// Rebuilds `f` with new children, keeping op, name and count.
FormulaPtr with_children(const FormulaPtr& f, std::vector<FormulaPtr> children);
/// Generic node constructor for the quantifier kinds.
FormulaPtr quantifier(Op op, std::string p, FormulaPtr f);

}  // namespace fml

bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Prints in the concrete syntax accepted by parse_formula.
std::string to_string(const FormulaPtr& f);

/// Parses the concrete formula syntax. Throws ParseError with the 1-based
/// character position.
FormulaPtr parse_formula(std::string_view text);

// ---------------------------------------------------------------------------
// Metrics

struct FormulaMetrics {
  std::size_t size = 0;
  std::size_t temporal_height = 0;
  std::size_t quantifier_count = 0;
  std::set<std::string> quantified_props;
};

/// Size: atoms count 1; unary connectives, quantifiers and unary modalities
/// 1 + |child|; binary connectives and the until/weak-until pairs
/// 1 + |left| + |right|. Counting macros count as a unary node.
FormulaMetrics metrics(const FormulaPtr& f);
std::size_t formula_size(const FormulaPtr& f);
std::size_t temporal_height(const FormulaPtr& f);

using FormulaPath = std::vector<std::size_t>;

/// Number of temporal modalities strictly above the node at `path`.
/// Throws std::out_of_range for an invalid path.
std::size_t temporal_depth(const FormulaPtr& root, const FormulaPath& path);

struct Subformula {
  FormulaPath path;
  FormulaPtr formula;
  bool temporal = false;
};

/// Every occurrence, post-order.
std::vector<Subformula> subformulas(const FormulaPtr& f);

/// Propositions occurring free in `f`.
std::set<std::string> free_props(const FormulaPtr& f);
/// Every proposition name in `f`, bound or free.
std::set<std::string> all_props(const FormulaPtr& f);
bool contains_quantifier(const FormulaPtr& f);
bool contains_temporal(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Rewrites

/// Deterministic fresh-name source: `base_<n>` for the smallest n avoiding
/// every name already handed out or reserved.
class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> reserved = {}) : used_(std::move(reserved)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

struct ExpandOptions {
  /// Also rewrite exists1/forall1 into their defining E=1F form.
  bool expand_exists1 = false;
};

/// Rewrites the counting macros into plain QCTL. Fresh propositions are
/// drawn from `names` (which is extended with everything in `f`).
FormulaPtr expand_derived(const FormulaPtr& f, NameSupply& names, ExpandOptions opts = {});
FormulaPtr expand_derived(const FormulaPtr& f, ExpandOptions opts = {});

/// Alpha-renames bound propositions so they are pairwise distinct and avoid
/// `reserved` and the free propositions of `f`.
FormulaPtr rename_apart(const FormulaPtr& f, const std::set<std::string>& reserved = {});

/// Negation normal form: negation only on atoms; temporal operators limited
/// to EX, AX, EU, AU, EW, AW (EF/AF become untils, EG/AG weak untils with
/// false). Counting macros are expanded first.
FormulaPtr to_nnf(const FormulaPtr& f);

/// Replaces EF, AF, EG, AG, EW, AW (and AX when `keep_ax` is false) by their
/// definitions over EX, EU and AU.
FormulaPtr to_core_ctl(const FormulaPtr& f, bool keep_ax = true);

/// True when `f` is a quantifier prefix over a quantifier-free, macro-free
/// matrix.
bool is_prenex(const FormulaPtr& f);

}  // namespace qctl
