#pragma once

// Source-to-source rewrites used by the reductions: fixed-point elimination
// of the until operators and the two flattening schemes.

#include <string>
#include <vector>

#include "qctl/formula.hpp"

namespace qctl {

enum class Connective { Iff, Implies };

enum class KappaMode { Boolean, LeastFixedPoint };

struct Binder {
  Op kind;  // Exists, Forall, Exists1 or Forall1
  std::string prop;
};

struct FlatClause {
  std::string kappa;
  KappaMode mode = KappaMode::Boolean;
  Connective connective = Connective::Iff;
  FormulaPtr theta;
};

/// prefix . exists kappa_1..kappa_m . (phi0 & AG(kappa_1 op theta_1) & ...)
struct FlatFormula {
  std::vector<Binder> prefix;
  FormulaPtr phi0;
  std::vector<FlatClause> clauses;

  std::vector<std::string> kappa_props() const;
};

/// Replaces every EU / AU by its universally quantified fixed-point
/// characterization. EF, AF, EG, EW and AW are first rewritten through their
/// definitions; AG, EX and AX are kept. Counting macros are expanded.
FormulaPtr fpc(const FormulaPtr& f);
FormulaPtr fpc(const FormulaPtr& f, NameSupply& names);

/// Splits a prenex formula into its prefix and matrix. Throws PrenexError.
std::pair<std::vector<Binder>, FormulaPtr> split_prenex(const FormulaPtr& f);

/// Iff-mode flattening: temporal subformulas at temporal depth >= 1 become
/// defined propositions. Throws PrenexError on non-prenex input.
FlatFormula flatten_equiv(const FormulaPtr& f);
FlatFormula flatten_equiv(const FormulaPtr& f, NameSupply& names);

/// Implication-mode flattening over the NNF of the matrix. phi0 keeps only
/// EX, AX and AG at temporal depth 0; every other modality is defined by a
/// clause. Throws PrenexError on non-prenex input.
FlatFormula flatten_nnf(const FormulaPtr& f);
FlatFormula flatten_nnf(const FormulaPtr& f, NameSupply& names);

/// The QCTL formula denoted by a flat formula.
FormulaPtr to_formula(const FlatFormula& flat);

}  // namespace qctl
