#include "qctl/transform.hpp"

#include <map>

#include "qctl/errors.hpp"

namespace qctl {

using namespace fml;

std::vector<std::string> FlatFormula::kappa_props() const {
  std::vector<std::string> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) out.push_back(c.kappa);
  return out;
}

namespace {

FormulaPtr fixed_point(bool universal_step, const FormulaPtr& phi, const FormulaPtr& psi, NameSupply& names) {
  std::string z = names.fresh("z");
  FormulaPtr zf = atom(z);
  FormulaPtr step = universal_step ? ax(zf) : ex(zf);
  return forall(z, implies(ag(iff(zf, disj(psi, conj(phi, step)))), zf));
}

FormulaPtr fpc_rec(const FormulaPtr& f, NameSupply& names) {
  std::vector<FormulaPtr> k;
  k.reserve(f->arity());
  for (const auto& c : f->children()) k.push_back(fpc_rec(c, names));
  switch (f->op()) {
    case Op::EU: return fixed_point(false, k[0], k[1], names);
    case Op::AU: return fixed_point(true, k[0], k[1], names);
    case Op::EF: return fixed_point(false, top(), k[0], names);
    case Op::AF: return fixed_point(true, top(), k[0], names);
    case Op::EG: return neg(fixed_point(true, top(), neg(k[0]), names));
    case Op::EW: return neg(fixed_point(true, neg(k[1]), conj(neg(k[1]), neg(k[0])), names));
    case Op::AW: return neg(fixed_point(false, neg(k[1]), conj(neg(k[1]), neg(k[0])), names));
    default: return with_children(f, std::move(k));
  }
}

}  // namespace

FormulaPtr fpc(const FormulaPtr& f, NameSupply& names) {
  FormulaPtr g = expand_derived(f, names);
  return fpc_rec(g, names);
}

FormulaPtr fpc(const FormulaPtr& f) {
  NameSupply names;
  return fpc(f, names);
}

std::pair<std::vector<Binder>, FormulaPtr> split_prenex(const FormulaPtr& f) {
  if (!is_prenex(f)) throw PrenexError("formula is not in prenex normal form");
  std::vector<Binder> prefix;
  FormulaPtr cur = f;
  while (is_quantifier(cur->op())) {
    prefix.push_back({cur->op(), cur->name()});
    cur = cur->child(0);
  }
  return {std::move(prefix), cur};
}

namespace {

// Shared extraction engine. `keep` decides, for a temporal node at a given
// depth, whether it stays in place rather than becoming a clause.
class Extractor {
 public:
  Extractor(NameSupply& names, Connective conn) : names_(names), conn_(conn) {}

  template <class Keep>
  FormulaPtr run(const FormulaPtr& f, std::size_t depth, const Keep& keep) {
    std::size_t below = depth + (is_temporal(f->op()) ? 1 : 0);
    std::vector<FormulaPtr> k;
    k.reserve(f->arity());
    for (const auto& c : f->children()) k.push_back(run(c, below, keep));
    FormulaPtr rebuilt = with_children(f, std::move(k));
    if (!is_temporal(f->op()) || keep(rebuilt, depth)) return rebuilt;
    return define(rebuilt);
  }

  std::vector<FlatClause> take() { return std::move(clauses_); }

 private:
  FormulaPtr define(const FormulaPtr& theta) {
    std::string key = to_string(theta);
    auto it = index_.find(key);
    if (it != index_.end()) return atom(clauses_[it->second].kappa);
    FlatClause c;
    c.kappa = names_.fresh("k");
    c.mode = (theta->op() == Op::EU || theta->op() == Op::AU) ? KappaMode::LeastFixedPoint : KappaMode::Boolean;
    c.connective = conn_;
    c.theta = theta;
    index_.emplace(std::move(key), clauses_.size());
    clauses_.push_back(std::move(c));
    return atom(clauses_.back().kappa);
  }

  NameSupply& names_;
  Connective conn_;
  std::vector<FlatClause> clauses_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace

FlatFormula flatten_equiv(const FormulaPtr& f, NameSupply& names) {
  auto [prefix, matrix] = split_prenex(f);
  names.reserve(all_props(f));
  Extractor ex(names, Connective::Iff);
  FlatFormula out;
  out.prefix = std::move(prefix);
  out.phi0 = ex.run(matrix, 0, [](const FormulaPtr&, std::size_t depth) { return depth == 0; });
  out.clauses = ex.take();
  return out;
}

FlatFormula flatten_equiv(const FormulaPtr& f) {
  NameSupply names;
  return flatten_equiv(f, names);
}

namespace {

// NNF turns AG into AW(_, false); at depth 0 it is folded back so it can stay
// in phi0.
FormulaPtr restore_top_ag(const FormulaPtr& f) {
  if (f->op() == Op::AW && f->child(1)->op() == Op::False) return ag(f->child(0));
  if (is_temporal(f->op())) return f;
  std::vector<FormulaPtr> k;
  k.reserve(f->arity());
  for (const auto& c : f->children()) k.push_back(restore_top_ag(c));
  return with_children(f, std::move(k));
}

}  // namespace

FlatFormula flatten_nnf(const FormulaPtr& f, NameSupply& names) {
  auto [prefix, matrix] = split_prenex(f);
  names.reserve(all_props(f));
  FormulaPtr nnf = restore_top_ag(to_nnf(matrix));
  Extractor ex(names, Connective::Implies);
  FlatFormula out;
  out.prefix = std::move(prefix);
  out.phi0 = ex.run(nnf, 0, [](const FormulaPtr& g, std::size_t depth) {
    if (depth != 0) return false;
    return g->op() == Op::EX || g->op() == Op::AX || g->op() == Op::AG;
  });
  out.clauses = ex.take();
  return out;
}

FlatFormula flatten_nnf(const FormulaPtr& f) {
  NameSupply names;
  return flatten_nnf(f, names);
}

FormulaPtr to_formula(const FlatFormula& flat) {
  std::vector<FormulaPtr> parts{flat.phi0};
  for (const auto& c : flat.clauses) {
    FormulaPtr k = atom(c.kappa);
    parts.push_back(ag(c.connective == Connective::Iff ? iff(k, c.theta) : implies(k, c.theta)));
  }
  FormulaPtr body = conj(parts);
  for (auto it = flat.clauses.rbegin(); it != flat.clauses.rend(); ++it) body = exists(it->kappa, body);
  for (auto it = flat.prefix.rbegin(); it != flat.prefix.rend(); ++it) body = quantifier(it->kind, it->prop, body);
  return body;
}

}  // namespace qctl
