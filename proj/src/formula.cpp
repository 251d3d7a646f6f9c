#include "qctl/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "qctl/errors.hpp"

namespace qctl {

bool is_temporal(Op op) {
  switch (op) {
    case Op::EX: case Op::AX: case Op::EF: case Op::AF: case Op::EG: case Op::AG:
    case Op::EU: case Op::AU: case Op::EW: case Op::AW:
    case Op::UniqueF: case Op::UniqueX: case Op::AtLeastX: case Op::ExactlyX:
      return true;
    default:
      return false;
  }
}

bool is_quantifier(Op op) {
  return op == Op::Exists || op == Op::Forall || op == Op::Exists1 || op == Op::Forall1;
}

bool is_counting(Op op) {
  return op == Op::UniqueF || op == Op::UniqueX || op == Op::AtLeastX || op == Op::ExactlyX;
}

bool is_until_like(Op op) { return op == Op::EU || op == Op::AU || op == Op::EW || op == Op::AW; }

namespace fml {

namespace {

FormulaPtr make(Op op, std::vector<FormulaPtr> children, std::string name = {}, int count = 0) {
  return std::make_shared<const Formula>(op, std::move(name), count, std::move(children));
}

}  // namespace

FormulaPtr atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  return make(Op::Atom, {}, std::move(name));
}

FormulaPtr top() {
  static const FormulaPtr t = make(Op::True, {});
  return t;
}

FormulaPtr bottom() {
  static const FormulaPtr f = make(Op::False, {});
  return f;
}

FormulaPtr neg(FormulaPtr f) { return make(Op::Not, {std::move(f)}); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return make(Op::And, {std::move(a), std::move(b)}); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return make(Op::Or, {std::move(a), std::move(b)}); }

FormulaPtr conj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return top();
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

FormulaPtr disj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return bottom();
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return make(Op::Implies, {std::move(a), std::move(b)}); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return make(Op::Iff, {std::move(a), std::move(b)}); }
FormulaPtr ex(FormulaPtr f) { return make(Op::EX, {std::move(f)}); }
FormulaPtr ax(FormulaPtr f) { return make(Op::AX, {std::move(f)}); }
FormulaPtr ef(FormulaPtr f) { return make(Op::EF, {std::move(f)}); }
FormulaPtr af(FormulaPtr f) { return make(Op::AF, {std::move(f)}); }
FormulaPtr eg(FormulaPtr f) { return make(Op::EG, {std::move(f)}); }
FormulaPtr ag(FormulaPtr f) { return make(Op::AG, {std::move(f)}); }
FormulaPtr eu(FormulaPtr a, FormulaPtr b) { return make(Op::EU, {std::move(a), std::move(b)}); }
FormulaPtr au(FormulaPtr a, FormulaPtr b) { return make(Op::AU, {std::move(a), std::move(b)}); }
FormulaPtr ew(FormulaPtr a, FormulaPtr b) { return make(Op::EW, {std::move(a), std::move(b)}); }
FormulaPtr aw(FormulaPtr a, FormulaPtr b) { return make(Op::AW, {std::move(a), std::move(b)}); }

FormulaPtr quantifier(Op op, std::string p, FormulaPtr f) {
  if (!is_quantifier(op)) throw std::invalid_argument("not a quantifier kind");
  if (p.empty()) throw std::invalid_argument("empty quantified proposition");
  return make(op, {std::move(f)}, std::move(p));
}

FormulaPtr exists(std::string p, FormulaPtr f) { return quantifier(Op::Exists, std::move(p), std::move(f)); }
FormulaPtr forall(std::string p, FormulaPtr f) { return quantifier(Op::Forall, std::move(p), std::move(f)); }
FormulaPtr exists1(std::string p, FormulaPtr f) { return quantifier(Op::Exists1, std::move(p), std::move(f)); }
FormulaPtr forall1(std::string p, FormulaPtr f) { return quantifier(Op::Forall1, std::move(p), std::move(f)); }
FormulaPtr unique_f(FormulaPtr f) { return make(Op::UniqueF, {std::move(f)}); }
FormulaPtr unique_x(FormulaPtr f) { return make(Op::UniqueX, {std::move(f)}); }

FormulaPtr at_least_x(int k, FormulaPtr f) {
  if (k < 0) throw std::invalid_argument("negative successor count");
  return make(Op::AtLeastX, {std::move(f)}, {}, k);
}

FormulaPtr exactly_x(int k, FormulaPtr f) {
  if (k < 0) throw std::invalid_argument("negative successor count");
  return make(Op::ExactlyX, {std::move(f)}, {}, k);
}

FormulaPtr with_children(const FormulaPtr& f, std::vector<FormulaPtr> children) {
  if (children == f->children()) return f;
  return make(f->op(), std::move(children), f->name(), f->count());
}

}  // namespace fml

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->op() != b->op() || a->name() != b->name() || a->count() != b->count() || a->arity() != b->arity())
    return false;
  for (std::size_t i = 0; i < a->arity(); ++i)
    if (!equal(a->child(i), b->child(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* unary_keyword(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::EX: return "EX ";
    case Op::AX: return "AX ";
    case Op::EF: return "EF ";
    case Op::AF: return "AF ";
    case Op::EG: return "EG ";
    case Op::AG: return "AG ";
    case Op::UniqueF: return "E=1F ";
    case Op::UniqueX: return "E=1X ";
    case Op::Exists: return "exists ";
    case Op::Forall: return "forall ";
    case Op::Exists1: return "exists1 ";
    case Op::Forall1: return "forall1 ";
    default: return nullptr;
  }
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    default: return nullptr;
  }
}

void print(const FormulaPtr& f, std::string& out) {
  switch (f->op()) {
    case Op::Atom: out += f->name(); return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::EU: case Op::AU: case Op::EW: case Op::AW:
      out += (f->op() == Op::EU || f->op() == Op::EW) ? "E[" : "A[";
      print(f->child(0), out);
      out += (f->op() == Op::EU || f->op() == Op::AU) ? " U " : " W ";
      print(f->child(1), out);
      out += ']';
      return;
    case Op::AtLeastX:
    case Op::ExactlyX:
      out += f->op() == Op::AtLeastX ? "E>=" : "E=";
      out += std::to_string(f->count());
      out += "X ";
      print(f->child(0), out);
      return;
    default:
      break;
  }
  if (const char* sym = binary_symbol(f->op())) {
    out += '(';
    print(f->child(0), out);
    out += sym;
    print(f->child(1), out);
    out += ')';
    return;
  }
  const char* kw = unary_keyword(f->op());
  out += kw;
  if (is_quantifier(f->op())) {
    out += f->name();
    out += ". ";
  }
  print(f->child(0), out);
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

namespace {

void collect_metrics(const FormulaPtr& f, FormulaMetrics& m, std::size_t& size, std::size_t& ht) {
  std::size_t child_ht = 0;
  size = 1;
  for (const auto& c : f->children()) {
    std::size_t s = 0, h = 0;
    collect_metrics(c, m, s, h);
    size += s;
    child_ht = std::max(child_ht, h);
  }
  ht = child_ht + (is_temporal(f->op()) ? 1 : 0);
  if (is_quantifier(f->op())) {
    ++m.quantifier_count;
    m.quantified_props.insert(f->name());
  }
}

}  // namespace

FormulaMetrics metrics(const FormulaPtr& f) {
  FormulaMetrics m;
  collect_metrics(f, m, m.size, m.temporal_height);
  return m;
}

std::size_t formula_size(const FormulaPtr& f) {
  std::size_t n = 1;
  for (const auto& c : f->children()) n += formula_size(c);
  return n;
}

std::size_t temporal_height(const FormulaPtr& f) {
  std::size_t h = 0;
  for (const auto& c : f->children()) h = std::max(h, temporal_height(c));
  return h + (is_temporal(f->op()) ? 1 : 0);
}

std::size_t temporal_depth(const FormulaPtr& root, const FormulaPath& path) {
  std::size_t depth = 0;
  const Formula* cur = root.get();
  for (std::size_t idx : path) {
    if (idx >= cur->arity()) throw std::out_of_range("invalid subformula path");
    if (is_temporal(cur->op())) ++depth;
    cur = cur->child(idx).get();
  }
  return depth;
}

namespace {

void collect_subformulas(const FormulaPtr& f, FormulaPath& path, std::vector<Subformula>& out) {
  for (std::size_t i = 0; i < f->arity(); ++i) {
    path.push_back(i);
    collect_subformulas(f->child(i), path, out);
    path.pop_back();
  }
  out.push_back({path, f, is_temporal(f->op())});
}

void collect_free(const FormulaPtr& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
  if (f->op() == Op::Atom) {
    if (!bound.count(f->name())) out.insert(f->name());
    return;
  }
  if (is_quantifier(f->op())) {
    auto it = bound.insert(f->name());
    collect_free(f->child(0), bound, out);
    bound.erase(it);
    return;
  }
  for (const auto& c : f->children()) collect_free(c, bound, out);
}

void collect_all(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->op() == Op::Atom || is_quantifier(f->op())) out.insert(f->name());
  for (const auto& c : f->children()) collect_all(c, out);
}

bool any_node(const FormulaPtr& f, const std::function<bool(Op)>& pred) {
  if (pred(f->op())) return true;
  for (const auto& c : f->children())
    if (any_node(c, pred)) return true;
  return false;
}

}  // namespace

std::vector<Subformula> subformulas(const FormulaPtr& f) {
  std::vector<Subformula> out;
  FormulaPath path;
  collect_subformulas(f, path, out);
  return out;
}

std::set<std::string> free_props(const FormulaPtr& f) {
  std::set<std::string> out;
  std::multiset<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_props(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool contains_quantifier(const FormulaPtr& f) {
  return any_node(f, [](Op op) { return is_quantifier(op) || is_counting(op); });
}

bool contains_temporal(const FormulaPtr& f) { return any_node(f, is_temporal); }

// ---------------------------------------------------------------------------
// Rewrites

std::string NameSupply::fresh(const std::string& base) {
  for (std::size_t n = 1;; ++n) {
    std::string candidate = base + "_" + std::to_string(n);
    if (used_.insert(candidate).second) return candidate;
  }
}

namespace {

using namespace fml;

FormulaPtr expand_rec(const FormulaPtr& f, NameSupply& names, const ExpandOptions& opts);

FormulaPtr at_least_expansion(int k, const FormulaPtr& phi, NameSupply& names) {
  if (k <= 0) return top();
  std::vector<std::string> ps;
  for (int i = 0; i < k; ++i) ps.push_back(names.fresh("p"));
  std::vector<FormulaPtr> parts;
  std::vector<FormulaPtr> any;
  for (int i = 0; i < k; ++i) {
    std::vector<FormulaPtr> mark{atom(ps[i])};
    for (int j = 0; j < k; ++j)
      if (j != i) mark.push_back(neg(atom(ps[j])));
    parts.push_back(ex(conj(mark)));
    any.push_back(atom(ps[i]));
  }
  parts.push_back(ax(implies(disj(any), phi)));
  FormulaPtr body = conj(parts);
  for (int i = k - 1; i >= 0; --i) body = exists(ps[i], body);
  return body;
}

FormulaPtr unique_f_expansion(const FormulaPtr& phi, NameSupply& names) {
  std::string p = names.fresh("p");
  return conj(ef(phi), forall(p, implies(ef(conj(atom(p), phi)), ag(implies(phi, atom(p))))));
}

FormulaPtr expand_rec(const FormulaPtr& f, NameSupply& names, const ExpandOptions& opts) {
  std::vector<FormulaPtr> kids;
  kids.reserve(f->arity());
  for (const auto& c : f->children()) kids.push_back(expand_rec(c, names, opts));

  switch (f->op()) {
    case Op::UniqueF:
      return unique_f_expansion(kids[0], names);
    case Op::UniqueX: {
      const auto& phi = kids[0];
      std::string p = names.fresh("p");
      return conj(ex(phi), forall(p, disj(ax(implies(phi, atom(p))), ax(implies(phi, neg(atom(p)))))));
    }
    case Op::AtLeastX:
      return at_least_expansion(f->count(), kids[0], names);
    case Op::ExactlyX:
      return conj(at_least_expansion(f->count(), kids[0], names),
                  neg(at_least_expansion(f->count() + 1, kids[0], names)));
    case Op::Exists1:
      if (opts.expand_exists1)
        return exists(f->name(), conj(unique_f_expansion(atom(f->name()), names), kids[0]));
      break;
    case Op::Forall1:
      if (opts.expand_exists1)
        return forall(f->name(), implies(unique_f_expansion(atom(f->name()), names), kids[0]));
      break;
    default:
      break;
  }
  return with_children(f, std::move(kids));
}

}  // namespace

FormulaPtr expand_derived(const FormulaPtr& f, NameSupply& names, ExpandOptions opts) {
  names.reserve(all_props(f));
  return expand_rec(f, names, opts);
}

FormulaPtr expand_derived(const FormulaPtr& f, ExpandOptions opts) {
  NameSupply names;
  return expand_derived(f, names, opts);
}

namespace {

FormulaPtr rename_rec(const FormulaPtr& f, std::map<std::string, std::string>& scope, NameSupply& names) {
  if (f->op() == Op::Atom) {
    auto it = scope.find(f->name());
    if (it == scope.end() || it->second == f->name()) return f;
    return fml::atom(it->second);
  }
  if (is_quantifier(f->op())) {
    const std::string& old = f->name();
    std::string fresh = names.used(old) ? names.fresh(old) : old;
    names.reserve(fresh);
    auto saved = scope.find(old) == scope.end() ? std::optional<std::string>{} : std::optional{scope[old]};
    scope[old] = fresh;
    FormulaPtr body = rename_rec(f->child(0), scope, names);
    if (saved) scope[old] = *saved;
    else scope.erase(old);
    if (fresh == old && body == f->child(0)) return f;
    return fml::quantifier(f->op(), fresh, body);
  }
  std::vector<FormulaPtr> kids;
  kids.reserve(f->arity());
  for (const auto& c : f->children()) kids.push_back(rename_rec(c, scope, names));
  return fml::with_children(f, std::move(kids));
}

}  // namespace

FormulaPtr rename_apart(const FormulaPtr& f, const std::set<std::string>& reserved) {
  NameSupply names(reserved);
  names.reserve(free_props(f));
  std::map<std::string, std::string> scope;
  return rename_rec(f, scope, names);
}

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negated) {
  using namespace fml;
  auto pos = [](const FormulaPtr& g) { return nnf(g, false); };
  auto ngt = [](const FormulaPtr& g) { return nnf(g, true); };
  switch (f->op()) {
    case Op::Atom: return negated ? neg(f) : f;
    case Op::True: return negated ? bottom() : top();
    case Op::False: return negated ? top() : bottom();
    case Op::Not: return nnf(f->child(0), !negated);
    case Op::And:
      return negated ? disj(ngt(f->child(0)), ngt(f->child(1))) : conj(pos(f->child(0)), pos(f->child(1)));
    case Op::Or:
      return negated ? conj(ngt(f->child(0)), ngt(f->child(1))) : disj(pos(f->child(0)), pos(f->child(1)));
    case Op::Implies:
      return negated ? conj(pos(f->child(0)), ngt(f->child(1))) : disj(ngt(f->child(0)), pos(f->child(1)));
    case Op::Iff: {
      const auto &a = f->child(0), &b = f->child(1);
      if (negated) return disj(conj(pos(a), ngt(b)), conj(ngt(a), pos(b)));
      return disj(conj(pos(a), pos(b)), conj(ngt(a), ngt(b)));
    }
    case Op::EX: return negated ? ax(ngt(f->child(0))) : ex(pos(f->child(0)));
    case Op::AX: return negated ? ex(ngt(f->child(0))) : ax(pos(f->child(0)));
    case Op::EF: return negated ? aw(ngt(f->child(0)), bottom()) : eu(top(), pos(f->child(0)));
    case Op::AF: return negated ? ew(ngt(f->child(0)), bottom()) : au(top(), pos(f->child(0)));
    case Op::EG: return negated ? au(top(), ngt(f->child(0))) : ew(pos(f->child(0)), bottom());
    case Op::AG: return negated ? eu(top(), ngt(f->child(0))) : aw(pos(f->child(0)), bottom());
    case Op::EU:
    case Op::AU:
    case Op::EW:
    case Op::AW: {
      const auto &a = f->child(0), &b = f->child(1);
      if (!negated) return fml::with_children(f, {pos(a), pos(b)});
      FormulaPtr nb = ngt(b);
      FormulaPtr rhs = conj(nb, ngt(a));
      switch (f->op()) {
        case Op::EU: return aw(nb, rhs);
        case Op::AU: return ew(nb, rhs);
        case Op::EW: return au(nb, rhs);
        default: return eu(nb, rhs);
      }
    }
    case Op::Exists:
    case Op::Forall:
    case Op::Exists1:
    case Op::Forall1: {
      Op op = f->op();
      if (negated) {
        op = op == Op::Exists    ? Op::Forall
             : op == Op::Forall  ? Op::Exists
             : op == Op::Exists1 ? Op::Forall1
                                 : Op::Exists1;
      }
      return quantifier(op, f->name(), nnf(f->child(0), negated));
    }
    default:
      throw std::logic_error("counting macro reached NNF conversion");
  }
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(expand_derived(f), false); }

FormulaPtr to_core_ctl(const FormulaPtr& f, bool keep_ax) {
  using namespace fml;
  std::vector<FormulaPtr> k;
  k.reserve(f->arity());
  for (const auto& c : f->children()) k.push_back(to_core_ctl(c, keep_ax));
  switch (f->op()) {
    case Op::AX: return keep_ax ? with_children(f, std::move(k)) : neg(ex(neg(k[0])));
    case Op::EF: return eu(top(), k[0]);
    case Op::AF: return au(top(), k[0]);
    case Op::EG: return neg(au(top(), neg(k[0])));
    case Op::AG: return neg(eu(top(), neg(k[0])));
    case Op::EW: return neg(au(neg(k[1]), conj(neg(k[1]), neg(k[0]))));
    case Op::AW: return neg(eu(neg(k[1]), conj(neg(k[1]), neg(k[0]))));
    default: return with_children(f, std::move(k));
  }
}

bool is_prenex(const FormulaPtr& f) {
  const Formula* cur = f.get();
  while (is_quantifier(cur->op())) cur = cur->child(0).get();
  for (const auto& c : cur->children())
    if (contains_quantifier(c)) return false;
  return !is_quantifier(cur->op()) && !is_counting(cur->op());
}

}  // namespace qctl
