#include "qctl/qbf.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "qctl/errors.hpp"

namespace qctl {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

QbfNode::QbfNode(QOp op, std::string name, std::vector<std::string> vars, std::vector<Qbf> kids)
    : op_(op), name_(std::move(name)), vars_(std::move(vars)), kids_(std::move(kids)) {
  hash_ = mix(static_cast<std::size_t>(op_) + 1, std::hash<std::string>{}(name_));
  for (const auto& v : vars_) hash_ = mix(hash_, std::hash<std::string>{}(v));
  has_quant_ = op_ == QOp::Exists || op_ == QOp::Forall;
  for (const auto& k : kids_) {
    hash_ = mix(hash_, k->hash());
    size_ = sat_add(size_, k->tree_size());
    has_quant_ = has_quant_ || k->has_quantifier();
  }
}

namespace qbf {

namespace {

Qbf make(QOp op, std::vector<Qbf> kids, std::vector<std::string> vars = {}) {
  return std::make_shared<const QbfNode>(op, std::string{}, std::move(vars), std::move(kids));
}

Qbf nary(QOp op, std::vector<Qbf> kids) {
  const QOp unit = op == QOp::And ? QOp::True : QOp::False;
  const QOp zero = op == QOp::And ? QOp::False : QOp::True;
  std::vector<Qbf> keep;
  keep.reserve(kids.size());
  for (auto& k : kids) {
    if (k->op() == zero) return k;
    if (k->op() == unit) continue;
    keep.push_back(std::move(k));
  }
  if (keep.empty()) return constant(op == QOp::And);
  if (keep.size() == 1) return keep.front();
  return make(op, std::move(keep));
}

}  // namespace

Qbf var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return std::make_shared<const QbfNode>(QOp::Var, std::move(name), std::vector<std::string>{}, std::vector<Qbf>{});
}

Qbf top() {
  static const Qbf t = make(QOp::True, {});
  return t;
}

Qbf bottom() {
  static const Qbf f = make(QOp::False, {});
  return f;
}

Qbf constant(bool b) { return b ? top() : bottom(); }

Qbf neg(const Qbf& a) {
  if (a->op() == QOp::True) return bottom();
  if (a->op() == QOp::False) return top();
  if (a->op() == QOp::Not) return a->kid(0);
  return make(QOp::Not, {a});
}

Qbf conj(std::vector<Qbf> kids) { return nary(QOp::And, std::move(kids)); }
Qbf disj(std::vector<Qbf> kids) { return nary(QOp::Or, std::move(kids)); }
Qbf conj(const Qbf& a, const Qbf& b) { return conj(std::vector<Qbf>{a, b}); }
Qbf disj(const Qbf& a, const Qbf& b) { return disj(std::vector<Qbf>{a, b}); }

Qbf implies(const Qbf& a, const Qbf& b) {
  if (a->op() == QOp::True) return b;
  if (a->op() == QOp::False || b->op() == QOp::True) return top();
  if (b->op() == QOp::False) return neg(a);
  return make(QOp::Implies, {a, b});
}

Qbf iff(const Qbf& a, const Qbf& b) {
  if (a->op() == QOp::True) return b;
  if (a->op() == QOp::False) return neg(b);
  if (b->op() == QOp::True) return a;
  if (b->op() == QOp::False) return neg(a);
  return make(QOp::Iff, {a, b});
}

Qbf quantifier(bool universal, std::vector<std::string> vars, const Qbf& body) {
  if (body->is_const()) return body;
  std::vector<std::string> uniq;
  uniq.reserve(vars.size());
  std::unordered_set<std::string> seen;
  for (auto& v : vars)
    if (seen.insert(v).second) uniq.push_back(std::move(v));
  if (uniq.empty()) return body;
  return make(universal ? QOp::Forall : QOp::Exists, {body}, std::move(uniq));
}

Qbf exists(std::vector<std::string> vars, const Qbf& body) { return quantifier(false, std::move(vars), body); }
Qbf forall(std::vector<std::string> vars, const Qbf& body) { return quantifier(true, std::move(vars), body); }

}  // namespace qbf

std::string var_token(const std::string& prop, const std::string& vertex) { return prop + "@" + vertex; }

std::string bit_token(const std::string& prop, const std::string& vertex, unsigned bit) {
  return prop + "@" + vertex + "#" + std::to_string(bit);
}

bool qbf_equal(const Qbf& a, const Qbf& b) {
  if (a == b) return true;
  if (a->hash() != b->hash() || a->op() != b->op() || a->name() != b->name() || a->vars() != b->vars() ||
      a->kids().size() != b->kids().size())
    return false;
  for (std::size_t i = 0; i < a->kids().size(); ++i)
    if (!qbf_equal(a->kid(i), b->kid(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

bool eval_rec(Valuation& v, const Qbf& f) {
  switch (f->op()) {
    case QOp::Var: {
      auto it = v.find(f->name());
      if (it == v.end()) throw ValidationError("valuation does not cover free variable '" + f->name() + "'");
      return it->second;
    }
    case QOp::True: return true;
    case QOp::False: return false;
    case QOp::Not: return !eval_rec(v, f->kid(0));
    case QOp::And:
      for (const auto& k : f->kids())
        if (!eval_rec(v, k)) return false;
      return true;
    case QOp::Or:
      for (const auto& k : f->kids())
        if (eval_rec(v, k)) return true;
      return false;
    case QOp::Implies: return !eval_rec(v, f->kid(0)) || eval_rec(v, f->kid(1));
    case QOp::Iff: return eval_rec(v, f->kid(0)) == eval_rec(v, f->kid(1));
    case QOp::Exists:
    case QOp::Forall: {
      const auto& vars = f->vars();
      if (vars.size() > 30) throw ScaleError("too many bound variables to expand");
      std::vector<std::optional<bool>> saved;
      for (const auto& name : vars) {
        auto it = v.find(name);
        saved.push_back(it == v.end() ? std::nullopt : std::optional<bool>(it->second));
      }
      bool universal = f->op() == QOp::Forall;
      bool result = universal;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
        for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = (mask >> i) & 1;
        bool r = eval_rec(v, f->kid(0));
        if (r != universal) {
          result = r;
          break;
        }
      }
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (saved[i]) v[vars[i]] = *saved[i];
        else v.erase(vars[i]);
      }
      return result;
    }
  }
  return false;
}

using FreeMemo = std::unordered_map<const QbfNode*, std::shared_ptr<const std::set<std::string>>>;

std::shared_ptr<const std::set<std::string>> free_rec(const Qbf& f, FreeMemo& memo) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  auto out = std::make_shared<std::set<std::string>>();
  if (f->op() == QOp::Var) {
    out->insert(f->name());
  } else {
    for (const auto& k : f->kids()) {
      auto s = free_rec(k, memo);
      out->insert(s->begin(), s->end());
    }
    if (f->op() == QOp::Exists || f->op() == QOp::Forall)
      for (const auto& b : f->vars()) out->erase(b);
  }
  memo.emplace(f.get(), out);
  return out;
}

class Simplifier {
 public:
  Qbf run(const Qbf& f) {
    if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    Qbf r = step(f);
    memo_.emplace(f.get(), r);
    keep_.push_back(f);
    return r;
  }

 private:
  Qbf step(const Qbf& f) {
    switch (f->op()) {
      case QOp::Var: case QOp::True: case QOp::False:
        return f;
      case QOp::Not:
        return qbf::neg(run(f->kid(0)));
      case QOp::And:
      case QOp::Or:
        return nary(f);
      case QOp::Implies: {
        Qbf a = run(f->kid(0)), b = run(f->kid(1));
        if (qbf_equal(a, b)) return qbf::top();
        return qbf::implies(a, b);
      }
      case QOp::Iff: {
        Qbf a = run(f->kid(0)), b = run(f->kid(1));
        if (qbf_equal(a, b)) return qbf::top();
        if (complementary(a, b)) return qbf::bottom();
        return qbf::iff(a, b);
      }
      case QOp::Exists:
      case QOp::Forall:
        return quant(f);
    }
    return f;
  }

  static bool complementary(const Qbf& a, const Qbf& b) {
    return (a->op() == QOp::Not && qbf_equal(a->kid(0), b)) || (b->op() == QOp::Not && qbf_equal(b->kid(0), a));
  }

  Qbf nary(const Qbf& f) {
    const bool is_and = f->op() == QOp::And;
    std::vector<Qbf> flat;
    std::function<void(const Qbf&)> add = [&](const Qbf& k) {
      if (k->op() == f->op()) {
        for (const auto& kk : k->kids()) add(kk);
      } else {
        flat.push_back(k);
      }
    };
    for (const auto& k : f->kids()) add(run(k));

    std::unordered_set<Qbf, QbfHash, QbfEq> seen;
    std::vector<Qbf> keep;
    for (auto& k : flat) {
      if (k->op() == (is_and ? QOp::False : QOp::True)) return k;
      if (k->op() == (is_and ? QOp::True : QOp::False)) continue;
      if (!seen.insert(k).second) continue;
      keep.push_back(k);
    }
    for (const auto& k : keep) {
      Qbf other = k->op() == QOp::Not ? k->kid(0) : qbf::neg(k);
      if (seen.count(other)) return qbf::constant(!is_and);
    }
    return is_and ? qbf::conj(std::move(keep)) : qbf::disj(std::move(keep));
  }

  Qbf quant(const Qbf& f) {
    const bool universal = f->op() == QOp::Forall;
    Qbf body = run(f->kid(0));
    std::vector<std::string> vars = f->vars();
    // Merge directly nested blocks of the same kind.
    while (body->op() == f->op()) {
      vars.insert(vars.end(), body->vars().begin(), body->vars().end());
      body = body->kid(0);
    }
    if (body->is_const()) return body;
    auto free = free_rec(body, free_memo_);
    std::vector<std::string> used;
    for (const auto& v : vars)
      if (free->count(v)) used.push_back(v);
    if (used.empty()) return body;
    const Qbf* lit = body->op() == QOp::Not ? &body->kid(0) : &body;
    if ((*lit)->op() == QOp::Var && std::find(used.begin(), used.end(), (*lit)->name()) != used.end())
      return qbf::constant(!universal);
    return qbf::quantifier(universal, std::move(used), body);
  }

  std::unordered_map<const QbfNode*, Qbf> memo_;
  std::vector<Qbf> keep_;  // pins memo keys
  FreeMemo free_memo_;
};

class Substituter {
 public:
  explicit Substituter(const std::map<std::string, bool>& values) : values_(values) {}

  Qbf run(const Qbf& f) {
    if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    Qbf r = step(f);
    memo_.emplace(f.get(), r);
    keep_.push_back(f);
    return r;
  }

 private:
  Qbf step(const Qbf& f) {
    switch (f->op()) {
      case QOp::Var: {
        auto it = values_.find(f->name());
        return it == values_.end() ? f : qbf::constant(it->second);
      }
      case QOp::True: case QOp::False: return f;
      case QOp::Not: return qbf::neg(run(f->kid(0)));
      case QOp::And:
      case QOp::Or: {
        std::vector<Qbf> kids;
        kids.reserve(f->kids().size());
        bool same = true;
        for (const auto& k : f->kids()) {
          kids.push_back(run(k));
          same = same && kids.back() == k;
        }
        if (same) return f;
        return f->op() == QOp::And ? qbf::conj(std::move(kids)) : qbf::disj(std::move(kids));
      }
      case QOp::Implies: return qbf::implies(run(f->kid(0)), run(f->kid(1)));
      case QOp::Iff: return qbf::iff(run(f->kid(0)), run(f->kid(1)));
      case QOp::Exists:
      case QOp::Forall: {
        bool shadows = std::any_of(f->vars().begin(), f->vars().end(),
                                   [&](const std::string& v) { return values_.count(v) != 0; });
        Qbf body;
        if (shadows) {
          auto inner = values_;
          for (const auto& v : f->vars()) inner.erase(v);
          body = Substituter(inner).run(f->kid(0));
        } else {
          body = run(f->kid(0));
        }
        if (body == f->kid(0)) return f;
        return qbf::quantifier(f->op() == QOp::Forall, f->vars(), body);
      }
    }
    return f;
  }

  const std::map<std::string, bool>& values_;
  std::unordered_map<const QbfNode*, Qbf> memo_;
  std::vector<Qbf> keep_;
};

void render(const Qbf& f, std::string& out) {
  switch (f->op()) {
    case QOp::Var: out += f->name(); return;
    case QOp::True: out += "true"; return;
    case QOp::False: out += "false"; return;
    case QOp::Not: out += '!'; render(f->kid(0), out); return;
    case QOp::And: case QOp::Or: case QOp::Implies: case QOp::Iff: {
      const char* sep = f->op() == QOp::And ? " & " : f->op() == QOp::Or ? " | " : f->op() == QOp::Implies ? " -> " : " <-> ";
      out += '(';
      for (std::size_t i = 0; i < f->kids().size(); ++i) {
        if (i) out += sep;
        render(f->kid(i), out);
      }
      out += ')';
      return;
    }
    case QOp::Exists: case QOp::Forall:
      out += f->op() == QOp::Exists ? "exists" : "forall";
      for (const auto& v : f->vars()) out += ' ' + v;
      out += ". ";
      render(f->kid(0), out);
      return;
  }
}

}  // namespace

bool eval_qbf(const Valuation& v, const Qbf& f) {
  Valuation scratch = v;
  return eval_rec(scratch, f);
}

std::set<std::string> free_vars(const Qbf& f) {
  FreeMemo memo;
  return *free_rec(f, memo);
}

bool is_closed(const Qbf& f) { return free_vars(f).empty(); }

Qbf simplify(const Qbf& f) { return Simplifier().run(f); }

Qbf substitute(const Qbf& f, const std::map<std::string, bool>& values) {
  if (values.empty()) return f;
  return Substituter(values).run(f);
}

std::size_t dag_size(const Qbf& f) {
  std::unordered_set<const QbfNode*> seen;
  std::vector<const QbfNode*> stack{f.get()};
  while (!stack.empty()) {
    const QbfNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& k : n->kids()) stack.push_back(k.get());
  }
  return seen.size();
}

std::size_t quantified_var_count(const Qbf& f) {
  std::unordered_set<const QbfNode*> seen;
  std::set<std::string> vars;
  std::vector<const QbfNode*> stack{f.get()};
  while (!stack.empty()) {
    const QbfNode* n = stack.back();
    stack.pop_back();
    if (!n->has_quantifier() || !seen.insert(n).second) continue;
    vars.insert(n->vars().begin(), n->vars().end());
    for (const auto& k : n->kids()) stack.push_back(k.get());
  }
  return vars.size();
}

std::string to_string(const Qbf& f) {
  std::string out;
  render(f, out);
  return out;
}

}  // namespace qctl
