#include "qctl/prenex.hpp"

#include <map>
#include <unordered_set>

#include "qctl/errors.hpp"

namespace qctl {

namespace {

// Level 1 is the innermost block; odd levels are existential.
bool level_universal(int level) { return level % 2 == 0; }

class Prenexer {
 public:
  PrenexQbf run(const Qbf& f) {
    envs_.push_back({});
    identity_.push_back(true);
    auto [matrix, top] = rec(f, 0, true);
    (void)top;
    PrenexQbf out;
    out.matrix = matrix;
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      if (it->second.empty()) continue;
      bool universal = level_universal(it->first);
      if (!out.prefix.empty() && out.prefix.back().universal == universal) {
        auto& vars = out.prefix.back().vars;
        vars.insert(vars.end(), it->second.begin(), it->second.end());
      } else {
        out.prefix.push_back({universal, it->second});
      }
    }
    return out;
  }

 private:
  using Env = std::map<std::string, std::string>;

  struct Key {
    const QbfNode* node;
    int env;
    bool pos;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.node) ^ (static_cast<std::size_t>(k.env) * 2654435761u) ^ (k.pos ? 1 : 0);
    }
  };
  struct Result {
    Qbf matrix;
    int top = 0;
  };

  Result rec(const Qbf& f, int env, bool pos) {
    if (!f->has_quantifier() && identity_[env]) return {f, 0};
    Key key{f.get(), env, pos};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Result r = step(f, env, pos);
    memo_.emplace(key, r);
    pinned_.push_back(f);
    return r;
  }

  Result step(const Qbf& f, int env, bool pos) {
    switch (f->op()) {
      case QOp::Var: {
        auto it = envs_[env].find(f->name());
        if (it == envs_[env].end() || it->second == f->name()) return {f, 0};
        return {qbf::var(it->second), 0};
      }
      case QOp::True:
      case QOp::False:
        return {f, 0};
      case QOp::Not: {
        Result r = rec(f->kid(0), env, !pos);
        return {qbf::neg(r.matrix), r.top};
      }
      case QOp::And:
      case QOp::Or: {
        std::vector<Qbf> kids;
        int top = 0;
        for (const auto& k : f->kids()) {
          Result r = rec(k, env, pos);
          kids.push_back(r.matrix);
          top = std::max(top, r.top);
        }
        return {f->op() == QOp::And ? qbf::conj(std::move(kids)) : qbf::disj(std::move(kids)), top};
      }
      case QOp::Implies: {
        Result a = rec(f->kid(0), env, !pos);
        Result b = rec(f->kid(1), env, pos);
        return {qbf::implies(a.matrix, b.matrix), std::max(a.top, b.top)};
      }
      case QOp::Iff: {
        if (!f->kid(0)->has_quantifier() && !f->kid(1)->has_quantifier()) {
          Result a = rec(f->kid(0), env, pos);
          Result b = rec(f->kid(1), env, pos);
          return {qbf::iff(a.matrix, b.matrix), 0};
        }
        Result an = rec(f->kid(0), env, !pos), bp = rec(f->kid(1), env, pos);
        Result bn = rec(f->kid(1), env, !pos), ap = rec(f->kid(0), env, pos);
        int top = std::max(std::max(an.top, bp.top), std::max(bn.top, ap.top));
        return {qbf::conj(qbf::implies(an.matrix, bp.matrix), qbf::implies(bn.matrix, ap.matrix)), top};
      }
      case QOp::Exists:
      case QOp::Forall: {
        bool universal = (f->op() == QOp::Forall) == pos;
        Env inner = envs_[env];
        std::vector<std::string> fresh;
        bool identity = identity_[env];
        for (const auto& v : f->vars()) {
          std::string name = v;
          for (std::size_t n = 1; used_.count(name); ++n) name = v + "~" + std::to_string(n);
          used_.insert(name);
          inner[v] = name;
          identity = identity && name == v;
          fresh.push_back(name);
        }
        int inner_id = static_cast<int>(envs_.size());
        envs_.push_back(std::move(inner));
        identity_.push_back(identity);
        Result body = rec(f->kid(0), inner_id, pos);
        int level = body.top;
        if (level == 0 || level_universal(level) != universal) ++level;
        if (level_universal(level) != universal) ++level;
        auto& slot = levels_[level];
        slot.insert(slot.end(), fresh.begin(), fresh.end());
        return {body.matrix, level};
      }
    }
    return {f, 0};
  }

  std::vector<Env> envs_;
  std::vector<bool> identity_;
  std::unordered_set<std::string> used_;
  std::map<int, std::vector<std::string>> levels_;
  std::unordered_map<Key, Result, KeyHash> memo_;
  std::vector<Qbf> pinned_;
};

}  // namespace

PrenexQbf prenex(const Qbf& f) { return Prenexer().run(f); }

// ---------------------------------------------------------------------------

int Tseitin::var_for(const std::string& name) {
  auto it = vars_.find(name);
  if (it != vars_.end()) return it->second;
  int v = new_var_();
  vars_.emplace(name, v);
  return v;
}

int Tseitin::constant(bool value) {
  if (true_var_ == 0) {
    true_var_ = new_var_();
    add_({true_var_});
  }
  return value ? true_var_ : -true_var_;
}

int Tseitin::encode(const Qbf& f) {
  switch (f->op()) {
    case QOp::Var: return var_for(f->name());
    case QOp::True: return constant(true);
    case QOp::False: return constant(false);
    case QOp::Not: return -encode(f->kid(0));
    default: break;
  }
  if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
  std::vector<int> lits;
  for (const auto& k : f->kids()) lits.push_back(encode(k));
  int t = new_var_();
  switch (f->op()) {
    case QOp::And: {
      std::vector<int> big{t};
      for (int l : lits) {
        add_({-t, l});
        big.push_back(-l);
      }
      add_(std::move(big));
      break;
    }
    case QOp::Or:
    case QOp::Implies: {
      if (f->op() == QOp::Implies) lits[0] = -lits[0];
      std::vector<int> big{-t};
      for (int l : lits) {
        add_({t, -l});
        big.push_back(l);
      }
      add_(std::move(big));
      break;
    }
    case QOp::Iff: {
      int a = lits[0], b = lits[1];
      add_({-t, -a, b});
      add_({-t, a, -b});
      add_({t, a, b});
      add_({t, -a, -b});
      break;
    }
    default:
      throw ValidationError("quantifier inside a propositional matrix");
  }
  memo_.emplace(f.get(), t);
  pinned_.push_back(f);
  return t;
}

void Tseitin::assert_formula(const Qbf& f) {
  switch (f->op()) {
    case QOp::True: return;
    case QOp::False: add_({}); return;
    case QOp::And:
      for (const auto& k : f->kids()) assert_formula(k);
      return;
    default:
      add_({encode(f)});
  }
}

PrenexCnf to_prenex_cnf(const Qbf& f) {
  if (!is_closed(f)) throw ValidationError("formula has free variables");
  PrenexQbf p = prenex(f);
  PrenexCnf out;
  auto new_named = [&out](const std::string& name) {
    out.names.push_back(name);
    return out.num_vars();
  };
  int aux = 0;
  std::vector<int> aux_vars;
  Tseitin ts(
      [&] {
        int v = new_named("_t" + std::to_string(++aux));
        aux_vars.push_back(v);
        return v;
      },
      [&](std::vector<int> c) { out.clauses.push_back(std::move(c)); });
  for (const auto& block : p.prefix) {
    CnfBlock b{block.universal, {}};
    for (const auto& v : block.vars) {
      int id = new_named(v);
      ts.bind(v, id);
      b.vars.push_back(id);
    }
    out.prefix.push_back(std::move(b));
  }
  ts.assert_formula(p.matrix);
  if (!aux_vars.empty()) {
    if (!out.prefix.empty() && !out.prefix.back().universal) {
      auto& vars = out.prefix.back().vars;
      vars.insert(vars.end(), aux_vars.begin(), aux_vars.end());
    } else {
      out.prefix.push_back({false, aux_vars});
    }
  }
  return out;
}

}  // namespace qctl
