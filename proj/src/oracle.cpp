#include "qctl/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "qctl/errors.hpp"

namespace qctl {

namespace {

using StateSet = std::vector<char>;
using Env = std::map<std::string, StateSet>;

std::size_t quantifier_nesting(const FormulaPtr& f) {
  std::size_t d = 0;
  for (const auto& c : f->children()) d = std::max(d, quantifier_nesting(c));
  return d + ((f->op() == Op::Exists || f->op() == Op::Forall) ? 1 : 0);
}

class Evaluator {
 public:
  explicit Evaluator(const KripkeStructure& k) : k_(k), n_(k.num_vertices()), reach_(k) {}

  StateSet sat(const FormulaPtr& f, Env& env) {
    switch (f->op()) {
      case Op::Atom: {
        auto it = env.find(f->name());
        if (it != env.end()) return it->second;
        StateSet s(n_, 0);
        for (VertexIndex v = 0; v < n_; ++v) s[v] = k_.has_label(v, f->name());
        return s;
      }
      case Op::True: return StateSet(n_, 1);
      case Op::False: return StateSet(n_, 0);
      case Op::Not: {
        StateSet s = sat(f->child(0), env);
        for (auto& b : s) b = !b;
        return s;
      }
      case Op::And: case Op::Or: case Op::Implies: case Op::Iff: {
        StateSet a = sat(f->child(0), env);
        StateSet b = sat(f->child(1), env);
        for (VertexIndex v = 0; v < n_; ++v) {
          switch (f->op()) {
            case Op::And: a[v] = a[v] && b[v]; break;
            case Op::Or: a[v] = a[v] || b[v]; break;
            case Op::Implies: a[v] = !a[v] || b[v]; break;
            default: a[v] = (a[v] != 0) == (b[v] != 0); break;
          }
        }
        return a;
      }
      case Op::EX: return pre(sat(f->child(0), env), false);
      case Op::AX: return pre(sat(f->child(0), env), true);
      case Op::EF: return least(StateSet(n_, 1), sat(f->child(0), env), false);
      case Op::AF: return least(StateSet(n_, 1), sat(f->child(0), env), true);
      case Op::EG: return greatest(sat(f->child(0), env), StateSet(n_, 0), false);
      case Op::AG: return greatest(sat(f->child(0), env), StateSet(n_, 0), true);
      case Op::EU: return least(sat(f->child(0), env), sat(f->child(1), env), false);
      case Op::AU: return least(sat(f->child(0), env), sat(f->child(1), env), true);
      case Op::EW: return greatest(sat(f->child(0), env), sat(f->child(1), env), false);
      case Op::AW: return greatest(sat(f->child(0), env), sat(f->child(1), env), true);
      case Op::Exists: case Op::Forall: return quantify(f, env);
      case Op::Exists1: case Op::Forall1: return quantify_one(f, env);
      case Op::UniqueF: {
        StateSet s = sat(f->child(0), env);
        StateSet out(n_, 0);
        for (VertexIndex v = 0; v < n_; ++v) {
          const auto& r = reach_(v);
          out[v] = std::count_if(r.begin(), r.end(), [&](VertexIndex u) { return s[u]; }) == 1;
        }
        return out;
      }
      case Op::UniqueX: case Op::AtLeastX: case Op::ExactlyX: {
        StateSet s = sat(f->child(0), env);
        StateSet out(n_, 0);
        long k = f->op() == Op::UniqueX ? 1 : f->count();
        for (VertexIndex v = 0; v < n_; ++v) {
          auto succ = k_.successors(v);
          long c = std::count_if(succ.begin(), succ.end(), [&](VertexIndex u) { return s[u]; });
          out[v] = f->op() == Op::AtLeastX ? c >= k : c == k;
        }
        return out;
      }
    }
    throw std::logic_error("unhandled formula node");
  }

 private:
  StateSet pre(const StateSet& s, bool universal) const {
    StateSet out(n_, 0);
    for (VertexIndex v = 0; v < n_; ++v) {
      auto succ = k_.successors(v);
      out[v] = universal ? std::all_of(succ.begin(), succ.end(), [&](VertexIndex u) { return s[u]; })
                         : std::any_of(succ.begin(), succ.end(), [&](VertexIndex u) { return s[u]; });
    }
    return out;
  }

  // Z = psi | (phi & pre(Z)), iterated from `start`.
  StateSet iterate(const StateSet& phi, const StateSet& psi, bool universal, StateSet z) const {
    for (std::size_t round = 0;; ++round) {
      if (round > n_ + 1) throw std::logic_error("fixed-point iteration did not stabilize");
      StateSet p = pre(z, universal);
      StateSet next(n_, 0);
      for (VertexIndex v = 0; v < n_; ++v) next[v] = psi[v] || (phi[v] && p[v]);
      if (next == z) return z;
      z = std::move(next);
    }
  }

  StateSet least(const StateSet& phi, const StateSet& psi, bool universal) const {
    return iterate(phi, psi, universal, StateSet(n_, 0));
  }

  StateSet greatest(const StateSet& phi, const StateSet& psi, bool universal) const {
    return iterate(phi, psi, universal, StateSet(n_, 1));
  }

  // Each vertex picks its own labeling, so the result is the pointwise
  // union (or intersection) over all of them.
  StateSet quantify(const FormulaPtr& f, Env& env) {
    bool existential = f->op() == Op::Exists;
    StateSet acc(n_, existential ? 0 : 1);
    auto saved = env.find(f->name()) == env.end() ? std::optional<StateSet>{} : std::optional{env[f->name()]};
    std::uint64_t total = std::uint64_t{1} << n_;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      StateSet label(n_, 0);
      for (VertexIndex v = 0; v < n_; ++v) label[v] = (mask >> v) & 1;
      env[f->name()] = std::move(label);
      StateSet r = sat(f->child(0), env);
      bool saturated = true;
      for (VertexIndex v = 0; v < n_; ++v) {
        acc[v] = existential ? (acc[v] || r[v]) : (acc[v] && r[v]);
        if (acc[v] != (existential ? 1 : 0)) saturated = false;
      }
      if (saturated) break;
    }
    if (saved) env[f->name()] = *saved;
    else env.erase(f->name());
    return acc;
  }

  // Singleton labelings restricted to vertices reachable from the evaluation
  // point.
  StateSet quantify_one(const FormulaPtr& f, Env& env) {
    bool existential = f->op() == Op::Exists1;
    auto saved = env.find(f->name()) == env.end() ? std::optional<StateSet>{} : std::optional{env[f->name()]};
    std::vector<StateSet> per_target(n_);
    for (VertexIndex u = 0; u < n_; ++u) {
      StateSet label(n_, 0);
      label[u] = 1;
      env[f->name()] = std::move(label);
      per_target[u] = sat(f->child(0), env);
    }
    if (saved) env[f->name()] = *saved;
    else env.erase(f->name());
    StateSet out(n_, 0);
    for (VertexIndex v = 0; v < n_; ++v) {
      const auto& r = reach_(v);
      out[v] = existential ? std::any_of(r.begin(), r.end(), [&](VertexIndex u) { return per_target[u][v]; })
                           : std::all_of(r.begin(), r.end(), [&](VertexIndex u) { return per_target[u][v]; });
    }
    return out;
  }

  const KripkeStructure& k_;
  std::size_t n_;
  ReachabilityCache reach_;
};

KripkeStructure restrict_to(const KripkeStructure& k, const std::vector<VertexIndex>& keep,
                            std::vector<VertexIndex>& new_index) {
  new_index.assign(k.num_vertices(), k.num_vertices());
  std::vector<std::string> ids;
  std::vector<std::set<std::string>> labels;
  for (VertexIndex v : keep) {
    new_index[v] = ids.size();
    ids.push_back(k.name(v));
    labels.push_back(k.labels(v));
  }
  std::vector<KripkeStructure::Edge> edges;
  for (VertexIndex v : keep)
    for (VertexIndex w : k.successors(v)) edges.emplace_back(new_index[v], new_index[w]);
  return KripkeStructure(std::move(ids), std::move(edges), std::move(labels), 0);
}

bool eval_on(const KripkeStructure& k, VertexIndex x, const Environment& env, const FormulaPtr& f,
             const OracleOptions& opts, const std::vector<VertexIndex>* index_map) {
  std::size_t n = k.num_vertices();
  std::size_t nesting = quantifier_nesting(f);
  if (nesting > 0 && (n > 62 || n * nesting > opts.scale_limit))
    throw ScaleError("oracle scale exceeded (" + std::to_string(n) + " vertices, quantifier nesting " +
                     std::to_string(nesting) + ")");
  Env e;
  for (const auto& [p, verts] : env) {
    StateSet s(n, 0);
    for (VertexIndex v : verts) {
      VertexIndex w = index_map ? (*index_map)[v] : v;
      if (w < n) s[w] = 1;
    }
    e.emplace(p, std::move(s));
  }
  Evaluator ev(k);
  return ev.sat(f, e).at(x);
}

}  // namespace

bool eval(const KripkeStructure& k, VertexIndex x, const Environment& env, const FormulaPtr& f,
          const OracleOptions& opts) {
  if (x >= k.num_vertices()) throw ValidationError("unknown vertex index " + std::to_string(x));
  for (const auto& [p, verts] : env)
    for (VertexIndex v : verts)
      if (v >= k.num_vertices()) throw ValidationError("environment for '" + p + "' names an unknown vertex");
  if (opts.restrict_to_reachable) {
    std::vector<VertexIndex> index_map;
    KripkeStructure sub = restrict_to(k, k.reachable(x), index_map);
    return eval_on(sub, index_map[x], env, f, opts, &index_map);
  }
  return eval_on(k, x, env, f, opts, nullptr);
}

bool model_check(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f, const OracleOptions& opts) {
  FormulaPtr g = rename_apart(expand_derived(f), k.propositions());
  return eval(k, x, {}, g, opts);
}

}  // namespace qctl
