#include "qctl/reduce.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <optional>
#include <tuple>
#include <map>
#include <unordered_map>

#include "qctl/errors.hpp"
#include "qctl/prenex.hpp"
#include "qctl/transform.hpp"

namespace qctl {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::UU: return "uu";
    case Strategy::FP: return "fp";
    case Strategy::FPF: return "fpf";
    case Strategy::X: return "x";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "uu") return Strategy::UU;
  if (l == "fp") return Strategy::FP;
  if (l == "fpf") return Strategy::FPF;
  if (l == "x") return Strategy::X;
  throw ValidationError("unknown strategy '" + s + "'");
}

unsigned bit_width(std::size_t n) {
  unsigned w = 0;
  while ((std::size_t{1} << w) < n + 1) ++w;
  return w;
}

std::vector<std::string> kappa_bits(const std::string& prop, const std::string& vertex, unsigned width) {
  std::vector<std::string> out;
  for (unsigned b = 0; b < width; ++b) out.push_back(bit_token(prop, vertex, b));
  return out;
}

Qbf bv_equals(const std::vector<std::string>& bits, std::size_t value) {
  if (bits.size() < 64 && (value >> bits.size()) != 0) return qbf::bottom();
  std::vector<Qbf> lits;
  for (std::size_t b = 0; b < bits.size(); ++b) {
    Qbf v = qbf::var(bits[b]);
    lits.push_back(((value >> b) & 1) ? v : qbf::neg(v));
  }
  return qbf::conj(std::move(lits));
}

Qbf bv_less(const std::vector<std::string>& bits, std::size_t value) {
  if (value == 0) return qbf::bottom();
  if (bits.size() < 64 && (value >> bits.size()) != 0) return qbf::top();
  // From the least significant bit upwards: less_i compares bits 0..i.
  Qbf less = qbf::bottom();
  for (std::size_t b = 0; b < bits.size(); ++b) {
    Qbf nb = qbf::neg(qbf::var(bits[b]));
    less = ((value >> b) & 1) ? qbf::disj(nb, less) : qbf::conj(nb, less);
  }
  return less;
}

bool is_prenex_qbf(const Qbf& f) {
  Qbf cur = f;
  while (cur->op() == QOp::Exists || cur->op() == QOp::Forall) cur = cur->kid(0);
  return !cur->has_quantifier();
}

Valuation valuation_from_env(const Environment& env, const KripkeStructure& k) {
  Valuation v;
  for (const auto& [p, set] : env) {
    for (VertexIndex x = 0; x < k.num_vertices(); ++x) v[var_token(p, k.name(x))] = set.count(x) != 0;
  }
  return v;
}

namespace {

std::string vector_bit(const std::string& prop, unsigned b) { return prop + "#" + std::to_string(b); }

std::vector<std::string> vector_bits(const std::string& prop, unsigned width) {
  std::vector<std::string> out;
  for (unsigned b = 0; b < width; ++b) out.push_back(vector_bit(prop, b));
  return out;
}

class Translator {
 public:
  Translator(const KripkeStructure& k, Strategy strategy, Exists1Mode mode, bool fold)
      : k_(k), strategy_(strategy), mode_(mode), fold_(fold), reach_(k), words_((k.num_vertices() + 63) / 64) {
    layers_.emplace_back();
  }

  void add_var_prop(const std::string& p) { var_props_.insert(p); }
  void add_vector_prop(const std::string& p, unsigned width) { vector_props_[p] = width; }
  void add_until_kappa(const std::string& p, unsigned width, std::size_t bound) { until_[p] = {width, bound}; }

  // Registers every quantified proposition of `f` according to the mode.
  void scan(const FormulaPtr& f) {
    switch (f->op()) {
      case Op::Exists:
      case Op::Forall:
        add_var_prop(f->name());
        break;
      case Op::Exists1:
      case Op::Forall1:
        if (mode_ == Exists1Mode::Onehot) add_var_prop(f->name());
        break;
      default:
        break;
    }
    for (const auto& c : f->children()) scan(c);
  }

  const std::vector<VertexIndex>& reach(VertexIndex y) { return reach_(y); }
  std::span<const VertexIndex> succ(VertexIndex y) const { return k_.successors(y); }

  int child_layer(int layer, const std::string& p, VertexIndex v) {
    auto key = std::make_tuple(layer, p, v);
    if (auto it = layer_ids_.find(key); it != layer_ids_.end()) return it->second;
    auto map = layers_[layer];
    map[p] = v;
    int id = static_cast<int>(layers_.size());
    layers_.push_back(std::move(map));
    layer_ids_.emplace(key, id);
    return id;
  }

  Qbf atom(const std::string& p, VertexIndex y, int layer) const {
    if (layer != 0) {
      const auto& m = layers_[layer];
      if (auto it = m.find(p); it != m.end()) return qbf::constant(it->second == y);
    }
    if (var_props_.count(p)) return qbf::var(var_token(p, k_.name(y)));
    if (auto it = until_.find(p); it != until_.end()) {
      return bv_less(kappa_bits(p, k_.name(y), it->second.first), it->second.second);
    }
    if (auto it = vector_props_.find(p); it != vector_props_.end()) return bv_equals(vector_bits(p, it->second), y);
    return qbf::constant(k_.has_label(y, p));
  }

  Qbf tr(const FormulaPtr& f, VertexIndex y, int layer) {
    switch (f->op()) {
      case Op::Atom: return atom(f->name(), y, layer);
      case Op::True: return qbf::top();
      case Op::False: return qbf::bottom();
      default: break;
    }
    Key key{f.get(), y, layer};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Qbf r = step(f, y, layer);
    memo_.emplace(key, r);
    check_budget();
    return r;
  }

  std::vector<std::string> all_vertex_vars(const std::string& p) const {
    std::vector<std::string> vars;
    for (VertexIndex v = 0; v < k_.num_vertices(); ++v) vars.push_back(var_token(p, k_.name(v)));
    return vars;
  }

  // Exactly one of p@v for v in `within`, p false elsewhere.
  Qbf onehot_guard(const std::string& p, const std::vector<VertexIndex>& within) const {
    std::vector<char> in(k_.num_vertices(), 0);
    for (VertexIndex v : within) in[v] = 1;
    std::vector<Qbf> parts, some;
    for (VertexIndex v : within) some.push_back(qbf::var(var_token(p, k_.name(v))));
    parts.push_back(qbf::disj(some));
    for (std::size_t i = 0; i < within.size(); ++i) {
      for (std::size_t j = i + 1; j < within.size(); ++j) {
        parts.push_back(qbf::disj(qbf::neg(some[i]), qbf::neg(some[j])));
      }
    }
    for (VertexIndex v = 0; v < k_.num_vertices(); ++v) {
      if (!in[v]) parts.push_back(qbf::neg(qbf::var(var_token(p, k_.name(v)))));
    }
    return qbf::conj(std::move(parts));
  }

 private:
  struct Key {
    const Formula* f;
    VertexIndex y;
    int layer;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<const void*>{}(k.f);
      h ^= k.y * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= static_cast<std::size_t>(k.layer) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
      return h;
    }
  };

  Qbf step(const FormulaPtr& f, VertexIndex y, int layer) {
    switch (f->op()) {
      case Op::Not: return qbf::neg(tr(f->child(0), y, layer));
      case Op::And:
      case Op::Or: {
        bool is_and = f->op() == Op::And;
        std::vector<Qbf> kids;
        for (const auto& c : f->children()) {
          Qbf q = tr(c, y, layer);
          if (q->is_const() && (q->op() == QOp::True) != is_and) return q;
          kids.push_back(q);
        }
        return is_and ? qbf::conj(std::move(kids)) : qbf::disj(std::move(kids));
      }
      case Op::Implies: return qbf::implies(tr(f->child(0), y, layer), tr(f->child(1), y, layer));
      case Op::Iff: return qbf::iff(tr(f->child(0), y, layer), tr(f->child(1), y, layer));
      case Op::EX:
      case Op::AX: {
        bool is_and = f->op() == Op::AX;
        std::vector<Qbf> kids;
        for (VertexIndex s : succ(y)) {
          Qbf q = tr(f->child(0), s, layer);
          if (q->is_const() && (q->op() == QOp::True) != is_and) return q;
          kids.push_back(q);
        }
        return is_and ? qbf::conj(std::move(kids)) : qbf::disj(std::move(kids));
      }
      case Op::AG: {
        if (strategy_ == Strategy::UU) break;
        std::vector<Qbf> kids;
        for (VertexIndex z : reach(y)) {
          Qbf q = tr(f->child(0), z, layer);
          if (q->op() == QOp::False) return q;
          kids.push_back(q);
        }
        return qbf::conj(std::move(kids));
      }
      case Op::EU:
      case Op::AU:
        if (strategy_ != Strategy::UU) break;
        return until(f, y, layer);
      case Op::Exists:
      case Op::Forall:
        return qbf::quantifier(f->op() == Op::Forall, all_vertex_vars(f->name()), tr(f->child(0), y, layer));
      case Op::Exists1:
      case Op::Forall1:
        return unique(f, y, layer);
      default:
        break;
    }
    throw ValidationError("operator not supported by method " + strategy_name(strategy_) + ": " + to_string(f));
  }

  Qbf unique(const FormulaPtr& f, VertexIndex y, int layer) {
    bool universal = f->op() == Op::Forall1;
    const std::string& p = f->name();
    switch (mode_) {
      case Exists1Mode::Default:
      case Exists1Mode::Propositional: {
        std::vector<Qbf> kids;
        std::vector<VertexIndex> r = reach(y);
        for (VertexIndex v : r) {
          Qbf q = tr(f->child(0), y, child_layer(layer, p, v));
          if (q->is_const() && (q->op() == QOp::True) != universal) return q;
          kids.push_back(q);
        }
        return universal ? qbf::conj(std::move(kids)) : qbf::disj(std::move(kids));
      }
      case Exists1Mode::Onehot: {
        Qbf guard = onehot_guard(p, reach(y));
        Qbf body = tr(f->child(0), y, layer);
        return universal ? qbf::forall(all_vertex_vars(p), qbf::implies(guard, body))
                         : qbf::exists(all_vertex_vars(p), qbf::conj(guard, body));
      }
      case Exists1Mode::Bitvector:
        break;
    }
    throw ValidationError("bit-vector exists1 is only available in prefix position with method x");
  }

  // ---- method UU --------------------------------------------------------

  using Bits = std::vector<std::uint64_t>;

  const Bits& reach_bits(VertexIndex y) {
    auto it = reach_bits_.find(y);
    if (it != reach_bits_.end()) return it->second;
    Bits b(words_, 0);
    for (VertexIndex z : reach(y)) b[z / 64] |= std::uint64_t{1} << (z % 64);
    return reach_bits_.emplace(y, std::move(b)).first->second;
  }

  static bool test(const Bits& b, VertexIndex v) { return (b[v / 64] >> (v % 64)) & 1; }

  Qbf until(const FormulaPtr& f, VertexIndex y, int layer) {
    if (fold_) {
      if (auto c = fold_until(f, y, layer)) return qbf::constant(*c);
    }
    Bits visited(words_, 0);
    visited[y / 64] |= std::uint64_t{1} << (y % 64);
    return until_rec(f, y, std::move(visited), layer);
  }

  // Set-based evaluation when both operands are constant below y.
  std::optional<bool> fold_until(const FormulaPtr& f, VertexIndex y, int layer) {
    auto& st = fold_state_[{f.get(), layer}];
    if (st.empty()) st.assign(k_.num_vertices(), 0);
    if (st[y] == 1 || st[y] == 2) return st[y] == 1;
    if (st[y] == 3) return std::nullopt;
    const auto r = reach(y);
    std::size_t n = k_.num_vertices();
    std::vector<char> phi(n, 0), psi(n, 0);
    for (VertexIndex z : r) {
      Qbf b = tr(f->child(1), z, layer);
      if (!b->is_const()) return st[y] = 3, std::nullopt;
      psi[z] = b->op() == QOp::True;
      if (psi[z]) continue;
      Qbf a = tr(f->child(0), z, layer);
      if (!a->is_const()) return st[y] = 3, std::nullopt;
      phi[z] = a->op() == QOp::True;
    }
    bool universal = f->op() == Op::AU;
    std::vector<char> z_set(n, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (VertexIndex z : r) {
        if (z_set[z]) continue;
        bool in = psi[z];
        if (!in && phi[z]) {
          auto ss = k_.successors(z);
          in = universal ? std::all_of(ss.begin(), ss.end(), [&](VertexIndex s) { return z_set[s] != 0; })
                         : std::any_of(ss.begin(), ss.end(), [&](VertexIndex s) { return z_set[s] != 0; });
        }
        if (in) {
          z_set[z] = 1;
          changed = true;
        }
      }
    }
    for (VertexIndex z : r) st[z] = z_set[z] ? 1 : 2;
    return z_set[y] != 0;
  }

  Qbf until_rec(const FormulaPtr& f, VertexIndex y, Bits visited, int layer) {
    const Bits& rb = reach_bits(y);
    for (std::size_t i = 0; i < words_; ++i) visited[i] &= rb[i];
    std::string key(sizeof(const void*) + sizeof(VertexIndex) + sizeof(int) + words_ * 8, '\0');
    const Formula* fp = f.get();
    char* out = key.data();
    std::memcpy(out, &fp, sizeof fp);
    out += sizeof fp;
    std::memcpy(out, &y, sizeof y);
    out += sizeof y;
    std::memcpy(out, &layer, sizeof layer);
    out += sizeof layer;
    std::memcpy(out, visited.data(), words_ * 8);
    if (auto it = until_memo_.find(key); it != until_memo_.end()) return it->second;

    Qbf psi = tr(f->child(1), y, layer);
    Qbf result;
    if (psi->op() == QOp::True) {
      result = psi;
    } else {
      Qbf phi = tr(f->child(0), y, layer);
      std::vector<Qbf> next;
      bool universal = f->op() == Op::AU;
      bool back_edge = false;
      if (phi->op() != QOp::False) {
        for (VertexIndex s : succ(y)) {
          if (test(visited, s)) {
            back_edge = true;
            if (universal) break;
            continue;
          }
          Bits v2 = visited;
          v2[s / 64] |= std::uint64_t{1} << (s % 64);
          next.push_back(until_rec(f, s, std::move(v2), layer));
        }
      }
      if (phi->op() == QOp::False || (universal && back_edge)) {
        result = psi;
      } else {
        Qbf step = universal ? qbf::conj(std::move(next)) : qbf::disj(std::move(next));
        result = qbf::disj(psi, qbf::conj(phi, step));
      }
    }
    until_memo_.emplace(std::move(key), result);
    check_budget();
    return result;
  }

  // Memo entries allowed before a translation is declared out of scale.
  static constexpr std::size_t kMaxEntries = 4'000'000;

  void check_budget() const {
    if (memo_.size() + until_memo_.size() + layers_.size() > kMaxEntries) {
      throw ScaleError("translation exceeds " + std::to_string(kMaxEntries) + " memo entries");
    }
  }

  const KripkeStructure& k_;
  Strategy strategy_;
  Exists1Mode mode_;
  bool fold_;
  ReachabilityCache reach_;
  std::size_t words_;

  std::set<std::string> var_props_;
  std::map<std::string, unsigned> vector_props_;
  std::map<std::string, std::pair<unsigned, std::size_t>> until_;

  std::vector<std::map<std::string, VertexIndex>> layers_;
  std::map<std::tuple<int, std::string, VertexIndex>, int> layer_ids_;
  std::unordered_map<Key, Qbf, KeyHash> memo_;
  std::unordered_map<std::string, Qbf> until_memo_;
  std::unordered_map<VertexIndex, Bits> reach_bits_;
  std::map<std::pair<const Formula*, int>, std::vector<char>> fold_state_;
};

std::set<std::string> reserved_names(const KripkeStructure& k, const FormulaPtr& f) {
  std::set<std::string> r = k.propositions();
  auto all = all_props(f);
  r.insert(all.begin(), all.end());
  return r;
}

Exists1Mode resolve(Exists1Mode m, Exists1Mode fallback) { return m == Exists1Mode::Default ? fallback : m; }

void check_vertex(const KripkeStructure& k, VertexIndex x) {
  if (x >= k.num_vertices()) throw ValidationError("unknown initial vertex");
}

Qbf translate_fp(const KripkeStructure& k, VertexIndex x, const FormulaPtr& g, Exists1Mode mode) {
  Translator t(k, Strategy::FP, mode, false);
  t.scan(g);
  return t.tr(g, x, 0);
}

}  // namespace

Qbf reduce_uu(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f, const std::set<std::string>& env_props,
              const UUOptions& opts) {
  check_vertex(k, x);
  Exists1Mode mode = resolve(opts.exists1_mode, Exists1Mode::Propositional);
  if (mode == Exists1Mode::Bitvector) throw ValidationError("bit-vector exists1 requires method x");
  std::set<std::string> reserved = k.propositions();
  reserved.insert(env_props.begin(), env_props.end());
  FormulaPtr g = rename_apart(f, reserved);
  NameSupply names(reserved_names(k, g));
  g = to_core_ctl(expand_derived(g, names), true);
  Translator t(k, Strategy::UU, mode, opts.fold_constant_until);
  for (const auto& p : env_props) t.add_var_prop(p);
  t.scan(g);
  return t.tr(g, x, 0);
}

Qbf reduce_fp(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f, Exists1Mode mode) {
  check_vertex(k, x);
  mode = resolve(mode, Exists1Mode::Propositional);
  if (mode == Exists1Mode::Bitvector) throw ValidationError("bit-vector exists1 requires method x");
  FormulaPtr g = rename_apart(f, k.propositions());
  NameSupply names(reserved_names(k, g));
  return translate_fp(k, x, fpc(g, names), mode);
}

Qbf reduce_fpf(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f, Exists1Mode mode) {
  check_vertex(k, x);
  mode = resolve(mode, Exists1Mode::Propositional);
  if (mode == Exists1Mode::Bitvector) throw ValidationError("bit-vector exists1 requires method x");
  FormulaPtr g = rename_apart(f, k.propositions());
  NameSupply names(reserved_names(k, g));
  FlatFormula flat = flatten_equiv(g, names);
  return translate_fp(k, x, fpc(to_formula(flat), names), mode);
}

Qbf reduce_x(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f, std::optional<std::size_t> bound,
             Exists1Mode mode) {
  check_vertex(k, x);
  mode = resolve(mode, Exists1Mode::Bitvector);
  const std::size_t n = k.num_vertices();
  if (bound && (*bound < 1 || *bound > n)) throw ValidationError("until bound must lie in 1..|V|");
  // An explicit bound admits distances up to and including it.
  const std::size_t limit = bound ? *bound + 1 : n;
  const unsigned width = bit_width(n);

  FormulaPtr g = rename_apart(f, k.propositions());
  NameSupply names(reserved_names(k, g));
  FlatFormula flat = flatten_nnf(g, names);

  Translator t(k, Strategy::X, mode == Exists1Mode::Bitvector ? Exists1Mode::Propositional : mode, false);
  for (const auto& b : flat.prefix) {
    if (b.kind == Op::Exists || b.kind == Op::Forall) t.add_var_prop(b.prop);
    else if (mode == Exists1Mode::Bitvector) t.add_vector_prop(b.prop, width);
    else if (mode == Exists1Mode::Onehot) t.add_var_prop(b.prop);
  }
  for (const auto& c : flat.clauses) {
    if (c.mode == KappaMode::LeastFixedPoint) t.add_until_kappa(c.kappa, width, limit);
    else t.add_var_prop(c.kappa);
  }
  const std::vector<VertexIndex> region = t.reach(x);

  std::vector<std::string> kappa_vars;
  for (const auto& c : flat.clauses) {
    for (VertexIndex y : region) {
      if (c.mode == KappaMode::LeastFixedPoint) {
        for (auto& b : kappa_bits(c.kappa, k.name(y), width)) kappa_vars.push_back(std::move(b));
      } else {
        kappa_vars.push_back(var_token(c.kappa, k.name(y)));
      }
    }
  }

  auto matrix = [&](int layer) {
    std::vector<Qbf> parts{t.tr(flat.phi0, x, layer)};
    for (const auto& c : flat.clauses) {
      const FormulaPtr& th = c.theta;
      auto kv = [&](VertexIndex y) { return qbf::var(var_token(c.kappa, k.name(y))); };
      auto bits = [&](VertexIndex y) { return kappa_bits(c.kappa, k.name(y), width); };
      for (VertexIndex y : region) {
        auto ss = t.succ(y);
        switch (th->op()) {
          case Op::EX:
          case Op::AX: {
            std::vector<Qbf> s;
            for (VertexIndex z : ss) s.push_back(t.tr(th->child(0), z, layer));
            parts.push_back(qbf::implies(kv(y), th->op() == Op::EX ? qbf::disj(s) : qbf::conj(s)));
            break;
          }
          case Op::AG: {
            std::vector<Qbf> s;
            for (VertexIndex z : t.reach(y)) s.push_back(t.tr(th->child(0), z, layer));
            parts.push_back(qbf::implies(kv(y), qbf::conj(s)));
            break;
          }
          case Op::EW:
          case Op::AW: {
            std::vector<Qbf> s;
            for (VertexIndex z : ss) s.push_back(kv(z));
            Qbf step = th->op() == Op::EW ? qbf::disj(s) : qbf::conj(s);
            Qbf body = qbf::disj(t.tr(th->child(1), y, layer), qbf::conj(t.tr(th->child(0), y, layer), step));
            parts.push_back(qbf::implies(kv(y), body));
            break;
          }
          case Op::EU:
          case Op::AU: {
            auto by = bits(y);
            parts.push_back(qbf::implies(bv_equals(by, 0), t.tr(th->child(1), y, layer)));
            Qbf phi = t.tr(th->child(0), y, layer);
            for (std::size_t d = 1; d < limit; ++d) {
              std::vector<Qbf> s;
              for (VertexIndex z : ss) {
                s.push_back(th->op() == Op::EU ? bv_equals(bits(z), d - 1) : bv_less(bits(z), d));
              }
              Qbf step = th->op() == Op::EU ? qbf::disj(s) : qbf::conj(s);
              parts.push_back(qbf::implies(bv_equals(by, d), qbf::conj(phi, step)));
            }
            break;
          }
          default:
            throw ValidationError("unexpected defining formula: " + to_string(th));
        }
      }
    }
    return qbf::conj(std::move(parts));
  };

  struct Guard {
    Qbf g;
    bool universal;
  };
  std::function<Qbf(std::size_t, int, std::vector<Guard>&)> build = [&](std::size_t i, int layer,
                                                                        std::vector<Guard>& guards) -> Qbf {
    if (i == flat.prefix.size()) {
      Qbf m = matrix(layer);
      for (auto it = guards.rbegin(); it != guards.rend(); ++it) {
        m = it->universal ? qbf::implies(it->g, m) : qbf::conj(it->g, m);
      }
      return qbf::exists(kappa_vars, m);
    }
    const Binder& b = flat.prefix[i];
    bool universal = b.kind == Op::Forall || b.kind == Op::Forall1;
    if (b.kind == Op::Exists || b.kind == Op::Forall) {
      return qbf::quantifier(universal, t.all_vertex_vars(b.prop), build(i + 1, layer, guards));
    }
    if (mode == Exists1Mode::Bitvector || mode == Exists1Mode::Onehot) {
      Qbf guard;
      std::vector<std::string> vars;
      if (mode == Exists1Mode::Bitvector) {
        vars = vector_bits(b.prop, width);
        std::vector<Qbf> alts;
        for (VertexIndex v : region) alts.push_back(bv_equals(vars, v));
        guard = qbf::disj(std::move(alts));
      } else {
        vars = t.all_vertex_vars(b.prop);
        guard = t.onehot_guard(b.prop, region);
      }
      guards.push_back({guard, universal});
      Qbf body = build(i + 1, layer, guards);
      guards.pop_back();
      return qbf::quantifier(universal, vars, body);
    }
    std::vector<Qbf> kids;
    for (VertexIndex v : region) kids.push_back(build(i + 1, t.child_layer(layer, b.prop, v), guards));
    return universal ? qbf::conj(std::move(kids)) : qbf::disj(std::move(kids));
  };
  std::vector<Guard> guards;
  Qbf out = build(0, 0, guards);
  // Propositional exists1 copies the rest of the prefix per vertex.
  if (is_prenex_qbf(out)) return out;
  PrenexQbf p = prenex(out);
  Qbf q = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) q = qbf::quantifier(it->universal, it->vars, q);
  return q;
}

Qbf reduce(const ReductionJob& job) {
  switch (job.strategy) {
    case Strategy::UU: {
      UUOptions o;
      o.exists1_mode = job.exists1_mode;
      return reduce_uu(job.structure, job.initial, job.formula, {}, o);
    }
    case Strategy::FP: return reduce_fp(job.structure, job.initial, job.formula, job.exists1_mode);
    case Strategy::FPF: return reduce_fpf(job.structure, job.initial, job.formula, job.exists1_mode);
    case Strategy::X: return reduce_x(job.structure, job.initial, job.formula, job.until_bound, job.exists1_mode);
  }
  throw ValidationError("unknown strategy");
}

}  // namespace qctl
