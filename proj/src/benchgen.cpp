#include "qctl/benchgen.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "qctl/errors.hpp"

namespace qctl {

using namespace fml;

namespace {

class Builder {
 public:
  VertexIndex add(const std::string& id, std::set<std::string> labels = {}) {
    auto [it, fresh] = index_.emplace(id, ids_.size());
    if (fresh) {
      ids_.push_back(id);
      labels_.push_back(std::move(labels));
    }
    return it->second;
  }
  VertexIndex at(const std::string& id) const { return index_.at(id); }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  void edge(VertexIndex a, VertexIndex b) { edges_.emplace_back(a, b); }
  void both(VertexIndex a, VertexIndex b) {
    edge(a, b);
    edge(b, a);
  }
  KripkeStructure build(VertexIndex init) { return KripkeStructure(ids_, edges_, labels_, init); }

 private:
  std::vector<std::string> ids_;
  std::vector<std::set<std::string>> labels_;
  std::vector<KripkeStructure::Edge> edges_;
  std::map<std::string, VertexIndex> index_;
};

std::string cell(char grid, int i, int j) { return std::string(1, grid) + "_" + std::to_string(i) + "_" + std::to_string(j); }

}  // namespace

Benchmark gen_kconn(int n, int m) {
  if (n < 2 || m < 1 || m > n) throw ValidationError("kconn requires n >= 2 and 1 <= m <= n");
  Builder b;
  for (char g : {'q', 'r'}) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        std::set<std::string> l;
        if (g == 'r' && i == n && j == n) l.insert("y");
        b.add(cell(g, i, j), std::move(l));
      }
    }
  }
  for (char g : {'q', 'r'}) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i < n) b.both(b.at(cell(g, i, j)), b.at(cell(g, i + 1, j)));
        if (j < n) b.both(b.at(cell(g, i, j)), b.at(cell(g, i, j + 1)));
      }
    }
  }
  VertexIndex entry = b.at(cell('q', 1, 1)), exit = b.at(cell('r', n, n));
  for (int t = 2; t <= n; ++t) {
    b.both(entry, b.at(cell('q', 1, t)));
    b.both(entry, b.at(cell('q', t, 1)));
    b.both(exit, b.at(cell('r', n, t - 1)));
    b.both(exit, b.at(cell('r', t - 1, n)));
  }
  for (int i = 1; i <= m; ++i) {
    if (i % 2 == 1) b.both(b.at(cell('q', i, n)), b.at(cell('r', 1, i)));
    else b.both(b.at(cell('q', n, i)), b.at(cell('r', i, 1)));
  }
  return {b.build(entry), entry};
}

FormulaPtr kconn_formula(KconnVariant v, int k, PhiReading reading) {
  if (k < 1) throw ValidationError("kconn formula requires k >= 1");
  std::vector<std::string> ps;
  for (int i = 1; i < k; ++i) ps.push_back("p" + std::to_string(i));
  FormulaPtr y = atom("y");

  std::vector<FormulaPtr> avoid;
  for (const auto& p : ps) avoid.push_back(neg(atom(p)));
  FormulaPtr escape = ex(eu(conj(avoid), y));

  FormulaPtr body;
  bool phi = v == KconnVariant::Phi || v == KconnVariant::PhiGlobal;
  if (phi) {
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<FormulaPtr> mark{atom(ps[i])};
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j == i) continue;
        mark.push_back(reading == PhiReading::AsPrinted ? atom(ps[j]) : neg(atom(ps[j])));
      }
      parts.push_back(ex(eu(conj(mark), y)));
    }
    parts.push_back(escape);
    body = conj(parts);
  } else {
    body = escape;
  }
  bool global = v == KconnVariant::PhiGlobal || v == KconnVariant::PsiGlobal;
  if (global) body = ag(body);
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) body = phi ? exists(*it, body) : forall1(*it, body);
  if (global) body = forall1("y", body);
  return body;
}

namespace {

using Heaps = std::vector<int>;

Heaps canonical(Heaps h) {
  h.erase(std::remove(h.begin(), h.end(), 0), h.end());
  std::sort(h.rbegin(), h.rend());
  return h;
}

std::string heaps_id(const Heaps& h) {
  if (h.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "_" : "") + std::to_string(h[i]);
  return s;
}

std::string config_id(const Heaps& h, int turn) { return "c_" + heaps_id(h) + "_t" + std::to_string(turn); }

std::vector<Heaps> moves(const Heaps& h) {
  std::set<Heaps> out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (int t = 1; t <= h[i]; ++t) {
      Heaps n = h;
      n[i] -= t;
      out.insert(canonical(n));
    }
  }
  return {out.rbegin(), out.rend()};
}

}  // namespace

Benchmark gen_nim(const std::vector<int>& heaps, int J) {
  if (heaps.empty()) throw ValidationError("nim requires at least one heap");
  if (std::any_of(heaps.begin(), heaps.end(), [](int h) { return h < 1; })) {
    throw ValidationError("nim heaps must be positive");
  }
  if (J != 1 && J != 2) throw ValidationError("nim player must be 1 or 2");

  Builder b;
  auto config_labels = [](const Heaps& h, int turn) {
    std::set<std::string> l{"t" + std::to_string(turn)};
    if (h.empty()) l.insert("w" + std::to_string(3 - turn));
    return l;
  };
  Heaps start = canonical(heaps);
  VertexIndex init = b.add(config_id(start, 1), config_labels(start, 1));
  std::queue<std::pair<Heaps, int>> todo;
  todo.push({start, 1});
  while (!todo.empty()) {
    auto [h, turn] = todo.front();
    todo.pop();
    VertexIndex src = b.at(config_id(h, turn));
    std::vector<Heaps> next = h.empty() ? std::vector<Heaps>{h} : moves(h);
    int next_turn = h.empty() ? turn : 3 - turn;
    for (const auto& n : next) {
      std::string id = config_id(n, next_turn);
      bool fresh = !b.contains(id);
      VertexIndex dst = b.add(id, config_labels(n, next_turn));
      if (fresh) todo.push({n, next_turn});
      if (turn == J) {
        VertexIndex mid = b.add("i_" + heaps_id(h) + "_to_" + heaps_id(n), {"int"});
        b.edge(src, mid);
        b.edge(mid, dst);
      } else {
        b.edge(src, dst);
      }
    }
  }
  return {b.build(init), init};
}

FormulaPtr nim_formula(int J) {
  if (J != 1 && J != 2) throw ValidationError("nim player must be 1 or 2");
  std::string j = std::to_string(J);
  FormulaPtr m = atom("m");
  return exists("m", conj(ag(implies(atom("t" + j), ex(m))), af(disj(atom("w" + j), conj(atom("int"), neg(m))))));
}

Benchmark gen_resources(int rows, int cols) {
  if (rows < 2 || cols < 2) throw ValidationError("resources grid requires at least 2 rows and 2 columns");
  Builder b;
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) b.add(cell('q', i, j));
  }
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) {
      VertexIndex v = b.at(cell('q', i, j));
      b.edge(v, b.at(cell('q', i, j % cols + 1)));
      b.edge(v, b.at(cell('q', i % rows + 1, j)));
    }
  }
  return {b.build(0), 0};
}

FormulaPtr resources_formula(int k, int d) {
  if (k < 1 || d < 1) throw ValidationError("resources formula requires k >= 1 and d >= 1");
  std::vector<FormulaPtr> cs;
  for (int i = 1; i <= k; ++i) cs.push_back(atom("c" + std::to_string(i)));
  FormulaPtr target = disj(cs);
  FormulaPtr body = target;
  for (int i = 0; i < d; ++i) body = (i == 0) ? ex(target) : ex(disj(target, body));
  body = ag(disj(target, body));
  for (int i = k; i >= 1; --i) body = exists1("c" + std::to_string(i), body);
  return body;
}

}  // namespace qctl
