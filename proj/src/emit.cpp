#include "qctl/emit.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "qctl/errors.hpp"

namespace qctl {

namespace {

std::string symbol(const std::string& name) { return "|" + name + "|"; }

class SmtWriter {
 public:
  explicit SmtWriter(const Qbf& matrix) { count(matrix); }

  void number(const Qbf& f) {
    if (named_.count(f.get())) return;
    for (const auto& k : f->kids()) number(k);
    if (shared(f.get()) && !named_.count(f.get())) {
      named_.emplace(f.get(), "s!" + std::to_string(order_.size() + 1));
      order_.push_back(f);
    }
  }

  void term(std::ostream& os, const Qbf& f, bool define = false) const {
    if (!define) {
      if (auto it = named_.find(f.get()); it != named_.end()) {
        os << it->second;
        return;
      }
    }
    switch (f->op()) {
      case QOp::Var: os << symbol(f->name()); return;
      case QOp::True: os << "true"; return;
      case QOp::False: os << "false"; return;
      case QOp::Not: os << "(not "; break;
      case QOp::And: os << "(and"; break;
      case QOp::Or: os << "(or"; break;
      case QOp::Implies: os << "(=>"; break;
      case QOp::Iff: os << "(="; break;
      default: throw ValidationError("quantifier inside a prenex matrix");
    }
    bool first = f->op() == QOp::Not;
    for (const auto& k : f->kids()) {
      if (!first) os << ' ';
      first = false;
      term(os, k);
    }
    os << ')';
  }

  const std::vector<Qbf>& order() const { return order_; }
  const std::string& name(const Qbf& f) const { return named_.at(f.get()); }

  int height(const QbfNode* n) {
    if (auto it = height_.find(n); it != height_.end()) return it->second;
    int h = 0;
    for (const auto& k : n->kids()) h = std::max(h, height(k.get()) + 1);
    height_.emplace(n, h);
    return h;
  }

 private:
  void count(const Qbf& f) {
    if (refs_[f.get()]++ > 0) return;
    for (const auto& k : f->kids()) count(k);
  }

  bool shared(const QbfNode* n) const {
    if (n->kids().empty()) return false;
    if (n->op() == QOp::Not && n->kid(0)->kids().empty()) return false;
    return refs_.at(n) > 1;
  }

  std::unordered_map<const QbfNode*, int> refs_;
  std::unordered_map<const QbfNode*, std::string> named_;
  std::unordered_map<const QbfNode*, int> height_;
  std::vector<Qbf> order_;
};

}  // namespace

std::string emit_smtlib(const Qbf& f) {
  if (!is_closed(f)) throw ValidationError("cannot emit a formula with free variables");
  PrenexQbf p = prenex(f);
  std::ostringstream os;
  std::size_t first = 0;
  if (!p.prefix.empty() && !p.prefix[0].universal) {
    for (const auto& v : p.prefix[0].vars) os << "(declare-const " << symbol(v) << " Bool)\n";
    first = 1;
  }

  SmtWriter w(p.matrix);
  w.number(p.matrix);

  if (first == p.prefix.size()) {
    for (const auto& n : w.order()) {
      os << "(define-fun " << w.name(n) << " () Bool ";
      w.term(os, n, true);
      os << ")\n";
    }
    os << "(assert ";
    w.term(os, p.matrix);
    os << ")\n";
  } else {
    os << "(assert\n";
    std::size_t open = 0;
    for (std::size_t b = first; b < p.prefix.size(); ++b) {
      os << (p.prefix[b].universal ? " (forall (" : " (exists (");
      bool sep = false;
      for (const auto& v : p.prefix[b].vars) {
        os << (sep ? " " : "") << "(" << symbol(v) << " Bool)";
        sep = true;
      }
      os << ")\n";
      ++open;
    }
    std::map<int, std::vector<Qbf>> by_height;
    for (const auto& n : w.order()) by_height[w.height(n.get())].push_back(n);
    for (const auto& [h, nodes] : by_height) {
      os << "  (let (";
      bool sep = false;
      for (const auto& n : nodes) {
        os << (sep ? " " : "") << "(" << w.name(n) << " ";
        w.term(os, n, true);
        os << ")";
        sep = true;
      }
      os << ")\n";
      ++open;
    }
    os << "  ";
    w.term(os, p.matrix);
    os << std::string(open, ')') << ")\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

std::string emit_qdimacs(const PrenexCnf& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.num_vars() << ' ' << cnf.clauses.size() << '\n';
  for (const auto& b : cnf.prefix) {
    if (b.vars.empty()) continue;
    os << (b.universal ? 'a' : 'e');
    for (int v : b.vars) os << ' ' << v;
    os << " 0\n";
  }
  for (const auto& c : cnf.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace qctl
