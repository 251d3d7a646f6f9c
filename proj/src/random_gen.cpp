#include "qctl/random_gen.hpp"

namespace qctl {

using namespace fml;

KripkeStructure random_structure(std::mt19937_64& rng, int min_vertices, int max_vertices,
                                 const std::vector<std::string>& props) {
  int n = std::uniform_int_distribution<int>(min_vertices, max_vertices)(rng);
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i + 1));
  std::vector<KripkeStructure::Edge> edges;
  std::bernoulli_distribution coin(0.35);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (coin(rng)) {
        edges.emplace_back(i, j);
        any = true;
      }
    }
    if (!any) edges.emplace_back(i, pick(rng));
  }
  std::vector<std::set<std::string>> labels(n);
  std::bernoulli_distribution half(0.5);
  for (auto& l : labels) {
    for (const auto& p : props) {
      if (half(rng)) l.insert(p);
    }
  }
  return KripkeStructure(ids, edges, labels, 0);
}

namespace {

class Gen {
 public:
  Gen(std::mt19937_64& rng, const RandomFormulaOptions& o) : rng_(rng), o_(o) {}

  FormulaPtr top_level() {
    int q = roll(0, o_.max_quantifiers);
    if (!o_.prenex) {
      quantifiers_left_ = q;
      return node(o_.max_height, o_.max_boolean_depth);
    }
    std::vector<std::pair<Op, std::string>> prefix;
    for (int i = 0; i < q; ++i) {
      std::string p = "p" + std::to_string(i + 1);
      prefix.emplace_back(quantifier_kind(), p);
      scope_.push_back(p);
    }
    quantifiers_left_ = 0;
    FormulaPtr f = node(o_.max_height, o_.max_boolean_depth);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) f = quantifier(it->first, it->second, f);
    return f;
  }

 private:
  int roll(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Op quantifier_kind() {
    int r = roll(0, o_.allow_unique ? 3 : 1);
    static const Op kinds[] = {Op::Exists, Op::Forall, Op::Exists1, Op::Forall1};
    return kinds[r];
  }

  FormulaPtr leaf() {
    std::vector<std::string> pool = o_.atoms;
    pool.insert(pool.end(), scope_.begin(), scope_.end());
    int r = roll(0, static_cast<int>(pool.size()) + 1);
    if (r == static_cast<int>(pool.size())) return roll(0, 1) ? top() : bottom();
    if (r == static_cast<int>(pool.size()) + 1) return neg(atom(pool[roll(0, static_cast<int>(pool.size()) - 1)]));
    // Bias towards quantified propositions when some are in scope.
    if (!scope_.empty() && roll(0, 2) == 0) return atom(scope_[roll(0, static_cast<int>(scope_.size()) - 1)]);
    return atom(pool[r]);
  }

  FormulaPtr node(int height, int booleans) {
    if (quantifiers_left_ > 0 && roll(0, 2) == 0) {
      --quantifiers_left_;
      std::string p = "p" + std::to_string(++counter_);
      Op kind = quantifier_kind();
      scope_.push_back(p);
      FormulaPtr body = node(height, o_.max_boolean_depth);
      scope_.pop_back();
      return quantifier(kind, p, body);
    }
    int choice = roll(0, 9);
    if (height > 0 && choice < 5) return temporal(height);
    if (booleans > 0 && choice < 9) {
      switch (roll(0, 4)) {
        case 0: return neg(node(height, booleans - 1));
        case 1: return conj(node(height, booleans - 1), node(height, booleans - 1));
        case 2: return disj(node(height, booleans - 1), node(height, booleans - 1));
        case 3: return implies(node(height, booleans - 1), node(height, booleans - 1));
        default: return iff(node(height, booleans - 1), node(height, booleans - 1));
      }
    }
    return leaf();
  }

  FormulaPtr temporal(int height) {
    auto sub = [&] { return node(height - 1, o_.max_boolean_depth); };
    int r = roll(0, o_.allow_counting ? 12 : 9);
    switch (r) {
      case 0: return ex(sub());
      case 1: return ax(sub());
      case 2: return ef(sub());
      case 3: return af(sub());
      case 4: return eg(sub());
      case 5: return ag(sub());
      case 6: return eu(sub(), sub());
      case 7: return au(sub(), sub());
      case 8: return ew(sub(), sub());
      case 9: return aw(sub(), sub());
      case 10: return unique_x(sub());
      case 11: return unique_f(sub());
      default: return at_least_x(roll(1, 2), sub());
    }
  }

  std::mt19937_64& rng_;
  const RandomFormulaOptions& o_;
  std::vector<std::string> scope_;
  int quantifiers_left_ = 0;
  int counter_ = 0;
};

}  // namespace

FormulaPtr random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts) { return Gen(rng, opts).top_level(); }

}  // namespace qctl
