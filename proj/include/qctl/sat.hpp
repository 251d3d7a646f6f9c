#pragma once

// Small CDCL SAT solver: two watched literals, first-UIP learning, VSIDS
// ordering, phase saving, Luby restarts and solving under assumptions.
// Clauses may be added between calls to solve().

#include <cstdint>
#include <vector>

namespace qctl {

class SatSolver {
 public:
  /// Literal encoding: 2*var for the positive literal, 2*var+1 for the negative.
  using Lit = int;

  static Lit pos(int var) { return 2 * var; }
  static Lit neg(int var) { return 2 * var + 1; }
  static Lit negate(Lit l) { return l ^ 1; }
  static int var_of(Lit l) { return l >> 1; }

  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits);

  bool solve(const std::vector<Lit>& assumptions = {});
  /// Valid after a satisfiable solve().
  bool model_value(int var) const { return model_.at(var); }
  bool model_value_lit(Lit l) const { return model_value(var_of(l)) != (l & 1); }

  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }

 private:
  static constexpr int kNoReason = -1;

  std::int8_t value(Lit l) const {
    std::int8_t a = assign_[var_of(l)];
    return (l & 1) ? static_cast<std::int8_t>(-a) : a;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backjump);
  void cancel_until(int level);
  int attach(std::vector<Lit> lits);
  Lit pick_branch();
  void bump(int var);
  void decay() { var_inc_ /= 0.95; }

  // Binary max-heap on activity.
  void heap_insert(int var);
  int heap_pop();
  void heap_up(int pos);
  void heap_down(int pos);
  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::int8_t> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> phase_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<int> heap_;
  std::vector<int> heap_index_;
  std::vector<char> seen_;
  std::vector<char> model_;
  double var_inc_ = 1.0;
  bool ok_ = true;
  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
};

}  // namespace qctl
