#include "qctl/sat.hpp"

#include <algorithm>
#include <stdexcept>

namespace qctl {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

int SatSolver::new_var() {
  int v = num_vars();
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  phase_.push_back(0);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_index_.push_back(-1);
  heap_insert(v);
  return v;
}

bool SatSolver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  if (decision_level() != 0) cancel_until(0);
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (var_of(lits[i]) >= num_vars()) throw std::out_of_range("literal over an unknown variable");
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return true;  // tautology
    std::int8_t val = value(lits[i]);
    if (val > 0) return true;
    if (val == 0) kept.push_back(lits[i]);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(std::move(kept));
  return true;
}

int SatSolver::attach(std::vector<Lit> lits) {
  int idx = static_cast<int>(clauses_.size());
  watches_[lits[0]].push_back(idx);
  watches_[lits[1]].push_back(idx);
  clauses_.push_back(std::move(lits));
  return idx;
}

void SatSolver::enqueue(Lit l, int reason) {
  int v = var_of(l);
  assign_[v] = (l & 1) ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = negate(p);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) > 0) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) < 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void SatSolver::bump(int var) {
  activity_[var] += var_inc_;
  if (activity_[var] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[var] >= 0) heap_up(heap_index_[var]);
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& backjump) {
  learnt.assign(1, 0);
  int pending = 0;
  Lit p = -1;
  std::size_t index = trail_.size();
  int ci = conflict;
  do {
    const auto& c = clauses_[ci];
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      Lit q = c[k];
      int v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (level_[v] >= decision_level()) ++pending;
      else learnt.push_back(q);
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    ci = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = negate(p);

  backjump = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (level_[var_of(learnt[k])] > backjump) {
      backjump = level_[var_of(learnt[k])];
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[var_of(l)] = 0;
}

void SatSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    int v = var_of(trail_[i]);
    phase_[v] = assign_[v] > 0;
    assign_[v] = 0;
    reason_[v] = kNoReason;
    if (heap_index_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

SatSolver::Lit SatSolver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assign_[v] == 0) return phase_[v] ? pos(v) : neg(v);
  }
  return -1;
}

bool SatSolver::solve(const std::vector<Lit>& assumptions) {
  model_.clear();
  if (!ok_) return false;
  cancel_until(0);
  if (propagate() != kNoReason) return ok_ = false;

  int restart = 0;
  std::vector<Lit> learnt;
  for (;;) {
    std::uint64_t budget = static_cast<std::uint64_t>(luby(2, restart++) * 100);
    std::uint64_t local = 0;
    for (;;) {
      int conflict = propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++local;
        if (decision_level() == 0) return ok_ = false;
        int backjump = 0;
        analyze(conflict, learnt, backjump);
        cancel_until(backjump);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          int ci = attach(learnt);
          enqueue(learnt[0], ci);
        }
        decay();
        continue;
      }
      if (local >= budget) {
        cancel_until(0);
        break;
      }
      Lit next = -1;
      while (decision_level() < static_cast<int>(assumptions.size())) {
        Lit a = assumptions[decision_level()];
        std::int8_t val = value(a);
        if (val > 0) {
          trail_lim_.push_back(static_cast<int>(trail_.size()));
        } else if (val < 0) {
          cancel_until(0);
          return false;
        } else {
          next = a;
          break;
        }
      }
      if (next == -1) {
        next = pick_branch();
        if (next == -1) {
          model_.resize(num_vars());
          for (int v = 0; v < num_vars(); ++v) model_[v] = assign_[v] > 0;
          cancel_until(0);
          return true;
        }
        ++decisions_;
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, kNoReason);
    }
  }
}

void SatSolver::heap_insert(int var) {
  heap_index_[var] = static_cast<int>(heap_.size());
  heap_.push_back(var);
  heap_up(heap_index_[var]);
}

int SatSolver::heap_pop() {
  int top = heap_.front();
  heap_index_[top] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::heap_up(int pos) {
  int v = heap_[pos];
  while (pos > 0) {
    int parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_index_[heap_[pos]] = pos;
    pos = parent;
  }
  heap_[pos] = v;
  heap_index_[v] = pos;
}

void SatSolver::heap_down(int pos) {
  int v = heap_[pos];
  int n = static_cast<int>(heap_.size());
  for (;;) {
    int child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_index_[heap_[pos]] = pos;
    pos = child;
  }
  heap_[pos] = v;
  heap_index_[v] = pos;
}

}  // namespace qctl
