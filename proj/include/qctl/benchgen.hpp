#pragma once

// Generators for the three benchmark families and their formulas.

#include <string>
#include <vector>

#include "qctl/formula.hpp"
#include "qctl/kripke.hpp"

namespace qctl {

struct Benchmark {
  KripkeStructure structure;
  VertexIndex initial = 0;
};

/// Two n x n grids (q_i_j, r_i_j) joined by m bridges. Undirected. The entry
/// corner q_1_1 is linked to its whole first row and column, the exit corner
/// r_n_n (labeled y) to the whole last row and column of the right grid.
/// Bridge i (1-based) is (q_i_n, r_1_i) for odd i and (q_n_i, r_i_1) for even i.
Benchmark gen_kconn(int n, int m);

enum class KconnVariant { Phi, Psi, PhiGlobal, PsiGlobal };

/// Phi variants only: whether the other markers on path i appear as
/// written (p_j) or negated (!p_j).
enum class PhiReading { AsPrinted, Negated };

FormulaPtr kconn_formula(KconnVariant v, int k, PhiReading reading = PhiReading::AsPrinted);

/// Game graph from (heaps, player 1 to move). Heap multisets are kept sorted
/// in decreasing order with empty heaps removed. Moves of player J go
/// through an intermediary state labeled `int` (one per distinct target
/// configuration); this includes the self-loop of the terminal
/// configuration where J is to move. Configurations carry t1/t2; empty ones
/// carry w1/w2 for the player who emptied the board.
Benchmark gen_nim(const std::vector<int>& heaps, int J);

/// exists m. (AG(tJ -> EX m) & AF(wJ | (int & !m)))
FormulaPtr nim_formula(int J);

/// rows x cols torus with edges to the right and downwards (wrapping).
Benchmark gen_resources(int rows, int cols);

/// exists1 c1..ck. AG(C | EX(C | EX(... EX C))) with d nested EX, C = c1|..|ck.
FormulaPtr resources_formula(int k, int d);

}  // namespace qctl
