#pragma once

// Reductions from QCTL model checking to QBF validity.
//
//   UU   unfold untils along simple paths (visited sets)
//   FP   eliminate untils by fixed points, AG over the reachable set
//   FPF  flatten a prenex formula with equivalences, then FP
//   X    flatten the NNF with implications; until propositions become
//        per-state distance bit vectors

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qctl/formula.hpp"
#include "qctl/kripke.hpp"
#include "qctl/oracle.hpp"
#include "qctl/qbf.hpp"

namespace qctl {

enum class Strategy { UU, FP, FPF, X };

/// How exists1 / forall1 are encoded.
///   Propositional  one copy of the body per reachable vertex
///   Bitvector      a single vertex index vector (method X only)
///   Onehot         an ordinary quantifier under an exactly-one guard
enum class Exists1Mode { Default, Propositional, Bitvector, Onehot };

std::string strategy_name(Strategy s);
/// Accepts uu, fp, fpf, x (any case). Throws ValidationError.
Strategy parse_strategy(const std::string& s);

struct ReductionJob {
  KripkeStructure structure;
  VertexIndex initial = 0;
  FormulaPtr formula;
  Strategy strategy = Strategy::UU;
  std::optional<std::size_t> until_bound;
  Exists1Mode exists1_mode = Exists1Mode::Default;
};

struct UUOptions {
  /// Evaluate an until directly when both operands translate to constants
  /// everywhere below the current state.
  bool fold_constant_until = true;
  Exists1Mode exists1_mode = Exists1Mode::Propositional;
};

/// Closed QBF that is valid iff the job's formula holds at its initial state.
Qbf reduce(const ReductionJob& job);

/// `env_props` are treated as already quantified: their atoms become free
/// variables `p@v`, so the result is closed only when `env_props` is empty.
Qbf reduce_uu(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f,
              const std::set<std::string>& env_props = {}, const UUOptions& opts = {});
Qbf reduce_fp(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f,
              Exists1Mode mode = Exists1Mode::Propositional);
/// Requires a prenex formula.
Qbf reduce_fpf(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f,
               Exists1Mode mode = Exists1Mode::Propositional);
/// Requires a prenex formula. `bound` (1..|V|) is the largest until distance
/// considered; without it distances range over 0..|V|-1.
Qbf reduce_x(const KripkeStructure& k, VertexIndex x, const FormulaPtr& f,
             std::optional<std::size_t> bound = std::nullopt, Exists1Mode mode = Exists1Mode::Bitvector);

/// p@v is true iff v is in env(p), for every p in dom(env) and every vertex.
Valuation valuation_from_env(const Environment& env, const KripkeStructure& k);

/// Bits of a vector, least significant first.
std::vector<std::string> kappa_bits(const std::string& prop, const std::string& vertex, unsigned width);
/// ceil(log2(n + 1))
unsigned bit_width(std::size_t n);
/// [bits = value]
Qbf bv_equals(const std::vector<std::string>& bits, std::size_t value);
/// [bits < value], unsigned
Qbf bv_less(const std::vector<std::string>& bits, std::size_t value);

/// True iff the formula is a quantifier prefix over a quantifier-free body.
bool is_prenex_qbf(const Qbf& f);

}  // namespace qctl
