#pragma once

#include <random>
#include <string>

#include "qctl/formula.hpp"
#include "qctl/kripke.hpp"

namespace testing {

inline const char* kK1 = "states: v1 v2\nedges: v1->v2 v2->v2\nlabel v1: a\nlabel v2: b\n";

inline qctl::KripkeStructure k1() { return qctl::parse_kripke(kK1); }

inline qctl::FormulaPtr f(const std::string& text) { return qctl::parse_formula(text); }

}  // namespace testing
