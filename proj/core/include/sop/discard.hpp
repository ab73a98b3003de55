#pragma once

#include <optional>

#include "sop/term.hpp"

namespace sop {

// Doubles a ground term into a pure one acting on two copies of each wire:
//   cpm(t) = (s^2 / 2^|D|) sum e^{2 i pi (P(y) - P(y') + sum_j (hat D_j(y) + hat D_j(y')) z_j / 2)}
//            |O(y), O(y')> <I(y), I(y')|
// with one fresh z_j per discard polynomial.
SopTerm cpm(const SopTerm& t);

// Simplified doubling for terms in the reduced ground Clifford shape
// (discards are single variables occurring in O/I, scalar odd part 1).
// Shares the discarded variables between the two copies. Throws
// NotInDiscNormalForm if the shape check fails.
SopTerm f_double(const SopTerm& t);

// Partial inverse of f_double: folds a doubled pure term back into a ground
// term. Returns nullopt when the input is outside the foldable domain; that
// is expected, not an error.
std::optional<SopTerm> g_fold(const SopTerm& t);

}  // namespace sop
