#pragma once

#include "sop/cyclotomic.hpp"
#include "sop/term.hpp"

namespace sop {

struct InterpConfig {
    std::size_t var_cap = 20;       // refuse 2^k sums beyond this
    unsigned max_level = 16;        // largest supported root order 2^max_level
};

// Exact dense matrix of a pure term, 2^n_out x 2^n_in. The first listed wire
// is the most significant bit of the row/column index.
CycMatrix interp(const SopTerm& t, const InterpConfig& cfg = {});

// Exact superoperator matrix of a ground term: interp of its doubling.
CycMatrix interp_ground(const SopTerm& t, const InterpConfig& cfg = {});

}  // namespace sop
