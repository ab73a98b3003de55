#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sop/poly.hpp"

namespace sop {

// Global factor odd * sqrt(2)^half_exp with odd a positive odd integer.
// Signs and complex phases live in the phase polynomial, not here.
struct Scalar {
    std::int64_t odd = 1;
    int half_exp = 0;

    static Scalar one() { return {}; }
    Scalar times(const Scalar& o) const { return {odd * o.odd, half_exp + o.half_exp}; }
    Scalar times_two(int k = 1) const { return {odd, half_exp + 2 * k}; }
    Scalar times_sqrt2(int k = 1) const { return {odd, half_exp + k}; }
    Scalar squared() const { return {odd * odd, 2 * half_exp}; }

    auto operator<=>(const Scalar&) const = default;
    std::string to_string() const;
};

// Sum-over-paths morphism
//   scalar * sum over assignments of vars of
//     e^{2 i pi phase} |out_1,...,out_m> !discards <in_1,...,in_n|
// Pure terms have an empty discard set.
struct SopTerm {
    std::size_t n_in = 0;
    std::size_t n_out = 0;
    Scalar scalar;
    std::vector<VarId> vars;        // sorted ascending
    PhasePoly phase;
    std::vector<BoolPoly> out;      // size n_out
    std::vector<BoolPoly> in;       // size n_in
    std::vector<BoolPoly> discards; // sorted set, no duplicates

    bool is_pure() const { return discards.empty(); }
    bool has_var(VarId v) const;
    VarId fresh_var() const;

    // Variables as used by O, I, D and the phase (not the binder list).
    std::set<VarId> used_vars() const;

    bool operator==(const SopTerm& o) const = default;
    std::string to_string() const;

    // Renumbers binders to 1..k preserving relative order. Internal helper
    // exposed because tests want deterministic fixtures.
    SopTerm renumbered() const;
};

// Structural validity: sizes match, binder list sorted and duplicate-free,
// every used variable bound, discard set canonical. Throws on violation.
void validate(const SopTerm& t);

SopTerm identity(std::size_t n);
// Wire permutation |y_{n+1..n+m}, y_{1..n}> <y_{1..n+m}|.
SopTerm wire_swap(std::size_t n, std::size_t m);
SopTerm cup(std::size_t n);  // 0 -> 2n, sum |y,y><|
SopTerm cap(std::size_t n);  // 2n -> 0, sum |><y,y|
SopTerm gate_h();
SopTerm gate_x();
SopTerm gate_z();
SopTerm gate_s();
SopTerm gate_sdg();
SopTerm gate_t();
SopTerm gate_tdg();
SopTerm gate_rz(std::int64_t num, std::uint32_t log_den);  // phase e^{2 i pi c y}
SopTerm gate_cz();
SopTerm gate_cx();  // control first
SopTerm ket(const std::vector<bool>& bits);
SopTerm bra(const std::vector<bool>& bits);
SopTerm measure();            // 1 -> 1, decohere in place
SopTerm discard_wires(std::size_t n);  // n -> 0

struct GraphSpec {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // 0-based
};

// Graph state |G> as a 0 -> n term: sqrt(2)^-n sum e^{2 i pi sum_{(a,b) in E} y_a y_b / 2} |y>.
SopTerm graph_state(const GraphSpec& g);

SopTerm compose(const SopTerm& f, const SopTerm& g);  // f after g
SopTerm tensor(const SopTerm& f, const SopTerm& g);   // f on top
SopTerm dagger(const SopTerm& t);      // pure only
SopTerm conjugate(const SopTerm& t);   // pure only
SopTerm transpose(const SopTerm& t);   // pure only

// Clifford fragment check: scalar odd part 1; phase constant in k/8, linear
// coefficients in k/4, quadratic in k/2, nothing of degree 3+; O, I, D affine.
bool is_clifford(const SopTerm& t);

// Deterministic variable renaming: scan O left to right, then I, then the
// discard set, then the phase, all in canonical monomial order, numbering
// variables by first occurrence. Iterated to a fixpoint so the result is
// idempotent even when renaming reorders monomials.
SopTerm alpha_canonicalize(const SopTerm& t);

}  // namespace sop
