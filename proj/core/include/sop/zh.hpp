#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sop/term.hpp"

namespace sop {

// Parameter of an H-spider.
//   DyadicPhase: r = e^{2 i pi c} for dyadic c (exact).
//   Zero:        r = 0 (exact).
//   ScalarSqrt2: r = num * sqrt(2)^half_exp, 0-ary scalar boxes only (exact).
//   GeneralReal / GeneralComplex: rationals, float pipeline only.
struct HParam {
    enum class Kind { DyadicPhase, Zero, ScalarSqrt2, GeneralReal, GeneralComplex };
    Kind kind = Kind::DyadicPhase;
    Dyadic phase;                       // DyadicPhase
    std::int64_t num = 1;               // ScalarSqrt2
    int half_exp = 0;                   // ScalarSqrt2
    std::pair<std::int64_t, std::int64_t> re{0, 1}, im{0, 1};  // GeneralReal/Complex

    static HParam dyadic(Dyadic c) { return {Kind::DyadicPhase, c, 1, 0, {0, 1}, {0, 1}}; }
    static HParam zero() { return {Kind::Zero, {}, 1, 0, {0, 1}, {0, 1}}; }
    static HParam scalar_sqrt2(std::int64_t num, int half_exp) {
        return {Kind::ScalarSqrt2, {}, num, half_exp, {0, 1}, {0, 1}};
    }
    bool operator==(const HParam&) const = default;
};

struct ZhNode {
    enum class Kind { Z, H, Ground };
    Kind kind = Kind::Z;
    HParam param;       // meaningful for H only
    std::size_t arity = 0;
    bool operator==(const ZhNode&) const = default;
};

struct ZhPort {
    std::size_t node = 0;
    std::size_t leg = 0;
    bool operator==(const ZhPort&) const = default;
};

// Undirected wiring of spiders. Every leg of every node is used exactly once,
// either by a wire end or by one boundary slot.
struct ZhDiagram {
    std::vector<ZhNode> nodes;
    std::vector<std::pair<ZhPort, ZhPort>> wires;
    std::vector<ZhPort> inputs;
    std::vector<ZhPort> outputs;
    bool operator==(const ZhDiagram&) const = default;
};

void validate(const ZhDiagram& d);  // throws InvalidDiagram

// Structural translation: one path variable per wire component connected
// through Z-spiders; H-spiders contribute phase monomials (or, for the zero
// parameter, a mediated half-phase monomial and a factor 1/2); Ground legs
// discard their component variable. Exact parameters only.
SopTerm zh_to_sop(const ZhDiagram& d);

// One Z-spider per variable, H-spiders for phase monomials, XOR/AND gadgets
// for boundary polynomials, Ground nodes for discards, 0-ary H boxes for the
// scalar. Clifford terms land in the Clifford generator set (Z-spiders,
// H-spiders of arity <= 2 with parameter in {1, i, -1, -i}, scalar boxes).
ZhDiagram sop_to_zh(const SopTerm& t);

std::string zh_to_json(const ZhDiagram& d);
ZhDiagram zh_from_json(const std::string& text);
std::string zh_to_dot(const ZhDiagram& d);

// Splits a 1 -> 1 H-spider [[1,1],[1,r]] with |r| not in {0,1} into
// (s, alpha, beta) such that
//   s * [(1+e^{i alpha}) + (1-e^{i alpha}) e^{i beta} * (-1)^j] at j = 0,1
// reproduces (1, r). Validated numerically to 1e-9; the textbook candidate
// angle is tried first and a direct solve used when it fails.
struct HDecomposition {
    std::complex<double> s;
    double alpha;
    double beta;
};
HDecomposition decompose_h_param(std::complex<double> r);

}  // namespace sop
