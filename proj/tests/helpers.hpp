// Shared test utilities: random generators and independent brute-force
// oracles. The oracles deliberately avoid the rewrite engine and, where
// possible, the SopTerm machinery altogether.
#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "sop/circuit.hpp"
#include "sop/discard.hpp"
#include "sop/interp.hpp"
#include "sop/zh.hpp"

namespace soptest {

using namespace sop;
using Rng = std::mt19937;
using Cplx = std::complex<double>;
using CMat = std::vector<std::vector<Cplx>>;

inline std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline Monomial random_monomial(Rng& rng, const std::vector<VarId>& vars,
                                std::size_t max_deg) {
    std::vector<VarId> vs;
    const std::size_t deg = pick(rng, std::min(max_deg, vars.size()) + 1);
    std::sample(vars.begin(), vars.end(), std::back_inserter(vs), deg, rng);
    return Monomial(std::move(vs));
}

inline BoolPoly random_bool_poly(Rng& rng, const std::vector<VarId>& vars,
                                 std::size_t max_mon, std::size_t max_deg) {
    std::vector<Monomial> ms;
    const std::size_t n = pick(rng, max_mon + 1);
    for (std::size_t i = 0; i < n; ++i)
        ms.push_back(random_monomial(rng, vars, max_deg));
    return BoolPoly::from_monomials(std::move(ms));
}

inline Assignment random_assignment(Rng& rng, const std::vector<VarId>& vars) {
    Assignment a;
    for (VarId v : vars) a[v] = pick(rng, 2) == 1;
    return a;
}

// Structurally valid term with arbitrary (not necessarily Clifford) content.
// `clifford` restricts phase coefficients and boundary degrees accordingly.
inline SopTerm random_term(Rng& rng, std::size_t n_vars, std::size_t n_out,
                           std::size_t n_in, std::size_t n_disc,
                           bool clifford) {
    SopTerm t;
    t.n_in = n_in;
    t.n_out = n_out;
    for (VarId v = 1; v <= n_vars; ++v) t.vars.push_back(v);
    const std::size_t n_phase = pick(rng, n_vars + 3);
    for (std::size_t i = 0; i < n_phase; ++i) {
        if (clifford) {
            const Monomial m = random_monomial(rng, t.vars, 2);
            const std::uint32_t ld = m.degree() == 0   ? 3
                                     : m.degree() == 1 ? 2
                                                       : 1;
            t.phase.add_term(m, Dyadic::of(std::int64_t(pick(rng, 1u << ld)), ld));
        } else {
            t.phase.add_term(random_monomial(rng, t.vars, 3),
                             Dyadic::of(std::int64_t(pick(rng, 8)), 3));
        }
    }
    const std::size_t bdeg = clifford ? 1 : 2;
    for (std::size_t i = 0; i < n_out; ++i)
        t.out.push_back(random_bool_poly(rng, t.vars, 3, bdeg));
    for (std::size_t i = 0; i < n_in; ++i)
        t.in.push_back(random_bool_poly(rng, t.vars, 3, bdeg));
    for (std::size_t i = 0; i < n_disc; ++i)
        t.discards.push_back(random_bool_poly(rng, t.vars, 3, bdeg));
    std::sort(t.discards.begin(), t.discards.end());
    t.discards.erase(std::unique(t.discards.begin(), t.discards.end()),
                     t.discards.end());
    validate(t);
    return t;
}

// ---- Random Clifford circuits ------------------------------------------

struct CircuitGenOptions {
    bool with_measure = false;
    bool with_discard = false;
};

inline Circuit random_clifford_circuit(Rng& rng, std::size_t n,
                                       std::size_t depth,
                                       CircuitGenOptions opt = {}) {
    Circuit c;
    c.n_qubits = n;
    std::vector<bool> open(n, true);
    std::vector<std::string> pool = {"h", "x", "z", "s", "sdg", "cz", "cx"};
    if (opt.with_measure) pool.push_back("measure");
    if (opt.with_discard) pool.push_back("discard");
    for (std::size_t i = 0; i < depth; ++i) {
        std::vector<std::size_t> avail;
        for (std::size_t q = 0; q < n; ++q)
            if (open[q]) avail.push_back(q);
        if (avail.empty()) break;
        const std::string& g = pool[pick(rng, pool.size())];
        CircuitOp op{g, {}, Dyadic::zero(), 0};
        if (g == "cz" || g == "cx") {
            if (avail.size() < 2) continue;
            std::size_t a = pick(rng, avail.size());
            std::size_t b = pick(rng, avail.size() - 1);
            if (b >= a) ++b;
            op.qubits = {avail[a], avail[b]};
        } else {
            op.qubits = {avail[pick(rng, avail.size())]};
            if (g == "discard") open[op.qubits[0]] = false;
        }
        c.ops.push_back(op);
    }
    return c;
}

// Identity gadgets inserted at random positions: the result computes the
// same map as the input by construction.
inline Circuit insert_identity_gadgets(Rng& rng, const Circuit& base,
                                       std::size_t count) {
    Circuit c = base;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t at = pick(rng, c.ops.size() + 1);
        // Qubits still open at this position (never discarded before it).
        std::vector<bool> open(c.n_qubits, true);
        for (std::size_t i = 0; i < at; ++i)
            if (c.ops[i].name == "discard") open[c.ops[i].qubits[0]] = false;
        // And not discarded later either, so the gadget cannot land on a
        // closed wire after reordering.
        for (std::size_t i = at; i < c.ops.size(); ++i)
            if (c.ops[i].name == "discard") open[c.ops[i].qubits[0]] = false;
        std::vector<std::size_t> avail;
        for (std::size_t q = 0; q < c.n_qubits; ++q)
            if (open[q]) avail.push_back(q);
        if (avail.empty()) continue;
        std::vector<CircuitOp> gadget;
        const std::size_t q = avail[pick(rng, avail.size())];
        switch (pick(rng, avail.size() >= 2 ? 5 : 4)) {
            case 0:
                gadget = {{"h", {q}, {}, 0}, {"h", {q}, {}, 0}};
                break;
            case 1:
                gadget = {{"s", {q}, {}, 0}, {"sdg", {q}, {}, 0}};
                break;
            case 2:
                gadget = {{"z", {q}, {}, 0}, {"z", {q}, {}, 0}};
                break;
            case 3:
                gadget = {{"x", {q}, {}, 0}, {"x", {q}, {}, 0}};
                break;
            default: {
                std::size_t ai = pick(rng, avail.size());
                std::size_t bi = pick(rng, avail.size() - 1);
                if (bi >= ai) ++bi;
                const char* two = pick(rng, 2) ? "cz" : "cx";
                gadget = {{two, {avail[ai], avail[bi]}, {}, 0},
                          {two, {avail[ai], avail[bi]}, {}, 0}};
                break;
            }
        }
        c.ops.insert(c.ops.begin() + std::ptrdiff_t(at), gadget.begin(),
                     gadget.end());
    }
    return c;
}

// Appends one non-identity gate: the result is guaranteed to compute a
// different unitary (g * U = U only for g = id).
inline Circuit append_disturbance(Rng& rng, const Circuit& base) {
    Circuit c = base;
    std::vector<bool> open(c.n_qubits, true);
    for (const auto& op : c.ops)
        if (op.name == "discard") open[op.qubits[0]] = false;
    std::vector<std::size_t> avail;
    for (std::size_t q = 0; q < c.n_qubits; ++q)
        if (open[q]) avail.push_back(q);
    static const std::vector<std::string> kicks = {"x", "z", "s", "h"};
    if (avail.empty()) {
        // Everything discarded: disturb before the first op instead.
        c.ops.insert(c.ops.begin(),
                     {kicks[pick(rng, 2)], {pick(rng, c.n_qubits)}, {}, 0});
        return c;
    }
    c.ops.push_back({kicks[pick(rng, kicks.size())],
                     {avail[pick(rng, avail.size())]},
                     {},
                     0});
    return c;
}

// ---- Brute-force complex-matrix oracle for gate-only circuits -----------

inline CMat cmat_identity(std::size_t dim) {
    CMat m(dim, std::vector<Cplx>(dim));
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
    return m;
}

// Applies a gate to the left of M (gate * M), qubit 0 = most significant bit.
inline void apply_gate_inplace(CMat& m, const CircuitOp& op, std::size_t n) {
    const std::size_t dim = m.size();
    const double pi = std::numbers::pi;
    auto bit = [&](std::size_t idx, std::size_t q) {
        return (idx >> (n - 1 - q)) & 1;
    };
    if (op.name == "cz" || op.name == "cx") {
        const std::size_t a = op.qubits[0], b = op.qubits[1];
        if (op.name == "cz") {
            for (std::size_t i = 0; i < dim; ++i)
                if (bit(i, a) && bit(i, b))
                    for (auto& x : m[i]) x = -x;
        } else {
            for (std::size_t i = 0; i < dim; ++i) {
                if (!bit(i, a) || bit(i, b)) continue;
                std::swap(m[i], m[i ^ (std::size_t{1} << (n - 1 - b))]);
            }
        }
        return;
    }
    const std::size_t q = op.qubits[0];
    Cplx u00 = 1, u01 = 0, u10 = 0, u11 = 1;
    if (op.name == "h") {
        const double r = 1.0 / std::sqrt(2.0);
        u00 = u01 = u10 = r;
        u11 = -r;
    } else if (op.name == "x") {
        u00 = u11 = 0;
        u01 = u10 = 1;
    } else if (op.name == "z") {
        u11 = -1;
    } else if (op.name == "s") {
        u11 = Cplx(0, 1);
    } else if (op.name == "sdg") {
        u11 = Cplx(0, -1);
    } else if (op.name == "t") {
        u11 = std::exp(Cplx(0, pi / 4));
    } else if (op.name == "tdg") {
        u11 = std::exp(Cplx(0, -pi / 4));
    } else if (op.name == "rz") {
        const double c = double(op.param.num) /
                         double(std::int64_t{1} << op.param.log_den);
        u11 = std::exp(Cplx(0, 2 * pi * c));
    } else {
        throw Error("oracle does not model op " + op.name);
    }
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t i = 0; i < dim; ++i) {
        if (bit(i, q)) continue;
        for (std::size_t cidx = 0; cidx < dim; ++cidx) {
            const Cplx a = m[i][cidx], b = m[i + stride][cidx];
            m[i][cidx] = u00 * a + u01 * b;
            m[i + stride][cidx] = u10 * a + u11 * b;
        }
    }
}

inline CMat circuit_unitary(const Circuit& c) {
    CMat m = cmat_identity(std::size_t{1} << c.n_qubits);
    for (const auto& op : c.ops) apply_gate_inplace(m, op, c.n_qubits);
    return m;
}

inline CMat to_cmat(const CycMatrix& m) {
    CMat r(m.rows, std::vector<Cplx>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            r[i][j] = m.to_complex(i, j);
    return r;
}

inline bool cmat_close(const CMat& a, const CMat& b, double eps = 1e-9) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (std::abs(a[i][j] - b[i][j]) > eps) return false;
    }
    return true;
}

// Channel semantics shared by pure and ground terms: the doubled matrix.
inline CycMatrix channel_matrix(const SopTerm& t, const InterpConfig& cfg = {}) {
    return interp_ground(t, cfg);
}

// ---- Independent ZH evaluator (no Ground nodes) --------------------------

inline Cplx h_param_value(const HParam& p) {
    const double pi = std::numbers::pi;
    switch (p.kind) {
        case HParam::Kind::DyadicPhase:
            return std::exp(Cplx(0, 2 * pi * double(p.phase.num) /
                                        double(std::int64_t{1} << p.phase.log_den)));
        case HParam::Kind::Zero:
            return 0.0;
        case HParam::Kind::ScalarSqrt2:
            return double(p.num) * std::pow(std::sqrt(2.0), p.half_exp);
        case HParam::Kind::GeneralReal:
            return double(p.re.first) / double(p.re.second);
        case HParam::Kind::GeneralComplex:
            return Cplx(double(p.re.first) / double(p.re.second),
                        double(p.im.first) / double(p.im.second));
    }
    return 0.0;
}

// Enumerates one boolean per connected net (through wires and Z-spiders) and
// sums the product of H-spider contributions, exactly following the ZH
// semantics. Only valid for diagrams without Ground nodes.
inline CMat zh_oracle(const ZhDiagram& d) {
    std::size_t total = 0;
    std::vector<std::size_t> base(d.nodes.size());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        base[i] = total;
        total += d.nodes[i].arity;
    }
    std::vector<std::size_t> parent(total);
    for (std::size_t i = 0; i < total; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto pidx = [&](const ZhPort& p) { return base[p.node] + p.leg; };
    for (const auto& [a, b] : d.wires) parent[find(pidx(a))] = find(pidx(b));
    for (std::size_t nd = 0; nd < d.nodes.size(); ++nd)
        if (d.nodes[nd].kind == ZhNode::Kind::Z)
            for (std::size_t l = 1; l < d.nodes[nd].arity; ++l)
                parent[find(base[nd])] = find(base[nd] + l);
    std::vector<std::size_t> net(total, std::size_t(-1));
    std::size_t nets = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t r = find(i);
        if (net[r] == std::size_t(-1)) net[r] = nets++;
        net[i] = net[r];
    }
    const std::size_t rows = std::size_t{1} << d.outputs.size();
    const std::size_t cols = std::size_t{1} << d.inputs.size();
    CMat m(rows, std::vector<Cplx>(cols));
    for (std::size_t bits = 0; bits < (std::size_t{1} << nets); ++bits) {
        auto val = [&](const ZhPort& p) { return (bits >> net[pidx(p)]) & 1; };
        Cplx f = 1.0;
        for (std::size_t nd = 0; nd < d.nodes.size(); ++nd) {
            const ZhNode& node = d.nodes[nd];
            if (node.kind != ZhNode::Kind::H) continue;
            bool prod = true;
            for (std::size_t l = 0; l < node.arity; ++l)
                if (!val({nd, l})) prod = false;
            if (prod) f *= h_param_value(node.param);
        }
        std::size_t row = 0, col = 0;
        for (const auto& p : d.outputs) row = (row << 1) | val(p);
        for (const auto& p : d.inputs) col = (col << 1) | val(p);
        m[row][col] += f;
    }
    // Legless Z-spiders have no port and thus no net, but each one still
    // contributes the scalar 1 + 1 = 2.
    for (const auto& n : d.nodes)
        if (n.kind == ZhNode::Kind::Z && n.arity == 0)
            for (auto& r : m)
                for (auto& x : r) x *= 2.0;
    return m;
}

}  // namespace soptest
