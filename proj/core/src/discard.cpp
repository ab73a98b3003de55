#include "sop/discard.hpp"

#include <algorithm>
#include <cmath>

namespace sop {

namespace {

std::map<VarId, VarId> shift_map(const std::vector<VarId>& vars, VarId offset) {
    std::map<VarId, VarId> m;
    for (VarId v : vars) m[v] = v + offset;
    return m;
}

}  // namespace

SopTerm cpm(const SopTerm& t0) {
    const SopTerm t = t0.renumbered();
    const VarId k = VarId(t.vars.size());
    const auto copy2 = shift_map(t.vars, k);

    SopTerm r;
    r.n_out = 2 * t.n_out;
    r.n_in = 2 * t.n_in;
    r.scalar = Scalar{t.scalar.odd * t.scalar.odd,
                      2 * t.scalar.half_exp - 2 * int(t.discards.size())};
    for (VarId v = 1; v <= 2 * k; ++v) r.vars.push_back(v);

    r.phase = t.phase + t.phase.renamed(copy2).negated();
    VarId next = 2 * k + 1;
    for (const auto& d : t.discards) {
        const Monomial z = Monomial::var(next);
        r.vars.push_back(next++);
        const PhasePoly hd = hat_scaled(d, Dyadic::half());
        for (const auto& [m, c] : hd.terms()) r.phase.add_term(m.merged(z), c);
        const PhasePoly hd2 = hat_scaled(d.renamed(copy2), Dyadic::half());
        for (const auto& [m, c] : hd2.terms()) r.phase.add_term(m.merged(z), c);
    }

    r.out = t.out;
    for (const auto& p : t.out) r.out.push_back(p.renamed(copy2));
    r.in = t.in;
    for (const auto& p : t.in) r.in.push_back(p.renamed(copy2));
    return r;
}

SopTerm f_double(const SopTerm& t0) {
    const SopTerm t = t0.renumbered();

    std::set<VarId> ket_bra_vars;
    for (const auto& p : t.out) p.collect_vars(ket_bra_vars);
    for (const auto& p : t.in) p.collect_vars(ket_bra_vars);
    std::set<VarId> dvars;
    for (const auto& d : t.discards) {
        auto v = d.as_single_var();
        if (!v)
            throw NotInDiscNormalForm("discard element is not a single variable");
        if (!ket_bra_vars.count(*v))
            throw NotInDiscNormalForm(
                "discarded variable does not occur in the boundary");
        dvars.insert(*v);
    }

    // Second copy renames only the non-discarded variables.
    const VarId k = VarId(t.vars.size());
    std::map<VarId, VarId> copy2;
    for (VarId v : t.vars)
        if (!dvars.count(v)) copy2[v] = v + k;

    SopTerm r;
    r.n_out = 2 * t.n_out;
    r.n_in = 2 * t.n_in;
    r.scalar = t.scalar.squared();
    r.vars = t.vars;
    for (const auto& [v, w] : copy2) r.vars.push_back(w);
    std::sort(r.vars.begin(), r.vars.end());
    r.phase = t.phase + t.phase.renamed(copy2).negated();
    r.out = t.out;
    for (const auto& p : t.out) r.out.push_back(p.renamed(copy2));
    r.in = t.in;
    for (const auto& p : t.in) r.in.push_back(p.renamed(copy2));
    return r.renumbered();
}

std::optional<SopTerm> g_fold(const SopTerm& t0) {
    if (!t0.is_pure()) return std::nullopt;
    if (t0.n_out % 2 || t0.n_in % 2) return std::nullopt;
    if (t0.scalar.half_exp % 2) return std::nullopt;
    const std::int64_t odd_root = std::llround(std::sqrt(double(t0.scalar.odd)));
    if (odd_root * odd_root != t0.scalar.odd) return std::nullopt;

    const SopTerm t = t0.renumbered();
    const std::size_t m = t.n_out / 2, n = t.n_in / 2;

    std::vector<BoolPoly> first_half, second_half, xors;
    for (std::size_t i = 0; i < m; ++i) {
        first_half.push_back(t.out[i]);
        second_half.push_back(t.out[m + i]);
        xors.push_back(t.out[i] ^ t.out[m + i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        first_half.push_back(t.in[i]);
        second_half.push_back(t.in[n + i]);
        xors.push_back(t.in[i] ^ t.in[n + i]);
    }

    std::set<VarId> xor_vars;
    for (const auto& p : xors) p.collect_vars(xor_vars);
    std::set<VarId> yd;
    for (VarId v : t.vars)
        if (!xor_vars.count(v)) yd.insert(v);

    std::set<VarId> y1;
    for (const auto& p : first_half) {
        std::set<VarId> vs;
        p.collect_vars(vs);
        for (VarId v : vs)
            if (!yd.count(v)) y1.insert(v);
    }
    std::set<VarId> y2;
    for (VarId v : t.vars)
        if (!yd.count(v) && !y1.count(v)) y2.insert(v);
    // The two copies must not share non-discarded boundary variables.
    for (const auto& p : second_half) {
        std::set<VarId> vs;
        p.collect_vars(vs);
        for (VarId v : vs)
            if (y1.count(v)) return std::nullopt;
    }
    if (y1.size() != y2.size()) return std::nullopt;

    // delta: first polynomial containing a copy-1 variable must be that
    // variable itself, and its copy-2 counterpart a fresh single variable.
    std::map<VarId, VarId> delta;  // y2 var -> y1 var
    std::set<VarId> mapped_targets;
    for (VarId v : y1) {
        std::size_t idx = first_half.size();
        for (std::size_t i = 0; i < first_half.size(); ++i) {
            if (first_half[i].contains_var(v)) {
                idx = i;
                break;
            }
        }
        if (idx == first_half.size()) return std::nullopt;
        if (!(first_half[idx] == BoolPoly::var(v))) return std::nullopt;
        auto w = second_half[idx].as_single_var();
        if (!w || !y2.count(*w) || delta.count(*w)) return std::nullopt;
        if (mapped_targets.count(v)) return std::nullopt;
        delta[*w] = v;
        mapped_targets.insert(v);
    }
    if (delta.size() != y2.size()) return std::nullopt;

    for (const auto& e : xors)
        if (!e.renamed(delta).is_zero()) return std::nullopt;

    auto fold_bp = [&](BoolPoly p) {
        for (VarId v : y1) p = p.substituted(v, BoolPoly::zero());
        return p.renamed(delta);
    };

    SopTerm r;
    r.n_out = m;
    r.n_in = n;
    r.scalar = Scalar{odd_root, t.scalar.half_exp / 2};
    for (VarId v : y1) r.vars.push_back(v);
    for (VarId v : yd) r.vars.push_back(v);
    std::sort(r.vars.begin(), r.vars.end());
    PhasePoly p = t.phase;
    for (VarId v : y1) p = p.substituted(v, BoolPoly::zero());
    r.phase = p.renamed(delta).negated();
    for (std::size_t i = 0; i < m; ++i) r.out.push_back(fold_bp(t.out[m + i]));
    for (std::size_t i = 0; i < n; ++i) r.in.push_back(fold_bp(t.in[n + i]));
    for (VarId v : yd) r.discards.push_back(BoolPoly::var(v));
    std::sort(r.discards.begin(), r.discards.end());
    return r.renumbered();
}

}  // namespace sop
