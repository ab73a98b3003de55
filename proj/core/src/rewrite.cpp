#include "sop/rewrite.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace sop {

std::string rule_name(RuleId r) {
    switch (r) {
        case RuleId::Elim: return "Elim";
        case RuleId::HH: return "HH";
        case RuleId::Omega: return "Omega";
        case RuleId::ZGround: return "ZGround";
        case RuleId::CstGround: return "CstGround";
        case RuleId::XorGround: return "XorGround";
        case RuleId::HGround: return "HGround";
        case RuleId::Disc: return "Disc";
        case RuleId::Ket: return "Ket";
        case RuleId::Bra: return "Bra";
        case RuleId::Z: return "Z";
    }
    return "?";
}

MeasureTuple measure_tuple(const SopTerm& t) {
    MeasureTuple m;
    m.push_back(t.vars.size());
    std::size_t nonlinear = 0, dsize = 0;
    for (const auto& d : t.discards) {
        if (d.monomial_count() >= 2) ++nonlinear;
        // Count the element itself plus its monomials so that deleting a
        // constant (including 0) still shrinks the tuple.
        dsize += 1 + d.monomial_count();
    }
    m.push_back(nonlinear);
    m.push_back(dsize);
    for (const auto& p : t.out) m.push_back(p.monomial_count());
    for (const auto& p : t.in) m.push_back(p.monomial_count());
    m.push_back(t.phase.monomial_count());
    return m;
}

std::string RewriteTrace::to_json_lines() const {
    std::ostringstream os;
    for (const auto& s : steps) {
        nlohmann::json j;
        j["rule"] = rule_name(s.rule);
        j["vars"] = s.vars;
        j["position"] = s.position;
        j["measure"] = s.measure_after;
        os << j.dump() << "\n";
    }
    return os.str();
}

namespace {

using Match = std::optional<std::pair<SopTerm, RewriteStep>>;

std::set<VarId> boundary_vars(const SopTerm& t) {
    std::set<VarId> s;
    for (const auto& p : t.out) p.collect_vars(s);
    for (const auto& p : t.in) p.collect_vars(s);
    for (const auto& p : t.discards) p.collect_vars(s);
    return s;
}

std::vector<VarId> internal_vars(const SopTerm& t) {
    const auto b = boundary_vars(t);
    std::vector<VarId> r;
    for (VarId v : t.vars)
        if (!b.count(v)) r.push_back(v);
    return r;
}

void remove_vars(SopTerm& t, std::initializer_list<VarId> vs) {
    for (VarId v : vs)
        t.vars.erase(std::remove(t.vars.begin(), t.vars.end(), v), t.vars.end());
}

std::vector<BoolPoly> canonical_discards(std::vector<BoolPoly> ds) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

void subst_boundary(SopTerm& t, VarId v, const BoolPoly& q) {
    for (auto& p : t.out) p = p.substituted(v, q);
    for (auto& p : t.in) p = p.substituted(v, q);
    for (auto& p : t.discards) p = p.substituted(v, q);
    t.discards = canonical_discards(std::move(t.discards));
}

bool all_half(const PhasePoly& c) {
    for (const auto& [m, coef] : c.terms())
        if (!(coef.num == 1 && coef.log_den == 1)) return false;
    return true;
}

Match rule_elim(const SopTerm& t) {
    const auto used = t.used_vars();
    for (VarId v : t.vars) {
        if (used.count(v)) continue;
        SopTerm r = t;
        remove_vars(r, {v});
        r.scalar = r.scalar.times_two();
        return {{std::move(r), RewriteStep{RuleId::Elim, {v}, -1, {}}}};
    }
    return std::nullopt;
}

Match rule_hh(const SopTerm& t, const ReduceConfig& cfg) {
    for (VarId y0 : internal_vars(t)) {
        auto [c, rest] = t.phase.cofactor(y0);
        if (c.is_zero() || !all_half(c)) continue;
        const BoolPoly g = cofactor_to_bool(c);
        // y0' must be a lone variable of the cofactor: a degree-1 monomial
        // whose variable occurs in no other monomial.
        std::optional<VarId> y0p;
        for (const auto& m : g.monomials()) {
            if (m.degree() != 1) continue;
            const VarId v = m.vars()[0];
            bool elsewhere = false;
            for (const auto& m2 : g.monomials())
                if (!(m2 == m) && m2.contains(v)) elsewhere = true;
            if (!elsewhere && (!y0p || v < *y0p)) y0p = v;
        }
        if (!y0p) continue;
        const BoolPoly q = g ^ BoolPoly::var(*y0p);
        SopTerm r = t;
        r.phase = rest.substituted(*y0p, q, cfg.hat_cap);
        subst_boundary(r, *y0p, q);
        remove_vars(r, {y0, *y0p});
        r.scalar = r.scalar.times_two();
        return {{std::move(r), RewriteStep{RuleId::HH, {y0, *y0p}, -1, {}}}};
    }
    return std::nullopt;
}

Match rule_omega(const SopTerm& t, const ReduceConfig& cfg) {
    for (VarId y0 : internal_vars(t)) {
        auto [c, rest] = t.phase.cofactor(y0);
        const Dyadic c0 = c.constant_part();
        if (!(c0.log_den == 2 && (c0.num == 1 || c0.num == 3))) continue;
        PhasePoly c_rest = c;
        c_rest.add_term(Monomial::unit(), c0.negated());
        if (!all_half(c_rest)) continue;
        BoolPoly q = cofactor_to_bool(c_rest);
        // The -pi/2 branch: y0 (3/4 + hat(Q)/2) = y0 (1/4 + hat(Q xor 1)/2) mod 1.
        if (c0.num == 3) q = q ^ BoolPoly::one();
        SopTerm r = t;
        r.phase = rest + PhasePoly::constant(Dyadic::of(1, 3));
        // -hat(Q)/4 = 3/4 hat(Q) mod 1.
        r.phase = r.phase + hat_scaled(q, Dyadic::of(3, 2), cfg.hat_cap);
        remove_vars(r, {y0});
        r.scalar = r.scalar.times_sqrt2();
        return {{std::move(r), RewriteStep{RuleId::Omega, {y0}, -1, {}}}};
    }
    return std::nullopt;
}

std::set<VarId> single_discard_vars(const SopTerm& t) {
    std::set<VarId> s;
    for (const auto& d : t.discards)
        if (auto v = d.as_single_var()) s.insert(*v);
    return s;
}

Match rule_z_ground(const SopTerm& t, const ReduceConfig& cfg) {
    if (t.discards.empty()) return std::nullopt;
    // Global phase is invisible once anything is discarded.
    const Dyadic c0 = t.phase.constant_part();
    if (!c0.is_zero()) {
        SopTerm r = t;
        r.phase.add_term(Monomial::unit(), c0.negated());
        return {{std::move(r), RewriteStep{RuleId::ZGround, {}, -1, {}}}};
    }
    const auto singles = single_discard_vars(t);
    // Monomials built entirely from discarded single variables are products
    // of discard elements; their phase contribution is invisible.
    for (const auto& [m, c] : t.phase.terms()) {
        if (m.is_unit()) continue;
        bool covered = !singles.empty();
        for (VarId v : m.vars())
            if (!singles.count(v)) covered = false;
        if (!covered) continue;
        SopTerm r = t;
        r.phase.add_term(m, c.negated());
        std::vector<VarId> anchor(m.vars().begin(), m.vars().end());
        return {{std::move(r), RewriteStep{RuleId::ZGround, anchor, -1, {}}}};
    }
    // Single-element form: alpha * hat(E) embedded in P for a discarded E.
    for (std::size_t i = 0; i < t.discards.size(); ++i) {
        const BoolPoly& e = t.discards[i];
        if (e.is_zero() || e.as_single_var()) continue;
        const Dyadic alpha = t.phase.coefficient(e.monomials()[0]);
        if (alpha.is_zero()) continue;
        const PhasePoly lifted = hat_scaled(e, alpha, cfg.hat_cap);
        PhasePoly cand = t.phase + lifted.negated();
        if (cand.monomial_count() >= t.phase.monomial_count()) continue;
        SopTerm r = t;
        r.phase = std::move(cand);
        return {{std::move(r), RewriteStep{RuleId::ZGround, {}, int(i), {}}}};
    }
    return std::nullopt;
}

Match rule_cst_ground(const SopTerm& t) {
    for (std::size_t i = 0; i < t.discards.size(); ++i) {
        const BoolPoly& d = t.discards[i];
        if (!d.is_zero() && !d.is_one()) continue;
        SopTerm r = t;
        r.discards.erase(r.discards.begin() + i);
        return {{std::move(r), RewriteStep{RuleId::CstGround, {}, int(i), {}}}};
    }
    return std::nullopt;
}

Match rule_xor_ground(const SopTerm& t) {
    for (std::size_t i = 0; i < t.discards.size(); ++i) {
        const BoolPoly& e = t.discards[i];
        for (const auto& m : e.monomials()) {
            if (m.is_unit()) continue;
            // Is m a product of other single-monomial discard elements?
            Monomial prod;
            bool any = false;
            for (std::size_t j = 0; j < t.discards.size(); ++j) {
                if (j == i) continue;
                const auto& ms = t.discards[j].monomials();
                if (ms.size() != 1) continue;
                const Monomial& f = ms[0];
                bool inside = !f.is_unit() || true;
                for (VarId v : f.vars())
                    if (!m.contains(v)) inside = false;
                if (f.is_unit()) inside = false;
                if (inside) {
                    prod = prod.merged(f);
                    any = true;
                }
            }
            if (!any || !(prod == m)) continue;
            SopTerm r = t;
            r.discards[i] = e ^ BoolPoly::from_monomials({m});
            r.discards = canonical_discards(std::move(r.discards));
            std::vector<VarId> anchor(m.vars().begin(), m.vars().end());
            return {{std::move(r), RewriteStep{RuleId::XorGround, anchor, int(i), {}}}};
        }
    }
    return std::nullopt;
}

Match rule_h_ground(const SopTerm& t) {
    for (VarId y0 : single_discard_vars(t)) {
        bool clean = true;
        for (const auto& p : t.out)
            if (p.contains_var(y0)) clean = false;
        for (const auto& p : t.in)
            if (p.contains_var(y0)) clean = false;
        for (const auto& d : t.discards)
            if (!(d == BoolPoly::var(y0)) && d.contains_var(y0)) clean = false;
        if (!clean) continue;
        auto [c, rest] = t.phase.cofactor(y0);
        if (!all_half(c)) continue;
        const BoolPoly q = cofactor_to_bool(c);
        SopTerm r = t;
        r.phase = rest;
        auto& ds = r.discards;
        ds.erase(std::remove(ds.begin(), ds.end(), BoolPoly::var(y0)), ds.end());
        ds.push_back(q);
        ds = canonical_discards(std::move(ds));
        remove_vars(r, {y0});
        r.scalar = r.scalar.times_sqrt2();
        return {{std::move(r), RewriteStep{RuleId::HGround, {y0}, -1, {}}}};
    }
    return std::nullopt;
}

std::size_t nonlinear_count(const std::vector<BoolPoly>& ds) {
    std::size_t n = 0;
    for (const auto& d : ds)
        if (d.monomial_count() >= 2) ++n;
    return n;
}

Match rule_disc(const SopTerm& t, const ReduceConfig& cfg) {
    for (std::size_t i = 0; i < t.discards.size(); ++i) {
        const BoolPoly& e = t.discards[i];
        if (e.monomial_count() < 2) continue;
        std::set<VarId> evars;
        e.collect_vars(evars);
        for (VarId y0 : evars) {
            if (!e.contains_monomial(Monomial::var(y0))) continue;
            bool elsewhere = false;
            for (const auto& m : e.monomials())
                if (!(m == Monomial::var(y0)) && m.contains(y0)) elsewhere = true;
            if (elsewhere) continue;
            std::vector<BoolPoly> rest;
            for (std::size_t j = 0; j < t.discards.size(); ++j)
                if (j != i) rest.push_back(t.discards[j]);
            std::vector<BoolPoly> rest_sub;
            for (const auto& d : rest) rest_sub.push_back(d.substituted(y0, e));
            if (nonlinear_count(canonical_discards(rest_sub)) >
                nonlinear_count(canonical_discards(rest)))
                continue;
            SopTerm r = t;
            r.phase = t.phase.substituted(y0, e, cfg.hat_cap);
            for (auto& p : r.out) p = p.substituted(y0, e);
            for (auto& p : r.in) p = p.substituted(y0, e);
            rest_sub.push_back(BoolPoly::var(y0));
            r.discards = canonical_discards(std::move(rest_sub));
            return {{std::move(r), RewriteStep{RuleId::Disc, {y0}, int(i), {}}}};
        }
    }
    return std::nullopt;
}

// Shared matcher for (ket) and (bra). `side` is the list being simplified,
// `earlier_extra` the polynomials that must not contain y0 in addition to the
// earlier entries of `side` itself.
Match rule_boundary(const SopTerm& t, bool is_ket, const ReduceConfig& cfg) {
    const std::vector<BoolPoly>& side = is_ket ? t.out : t.in;
    for (std::size_t i = 0; i < side.size(); ++i) {
        const BoolPoly& entry = side[i];
        std::set<VarId> evars;
        entry.collect_vars(evars);
        for (VarId y0 : evars) {
            if (!entry.contains_monomial(Monomial::var(y0))) continue;
            bool elsewhere = false;
            for (const auto& m : entry.monomials())
                if (!(m == Monomial::var(y0)) && m.contains(y0)) elsewhere = true;
            if (elsewhere) continue;
            const BoolPoly rem = entry ^ BoolPoly::var(y0);
            if (rem.is_zero()) continue;
            bool blocked = false;
            for (std::size_t j = 0; j < i; ++j)
                if (side[j].contains_var(y0)) blocked = true;
            if (!is_ket)
                for (const auto& p : t.out)
                    if (p.contains_var(y0)) blocked = true;
            if (blocked) continue;

            // Ground side condition: either y0 is untouched by the discard
            // set, or y0 itself is discarded and some discarded polynomial
            // (or the constant 1) can serve as the part we fold away.
            bool dvar = false;
            for (const auto& d : t.discards)
                if (d.contains_var(y0)) dvar = true;
            BoolPoly part = rem;
            if (dvar) {
                if (!std::binary_search(t.discards.begin(), t.discards.end(),
                                        BoolPoly::var(y0)))
                    continue;
                // y0 must not appear in any other discarded polynomial: the
                // shift would have to rewrite that polynomial too, and the
                // discard set is left untouched below.
                bool tangled = false;
                for (const auto& d : t.discards)
                    if (!(d == BoolPoly::var(y0)) && d.contains_var(y0))
                        tangled = true;
                if (tangled) continue;
                bool found = false;
                auto usable = [&](const BoolPoly& c) {
                    if (c.is_zero() || c.contains_var(y0)) return false;
                    for (const auto& m : c.monomials())
                        if (!rem.contains_monomial(m)) return false;
                    return true;
                };
                for (const auto& d : t.discards) {
                    if (usable(d)) {
                        part = d;
                        found = true;
                        break;
                    }
                }
                if (!found && usable(BoolPoly::one())) {
                    part = BoolPoly::one();
                    found = true;
                }
                if (!found) continue;
            }

            const BoolPoly sub = BoolPoly::var(y0) ^ part;
            SopTerm r = t;
            r.phase = t.phase.substituted(y0, sub, cfg.hat_cap);
            for (auto& p : r.out) p = p.substituted(y0, sub);
            for (auto& p : r.in) p = p.substituted(y0, sub);
            // The discard set is untouched: the side condition guarantees the
            // substitution permutes it as a set.
            return {{std::move(r),
                     RewriteStep{is_ket ? RuleId::Ket : RuleId::Bra,
                                 {y0},
                                 int(i),
                                 {}}}};
        }
    }
    return std::nullopt;
}

Match rule_z(const SopTerm& t) {
    for (VarId y0 : internal_vars(t)) {
        auto [c, rest] = t.phase.cofactor(y0);
        if (!(c == PhasePoly::constant(Dyadic::half()))) continue;
        bool boundary_nonzero = false;
        for (const auto& p : t.out)
            if (!p.is_zero()) boundary_nonzero = true;
        for (const auto& p : t.in)
            if (!p.is_zero()) boundary_nonzero = true;
        if (rest.is_zero() && !boundary_nonzero) continue;
        SopTerm r;
        r.n_in = t.n_in;
        r.n_out = t.n_out;
        r.scalar = Scalar::one();
        r.vars = {1};
        r.phase.add_term(Monomial::var(1), Dyadic::half());
        r.out.assign(t.n_out, BoolPoly::zero());
        r.in.assign(t.n_in, BoolPoly::zero());
        return {{std::move(r), RewriteStep{RuleId::Z, {y0}, -1, {}}}};
    }
    return std::nullopt;
}

const std::vector<RuleId>& strategy_rules(Strategy s) {
    static const std::vector<RuleId> clif = {RuleId::Elim, RuleId::HH,
                                             RuleId::Omega};
    static const std::vector<RuleId> clif_plus = {
        RuleId::Elim, RuleId::HH, RuleId::Omega,
        RuleId::Ket,  RuleId::Bra, RuleId::Z};
    static const std::vector<RuleId> clif_ground = {
        RuleId::Elim,      RuleId::HH,        RuleId::Omega,
        RuleId::ZGround,   RuleId::CstGround, RuleId::XorGround,
        RuleId::HGround,   RuleId::Disc,      RuleId::Ket,
        RuleId::Bra,       RuleId::Z};
    switch (s) {
        case Strategy::Clif: return clif;
        case Strategy::ClifPlus: return clif_plus;
        case Strategy::ClifGround: return clif_ground;
    }
    return clif;
}

Match match_rule(const SopTerm& t, RuleId rule, const ReduceConfig& cfg) {
    switch (rule) {
        case RuleId::Elim: return rule_elim(t);
        case RuleId::HH: return rule_hh(t, cfg);
        case RuleId::Omega: return rule_omega(t, cfg);
        case RuleId::ZGround: return rule_z_ground(t, cfg);
        case RuleId::CstGround: return rule_cst_ground(t);
        case RuleId::XorGround: return rule_xor_ground(t);
        case RuleId::HGround: return rule_h_ground(t);
        case RuleId::Disc: return rule_disc(t, cfg);
        case RuleId::Ket: return rule_boundary(t, true, cfg);
        case RuleId::Bra: return rule_boundary(t, false, cfg);
        case RuleId::Z: return rule_z(t);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<SopTerm, RewriteStep>> try_one_rule(
    const SopTerm& t, RuleId rule, const ReduceConfig& cfg) {
    Match m = match_rule(t, rule, cfg);
    if (m) m->second.measure_after = measure_tuple(m->first);
    return m;
}

std::optional<std::pair<SopTerm, RewriteStep>> try_rule(const SopTerm& t,
                                                        Strategy strategy,
                                                        const ReduceConfig& cfg) {
    for (RuleId rule : strategy_rules(strategy)) {
        Match m = match_rule(t, rule, cfg);
        if (m) {
            m->second.measure_after = measure_tuple(m->first);
            return m;
        }
    }
    return std::nullopt;
}

SopTerm reduce(const SopTerm& t, Strategy strategy, const ReduceConfig& cfg,
               RewriteTrace* trace) {
    if (!t.is_pure() && strategy != Strategy::ClifGround)
        throw Error("terms with discards need the ground strategy");
    SopTerm cur = t;
    MeasureTuple cur_measure = measure_tuple(cur);
    for (std::size_t step = 0; step < cfg.max_steps; ++step) {
        auto m = try_rule(cur, strategy, cfg);
        if (!m) return cur;
        if (cfg.check_measure &&
            !std::lexicographical_compare(m->second.measure_after.begin(),
                                          m->second.measure_after.end(),
                                          cur_measure.begin(), cur_measure.end()))
            throw Error("termination measure did not decrease at rule " +
                        rule_name(m->second.rule));
        cur = std::move(m->first);
        cur_measure = m->second.measure_after;
        if (trace) trace->steps.push_back(std::move(m->second));
    }
    throw StepLimitExceeded("reduction exceeded max_steps");
}

bool is_terminal(const SopTerm& t, Strategy strategy) {
    return !try_rule(t, strategy).has_value();
}

bool is_clif_plus_normal_form(const SopTerm& t) {
    if (!t.is_pure()) return false;
    // Zero form: a single variable, phase y/2, all-zero boundary.
    if (t.vars.size() == 1 &&
        t.phase == PhasePoly::term(Monomial::var(t.vars[0]), Dyadic::half())) {
        bool zeros = true;
        for (const auto& p : t.out)
            if (!p.is_zero()) zeros = false;
        for (const auto& p : t.in)
            if (!p.is_zero()) zeros = false;
        if (zeros) return true;
    }
    std::set<VarId> earlier;
    auto affine_over = [&](const BoolPoly& p) {
        for (const auto& m : p.monomials()) {
            if (m.degree() > 1) return false;
            for (VarId v : m.vars())
                if (!earlier.count(v)) return false;
        }
        return true;
    };
    for (const auto& p : t.out) {
        if (auto v = p.as_single_var(); v && !earlier.count(*v)) {
            earlier.insert(*v);
            continue;
        }
        if (!affine_over(p)) return false;
    }
    for (const auto& p : t.in) {
        if (auto v = p.as_single_var(); v && !earlier.count(*v)) {
            earlier.insert(*v);
            continue;
        }
        if (!affine_over(p)) return false;
    }
    std::set<VarId> pv;
    t.phase.collect_vars(pv);
    for (VarId v : pv)
        if (!earlier.count(v)) return false;
    for (VarId v : t.vars)
        if (!earlier.count(v)) return false;
    return true;
}

bool is_ground_normal_form(const SopTerm& t) {
    if (t.is_pure()) return is_clif_plus_normal_form(t);
    // Discards must be distinct single variables appearing in the boundary.
    std::set<VarId> bv;
    for (const auto& p : t.out) p.collect_vars(bv);
    for (const auto& p : t.in) p.collect_vars(bv);
    std::set<VarId> dv;
    for (const auto& d : t.discards) {
        auto v = d.as_single_var();
        if (!v || !bv.count(*v)) return false;
        dv.insert(*v);
    }
    // Boundary polynomials stay affine.
    for (const auto& p : t.out)
        for (const auto& m : p.monomials())
            if (m.degree() > 1) return false;
    for (const auto& p : t.in)
        for (const auto& m : p.monomials())
            if (m.degree() > 1) return false;
    // Phase: no constant (global phase is meaningless here), degree <= 2,
    // nothing supported entirely on discarded variables, all variables in
    // the boundary.
    for (const auto& [m, c] : t.phase.terms()) {
        if (m.is_unit()) return false;
        if (m.degree() > 2) return false;
        bool all_disc = true;
        for (VarId v : m.vars()) {
            if (!bv.count(v)) return false;
            if (!dv.count(v)) all_disc = false;
        }
        if (all_disc) return false;
    }
    for (VarId v : t.vars)
        if (!bv.count(v)) return false;
    return true;
}

EquivResult equiv(const SopTerm& a, const SopTerm& b, const EquivConfig& cfg) {
    if (a.n_in != b.n_in || a.n_out != b.n_out)
        throw ArityMismatch("equiv: terms have different arities");
    const bool ground = !a.is_pure() || !b.is_pure();
    const Strategy strat = ground ? Strategy::ClifGround : Strategy::ClifPlus;
    const SopTerm ra = alpha_canonicalize(reduce(a, strat, cfg.reduce));
    const SopTerm rb = alpha_canonicalize(reduce(b, strat, cfg.reduce));
    if (ra == rb) return EquivResult::Equal;
    if (is_clifford(a) && is_clifford(b)) return EquivResult::Distinct;
    // Exact evaluation fallback for small non-Clifford terms.
    auto evaluable = [&](const SopTerm& t) {
        const std::size_t k =
            t.is_pure() ? t.vars.size()
                        : 2 * t.vars.size() + t.discards.size();
        return k <= cfg.interp.var_cap;
    };
    if (evaluable(ra) && evaluable(rb)) {
        auto mat = [&](const SopTerm& t) {
            return ground ? interp_ground(t, cfg.interp) : interp(t, cfg.interp);
        };
        return matrix_equal(mat(ra), mat(rb)) ? EquivResult::Equal
                                              : EquivResult::Distinct;
    }
    return EquivResult::Unknown;
}

}  // namespace sop
