#include "sop/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace sop {

std::string Scalar::to_string() const {
    std::ostringstream os;
    if (odd != 1) os << odd << "*";
    os << "sqrt(2)^" << half_exp;
    return os.str();
}

bool SopTerm::has_var(VarId v) const {
    return std::binary_search(vars.begin(), vars.end(), v);
}

VarId SopTerm::fresh_var() const {
    return vars.empty() ? 1 : vars.back() + 1;
}

std::set<VarId> SopTerm::used_vars() const {
    std::set<VarId> s;
    phase.collect_vars(s);
    for (const auto& p : out) p.collect_vars(s);
    for (const auto& p : in) p.collect_vars(s);
    for (const auto& p : discards) p.collect_vars(s);
    return s;
}

std::string SopTerm::to_string() const {
    std::ostringstream os;
    os << scalar.to_string() << " sum{";
    for (std::size_t i = 0; i < vars.size(); ++i)
        os << (i ? "," : "") << "y" << vars[i];
    os << "} e^{2ipi(" << phase.to_string() << ")} |";
    for (std::size_t i = 0; i < out.size(); ++i)
        os << (i ? "," : "") << out[i].to_string();
    os << ">";
    if (!discards.empty()) {
        os << "!{";
        for (std::size_t i = 0; i < discards.size(); ++i)
            os << (i ? "," : "") << discards[i].to_string();
        os << "}";
    }
    os << "<";
    for (std::size_t i = 0; i < in.size(); ++i)
        os << (i ? "," : "") << in[i].to_string();
    os << "|";
    return os.str();
}

namespace {

std::vector<BoolPoly> canonical_discards(std::vector<BoolPoly> ds) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

SopTerm renamed_term(const SopTerm& t, const std::map<VarId, VarId>& ren) {
    SopTerm r = t;
    std::vector<VarId> vs;
    vs.reserve(t.vars.size());
    for (VarId v : t.vars) {
        auto it = ren.find(v);
        vs.push_back(it == ren.end() ? v : it->second);
    }
    std::sort(vs.begin(), vs.end());
    r.vars = std::move(vs);
    r.phase = t.phase.renamed(ren);
    for (auto& p : r.out) p = p.renamed(ren);
    for (auto& p : r.in) p = p.renamed(ren);
    for (auto& p : r.discards) p = p.renamed(ren);
    r.discards = canonical_discards(std::move(r.discards));
    return r;
}

}  // namespace

SopTerm SopTerm::renumbered() const {
    std::map<VarId, VarId> ren;
    VarId next = 1;
    for (VarId v : vars) ren[v] = next++;
    return renamed_term(*this, ren);
}

void validate(const SopTerm& t) {
    if (t.out.size() != t.n_out || t.in.size() != t.n_in)
        throw Error("term arity does not match polynomial lists");
    if (!std::is_sorted(t.vars.begin(), t.vars.end()) ||
        std::adjacent_find(t.vars.begin(), t.vars.end()) != t.vars.end())
        throw Error("binder list not sorted or has duplicates");
    for (VarId v : t.used_vars())
        if (!t.has_var(v)) throw Error("unbound variable in term body");
    if (t.discards != canonical_discards(t.discards))
        throw Error("discard set not canonical");
    if (t.scalar.odd <= 0 || (t.scalar.odd & 1) == 0)
        throw Error("scalar odd part must be a positive odd integer");
}

namespace {

SopTerm base(std::size_t n_in, std::size_t n_out, std::size_t nvars) {
    SopTerm t;
    t.n_in = n_in;
    t.n_out = n_out;
    for (VarId v = 1; v <= nvars; ++v) t.vars.push_back(v);
    t.out.resize(n_out);
    t.in.resize(n_in);
    return t;
}

}  // namespace

SopTerm identity(std::size_t n) {
    SopTerm t = base(n, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t.out[i] = BoolPoly::var(VarId(i + 1));
        t.in[i] = BoolPoly::var(VarId(i + 1));
    }
    return t;
}

SopTerm wire_swap(std::size_t n, std::size_t m) {
    SopTerm t = base(n + m, n + m, n + m);
    for (std::size_t i = 0; i < n + m; ++i) t.in[i] = BoolPoly::var(VarId(i + 1));
    for (std::size_t i = 0; i < m; ++i) t.out[i] = BoolPoly::var(VarId(n + i + 1));
    for (std::size_t i = 0; i < n; ++i) t.out[m + i] = BoolPoly::var(VarId(i + 1));
    return t;
}

SopTerm cup(std::size_t n) {
    SopTerm t = base(0, 2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t.out[i] = BoolPoly::var(VarId(i + 1));
        t.out[n + i] = BoolPoly::var(VarId(i + 1));
    }
    return t;
}

SopTerm cap(std::size_t n) {
    SopTerm t = base(2 * n, 0, n);
    for (std::size_t i = 0; i < n; ++i) {
        t.in[i] = BoolPoly::var(VarId(i + 1));
        t.in[n + i] = BoolPoly::var(VarId(i + 1));
    }
    return t;
}

SopTerm gate_h() {
    SopTerm t = base(1, 1, 2);
    t.scalar.half_exp = -1;
    t.in[0] = BoolPoly::var(1);
    t.out[0] = BoolPoly::var(2);
    t.phase.add_term(Monomial({1, 2}), Dyadic::half());
    return t;
}

namespace {
SopTerm diag_gate(Dyadic c) {
    SopTerm t = base(1, 1, 1);
    t.in[0] = BoolPoly::var(1);
    t.out[0] = BoolPoly::var(1);
    t.phase.add_term(Monomial::var(1), c);
    return t;
}
}  // namespace

SopTerm gate_x() {
    SopTerm t = identity(1);
    t.out[0] = t.out[0] ^ BoolPoly::one();
    return t;
}

SopTerm gate_z() { return diag_gate(Dyadic::of(1, 1)); }
SopTerm gate_s() { return diag_gate(Dyadic::of(1, 2)); }
SopTerm gate_sdg() { return diag_gate(Dyadic::of(3, 2)); }
SopTerm gate_t() { return diag_gate(Dyadic::of(1, 3)); }
SopTerm gate_tdg() { return diag_gate(Dyadic::of(7, 3)); }
SopTerm gate_rz(std::int64_t num, std::uint32_t log_den) {
    return diag_gate(Dyadic::of(num, log_den));
}

SopTerm gate_cz() {
    SopTerm t = identity(2);
    t.phase.add_term(Monomial({1, 2}), Dyadic::half());
    return t;
}

SopTerm gate_cx() {
    SopTerm t = identity(2);
    t.out[1] = BoolPoly::var(1) ^ BoolPoly::var(2);
    return t;
}

SopTerm ket(const std::vector<bool>& bits) {
    SopTerm t = base(0, bits.size(), 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        t.out[i] = bits[i] ? BoolPoly::one() : BoolPoly::zero();
    return t;
}

SopTerm bra(const std::vector<bool>& bits) {
    SopTerm t = base(bits.size(), 0, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        t.in[i] = bits[i] ? BoolPoly::one() : BoolPoly::zero();
    return t;
}

SopTerm measure() {
    SopTerm t = identity(1);
    t.discards.push_back(BoolPoly::var(1));
    return t;
}

SopTerm discard_wires(std::size_t n) {
    SopTerm t = base(n, 0, n);
    for (std::size_t i = 0; i < n; ++i) {
        t.in[i] = BoolPoly::var(VarId(i + 1));
        t.discards.push_back(BoolPoly::var(VarId(i + 1)));
    }
    return t;
}

SopTerm graph_state(const GraphSpec& g) {
    SopTerm t = base(0, g.n, g.n);
    t.scalar.half_exp = -int(g.n);
    for (std::size_t i = 0; i < g.n; ++i) t.out[i] = BoolPoly::var(VarId(i + 1));
    for (auto [a, b] : g.edges) {
        if (a >= g.n || b >= g.n || a == b)
            throw Error("graph edge out of range");
        t.phase.add_term(Monomial({VarId(a + 1), VarId(b + 1)}), Dyadic::half());
    }
    return t;
}

SopTerm compose(const SopTerm& f, const SopTerm& g) {
    if (f.n_in != g.n_out)
        throw ArityMismatch("compose: f expects " + std::to_string(f.n_in) +
                            " wires, g produces " + std::to_string(g.n_out));
    const std::size_t w = f.n_in;

    std::map<VarId, VarId> ren_g, ren_f;
    VarId next = 1;
    for (VarId v : g.vars) ren_g[v] = next++;
    for (VarId v : f.vars) ren_f[v] = next++;
    SopTerm gg = renamed_term(g, ren_g);
    SopTerm ff = renamed_term(f, ren_f);

    SopTerm r;
    r.n_in = g.n_in;
    r.n_out = f.n_out;
    r.scalar = Scalar{f.scalar.odd * g.scalar.odd,
                      f.scalar.half_exp + g.scalar.half_exp - 2 * int(w)};
    for (VarId v = 1; v < next; ++v) r.vars.push_back(v);
    std::vector<VarId> mediators;
    for (std::size_t i = 0; i < w; ++i) {
        r.vars.push_back(next);
        mediators.push_back(next++);
    }

    r.phase = gg.phase + ff.phase;
    for (std::size_t i = 0; i < w; ++i) {
        const Monomial yi = Monomial::var(mediators[i]);
        const PhasePoly ho = hat_scaled(gg.out[i], Dyadic::half());
        for (const auto& [m, c] : ho.terms()) r.phase.add_term(m.merged(yi), c);
        const PhasePoly hi = hat_scaled(ff.in[i], Dyadic::half());
        for (const auto& [m, c] : hi.terms()) r.phase.add_term(m.merged(yi), c);
    }
    r.out = ff.out;
    r.in = gg.in;
    std::vector<BoolPoly> ds = ff.discards;
    ds.insert(ds.end(), gg.discards.begin(), gg.discards.end());
    r.discards = canonical_discards(std::move(ds));
    return r;
}

SopTerm tensor(const SopTerm& f, const SopTerm& g) {
    std::map<VarId, VarId> ren_f, ren_g;
    VarId next = 1;
    for (VarId v : f.vars) ren_f[v] = next++;
    for (VarId v : g.vars) ren_g[v] = next++;
    SopTerm ff = renamed_term(f, ren_f);
    SopTerm gg = renamed_term(g, ren_g);

    SopTerm r;
    r.n_in = f.n_in + g.n_in;
    r.n_out = f.n_out + g.n_out;
    r.scalar = f.scalar.times(g.scalar);
    for (VarId v = 1; v < next; ++v) r.vars.push_back(v);
    r.phase = ff.phase + gg.phase;
    r.out = ff.out;
    r.out.insert(r.out.end(), gg.out.begin(), gg.out.end());
    r.in = ff.in;
    r.in.insert(r.in.end(), gg.in.begin(), gg.in.end());
    std::vector<BoolPoly> ds = ff.discards;
    ds.insert(ds.end(), gg.discards.begin(), gg.discards.end());
    r.discards = canonical_discards(std::move(ds));
    return r;
}

SopTerm dagger(const SopTerm& t) {
    if (!t.is_pure()) throw NotPure("dagger is defined on pure terms only");
    SopTerm r = t;
    r.phase = t.phase.negated();
    r.n_in = t.n_out;
    r.n_out = t.n_in;
    r.out = t.in;
    r.in = t.out;
    return r;
}

SopTerm conjugate(const SopTerm& t) {
    if (!t.is_pure()) throw NotPure("conjugate is defined on pure terms only");
    SopTerm r = t;
    r.phase = t.phase.negated();
    return r;
}

SopTerm transpose(const SopTerm& t) {
    if (!t.is_pure()) throw NotPure("transpose is defined on pure terms only");
    SopTerm r = t;
    r.n_in = t.n_out;
    r.n_out = t.n_in;
    r.out = t.in;
    r.in = t.out;
    return r;
}

bool is_clifford(const SopTerm& t) {
    if (t.scalar.odd != 1) return false;
    for (const auto& [m, c] : t.phase.terms()) {
        switch (m.degree()) {
            case 0:
                if (c.log_den > 3) return false;
                break;
            case 1:
                if (c.log_den > 2) return false;
                break;
            case 2:
                if (c.log_den > 1) return false;
                break;
            default:
                return false;
        }
    }
    auto affine = [](const std::vector<BoolPoly>& ps) {
        for (const auto& p : ps)
            for (const auto& m : p.monomials())
                if (m.degree() > 1) return false;
        return true;
    };
    return affine(t.out) && affine(t.in) && affine(t.discards);
}

namespace {

// Structural comparison key; scalar and arities are equal across the
// candidates alpha_canonicalize compares, so they are omitted.
auto term_key(const SopTerm& t) {
    return std::make_tuple(t.phase.terms(), t.out, t.in, t.discards);
}

}  // namespace

SopTerm alpha_canonicalize(const SopTerm& t) {
    // Canonical labeling. Variables first get name-free occurrence
    // signatures, refined with the signatures of their co-occurring
    // variables until the partition stabilizes; the class order is then a
    // renaming invariant. Residual ties are broken by minimizing the
    // renamed term over the class-respecting orders.
    if (t.vars.empty()) return t;

    struct Occ {
        std::string tag;          // position/coefficient context, name-free
        const Monomial* m;
    };
    std::vector<Occ> occs;
    auto add_polys = [&](char k, const std::vector<BoolPoly>& ps,
                         bool positional) {
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (const auto& m : ps[i].monomials()) {
                std::string tag(1, k);
                // Discards are kept sorted by content, so their index is not
                // stable under renaming; out/in positions are wires.
                if (positional) tag += std::to_string(i);
                tag += 'd' + std::to_string(m.degree());
                occs.push_back({std::move(tag), &m});
            }
    };
    add_polys('O', t.out, true);
    add_polys('I', t.in, true);
    add_polys('D', t.discards, false);
    for (const auto& [m, c] : t.phase.terms())
        occs.push_back({"P" + c.to_string() + "d" + std::to_string(m.degree()),
                        &m});

    std::map<VarId, std::size_t> color;
    {
        std::map<VarId, std::string> sig;
        for (VarId v : t.vars) sig[v];
        for (const auto& o : occs)
            for (VarId v : o.m->vars()) sig[v] += o.tag + ';';
        std::vector<std::string> keys;
        for (auto& [v, s] : sig) {
            // Occurrence multisets are order-insensitive; normalize.
            std::vector<std::string> parts;
            std::size_t at = 0;
            while (at < s.size()) {
                const std::size_t e = s.find(';', at);
                parts.push_back(s.substr(at, e - at));
                at = e + 1;
            }
            std::sort(parts.begin(), parts.end());
            s.clear();
            for (const auto& p : parts) s += p + ';';
            keys.push_back(s);
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (auto& [v, s] : sig)
            color[v] = std::size_t(
                std::lower_bound(keys.begin(), keys.end(), s) - keys.begin());
    }

    for (std::size_t round = 0; round < t.vars.size(); ++round) {
        std::map<VarId, std::string> sig;
        for (VarId v : t.vars) sig[v] = std::to_string(color[v]) + '|';
        for (const auto& o : occs)
            for (VarId v : o.m->vars()) {
                std::vector<std::size_t> others;
                for (VarId u : o.m->vars())
                    if (u != v) others.push_back(color[u]);
                std::sort(others.begin(), others.end());
                std::string part = o.tag + '(';
                for (std::size_t c : others) part += std::to_string(c) + ',';
                sig[v] += part + ");";
            }
        for (auto& [v, s] : sig) {
            std::vector<std::string> parts;
            std::size_t at = s.find('|') + 1;
            std::string head = s.substr(0, at);
            while (at < s.size()) {
                const std::size_t e = s.find(';', at);
                parts.push_back(s.substr(at, e - at));
                at = e + 1;
            }
            std::sort(parts.begin(), parts.end());
            s = head;
            for (const auto& p : parts) s += p + ';';
        }
        std::vector<std::string> keys;
        for (const auto& [v, s] : sig) keys.push_back(s);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::map<VarId, std::size_t> next;
        for (const auto& [v, s] : sig)
            next[v] = std::size_t(
                std::lower_bound(keys.begin(), keys.end(), s) - keys.begin());
        if (next == color) break;
        color = std::move(next);
    }

    std::map<std::size_t, std::vector<VarId>> classes;
    for (VarId v : t.vars) classes[color[v]].push_back(v);

    // Enumerate class-respecting variable orders, bounded; each class starts
    // at its lexicographically least permutation.
    std::size_t combos = 1;
    constexpr std::size_t kMaxCombos = 40320;
    for (auto& [c, vs] : classes) {
        std::sort(vs.begin(), vs.end());
        std::size_t f = 1;
        for (std::size_t i = 2; i <= vs.size() && combos * f <= kMaxCombos; ++i)
            f *= i;
        combos *= f;
        if (combos > kMaxCombos) break;
    }

    auto rename_with = [&](const std::map<std::size_t, std::vector<VarId>>& cl) {
        std::map<VarId, VarId> ren;
        VarId next = 1;
        for (const auto& [c, vs] : cl)
            for (VarId v : vs) ren[v] = next++;
        return renamed_term(t, ren);
    };

    if (combos > kMaxCombos) return rename_with(classes);  // give up on ties

    SopTerm best = rename_with(classes);
    auto best_key = term_key(best);
    std::vector<std::size_t> tied;
    for (const auto& [c, vs] : classes)
        if (vs.size() > 1) tied.push_back(c);
    if (tied.empty()) return best;

    // Odometer over the tied classes' permutations.
    std::map<std::size_t, std::vector<VarId>> cur = classes;
    std::function<void(std::size_t)> walk = [&](std::size_t idx) {
        if (idx == tied.size()) {
            SopTerm cand = rename_with(cur);
            auto key = term_key(cand);
            if (key < best_key) {
                best = std::move(cand);
                best_key = std::move(key);
            }
            return;
        }
        std::vector<VarId>& vs = cur[tied[idx]];
        std::sort(vs.begin(), vs.end());
        do {
            walk(idx + 1);
        } while (std::next_permutation(vs.begin(), vs.end()));
    };
    walk(0);
    return best;
}

}  // namespace sop
