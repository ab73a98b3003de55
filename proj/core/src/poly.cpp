#include "sop/poly.hpp"

#include <algorithm>
#include <sstream>

namespace sop {

// ---- Monomial ----

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool Monomial::contains(VarId v) const {
    return std::binary_search(vars_.begin(), vars_.end(), v);
}

Monomial Monomial::merged(const Monomial& o) const {
    std::vector<VarId> u;
    u.reserve(vars_.size() + o.vars_.size());
    std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                   std::back_inserter(u));
    Monomial m;
    m.vars_ = std::move(u);
    return m;
}

Monomial Monomial::without(VarId v) const {
    Monomial m;
    m.vars_.reserve(vars_.size());
    for (VarId x : vars_)
        if (x != v) m.vars_.push_back(x);
    return m;
}

bool Monomial::eval(const Assignment& a) const {
    for (VarId v : vars_) {
        auto it = a.find(v);
        if (it == a.end() || !it->second) return false;
    }
    return true;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    if (auto c = vars_.size() <=> o.vars_.size(); c != 0) return c;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (auto c = vars_[i] <=> o.vars_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

// ---- BoolPoly ----

BoolPoly BoolPoly::one() {
    BoolPoly p;
    p.ms_.push_back(Monomial::unit());
    return p;
}

BoolPoly BoolPoly::var(VarId v) {
    BoolPoly p;
    p.ms_.push_back(Monomial::var(v));
    return p;
}

BoolPoly BoolPoly::from_monomials(std::vector<Monomial> ms) {
    std::sort(ms.begin(), ms.end());
    // XOR semantics: pairs cancel.
    std::vector<Monomial> out;
    for (auto& m : ms) {
        if (!out.empty() && out.back() == m)
            out.pop_back();
        else
            out.push_back(std::move(m));
    }
    BoolPoly p;
    p.ms_ = std::move(out);
    return p;
}

bool BoolPoly::is_one() const {
    return ms_.size() == 1 && ms_[0].is_unit();
}

std::optional<VarId> BoolPoly::as_single_var() const {
    if (ms_.size() == 1 && ms_[0].degree() == 1) return ms_[0].vars()[0];
    return std::nullopt;
}

bool BoolPoly::contains_monomial(const Monomial& m) const {
    return std::binary_search(ms_.begin(), ms_.end(), m);
}

bool BoolPoly::contains_var(VarId v) const {
    for (const auto& m : ms_)
        if (m.contains(v)) return true;
    return false;
}

void BoolPoly::collect_vars(std::set<VarId>& out) const {
    for (const auto& m : ms_)
        for (VarId v : m.vars()) out.insert(v);
}

BoolPoly BoolPoly::operator^(const BoolPoly& o) const {
    std::vector<Monomial> all = ms_;
    all.insert(all.end(), o.ms_.begin(), o.ms_.end());
    return from_monomials(std::move(all));
}

BoolPoly BoolPoly::operator*(const BoolPoly& o) const {
    std::vector<Monomial> all;
    all.reserve(ms_.size() * o.ms_.size());
    for (const auto& a : ms_)
        for (const auto& b : o.ms_) all.push_back(a.merged(b));
    return from_monomials(std::move(all));
}

BoolPoly BoolPoly::substituted(VarId v, const BoolPoly& q) const {
    BoolPoly acc;
    for (const auto& m : ms_) {
        if (!m.contains(v)) {
            acc = acc ^ from_monomials({m});
        } else {
            BoolPoly rest = from_monomials({m.without(v)});
            acc = acc ^ (rest * q);
        }
    }
    return acc;
}

bool BoolPoly::eval(const Assignment& a) const {
    bool r = false;
    for (const auto& m : ms_) r ^= m.eval(a);
    return r;
}

BoolPoly BoolPoly::renamed(const std::map<VarId, VarId>& ren) const {
    std::vector<Monomial> out;
    out.reserve(ms_.size());
    for (const auto& m : ms_) {
        std::vector<VarId> vs;
        vs.reserve(m.degree());
        for (VarId v : m.vars()) {
            auto it = ren.find(v);
            vs.push_back(it == ren.end() ? v : it->second);
        }
        out.emplace_back(std::move(vs));
    }
    return from_monomials(std::move(out));
}

std::strong_ordering BoolPoly::operator<=>(const BoolPoly& o) const {
    if (auto c = ms_.size() <=> o.ms_.size(); c != 0) return c;
    for (std::size_t i = 0; i < ms_.size(); ++i)
        if (auto c = ms_[i] <=> o.ms_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string BoolPoly::to_string() const {
    if (ms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& m : ms_) {
        if (!first) os << "+";
        first = false;
        if (m.is_unit()) {
            os << "1";
        } else {
            bool fv = true;
            for (VarId v : m.vars()) {
                if (!fv) os << ".";
                fv = false;
                os << "y" << v;
            }
        }
    }
    return os.str();
}

// ---- Dyadic ----

Dyadic Dyadic::of(std::int64_t num, std::uint32_t log_den) {
    const std::int64_t den = std::int64_t{1} << log_den;
    num %= den;
    if (num < 0) num += den;
    while (num != 0 && (num & 1) == 0) {
        num >>= 1;
        log_den -= 1;
    }
    if (num == 0) log_den = 0;
    return Dyadic{num, log_den};
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    const std::uint32_t ld = std::max(log_den, o.log_den);
    const std::int64_t a = num << (ld - log_den);
    const std::int64_t b = o.num << (ld - o.log_den);
    return of(a + b, ld);
}

Dyadic Dyadic::negated() const { return of(-num, log_den); }

Dyadic Dyadic::times_int(std::int64_t k) const {
    // |k| may exceed the denominator; reduce first to keep products small.
    const std::int64_t den = std::int64_t{1} << log_den;
    std::int64_t kk = k % den;
    return of(num * kk, log_den);
}

std::string Dyadic::to_string() const {
    std::ostringstream os;
    os << num << "/" << (std::int64_t{1} << log_den);
    return os.str();
}

// ---- PhasePoly ----

PhasePoly PhasePoly::constant(Dyadic c) { return term(Monomial::unit(), c); }

PhasePoly PhasePoly::term(Monomial m, Dyadic c) {
    PhasePoly p;
    p.add_term(m, c);
    return p;
}

Dyadic PhasePoly::coefficient(const Monomial& m) const {
    auto it = ts_.find(m);
    return it == ts_.end() ? Dyadic::zero() : it->second;
}

bool PhasePoly::contains_var(VarId v) const {
    for (const auto& [m, c] : ts_)
        if (m.contains(v)) return true;
    return false;
}

void PhasePoly::collect_vars(std::set<VarId>& out) const {
    for (const auto& [m, c] : ts_)
        for (VarId v : m.vars()) out.insert(v);
}

std::uint32_t PhasePoly::max_log_den() const {
    std::uint32_t r = 0;
    for (const auto& [m, c] : ts_) r = std::max(r, c.log_den);
    return r;
}

void PhasePoly::add_term(const Monomial& m, const Dyadic& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = ts_.emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) ts_.erase(it);
    }
}

PhasePoly PhasePoly::operator+(const PhasePoly& o) const {
    PhasePoly r = *this;
    for (const auto& [m, c] : o.ts_) r.add_term(m, c);
    return r;
}

PhasePoly PhasePoly::negated() const {
    PhasePoly r;
    for (const auto& [m, c] : ts_) r.ts_.emplace(m, c.negated());
    return r;
}

Dyadic PhasePoly::eval(const Assignment& a) const {
    Dyadic r = Dyadic::zero();
    for (const auto& [m, c] : ts_)
        if (m.eval(a)) r = r + c;
    return r;
}

PhasePoly PhasePoly::renamed(const std::map<VarId, VarId>& ren) const {
    PhasePoly r;
    for (const auto& [m, c] : ts_) {
        std::vector<VarId> vs;
        vs.reserve(m.degree());
        for (VarId v : m.vars()) {
            auto it = ren.find(v);
            vs.push_back(it == ren.end() ? v : it->second);
        }
        r.add_term(Monomial(std::move(vs)), c);
    }
    return r;
}

std::pair<PhasePoly, PhasePoly> PhasePoly::cofactor(VarId v) const {
    PhasePoly c, r;
    for (const auto& [m, coef] : ts_) {
        if (m.contains(v))
            c.add_term(m.without(v), coef);
        else
            r.add_term(m, coef);
    }
    return {c, r};
}

PhasePoly PhasePoly::substituted(VarId v, const BoolPoly& q,
                                 std::size_t cap) const {
    PhasePoly r;
    for (const auto& [m, c] : ts_) {
        if (!m.contains(v)) {
            r.add_term(m, c);
            continue;
        }
        const Monomial rest = m.without(v);
        PhasePoly lifted = hat_scaled(q, c, cap);
        for (const auto& [hm, hc] : lifted.terms())
            r.add_term(hm.merged(rest), hc);
    }
    return r;
}

std::string PhasePoly::to_string() const {
    if (ts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ts_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        if (!m.is_unit()) {
            for (VarId v : m.vars()) os << ".y" << v;
        }
    }
    return os.str();
}

PhasePoly hat_scaled(const BoolPoly& q, const Dyadic& c, std::size_t cap) {
    PhasePoly h;
    if (c.is_zero()) return h;
    for (const auto& m : q.monomials()) {
        // hat(H xor m) = H + m - 2 H m, scaled by c throughout.
        PhasePoly next = h;
        for (const auto& [hm, hc] : h.terms())
            next.add_term(hm.merged(m), hc.times_int(-2));
        next.add_term(m, c);
        if (next.monomial_count() > cap)
            throw MonomialCapExceeded("hat-lift exceeded monomial cap");
        h = std::move(next);
    }
    return h;
}

BoolPoly cofactor_to_bool(const PhasePoly& c) {
    std::vector<Monomial> ms;
    ms.reserve(c.monomial_count());
    for (const auto& [m, coef] : c.terms()) {
        if (!(coef.num == 1 && coef.log_den == 1))
            throw NonHalfCoefficient("cofactor coefficient is not 1/2: " +
                                     coef.to_string());
        ms.push_back(m);
    }
    return BoolPoly::from_monomials(std::move(ms));
}

}  // namespace sop
