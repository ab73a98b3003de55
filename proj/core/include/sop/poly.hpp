#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sop/errors.hpp"

namespace sop {

using VarId = std::uint32_t;

// Assignment of boolean values to variables. Unlisted variables read as 0.
using Assignment = std::map<VarId, bool>;

// Product of distinct variables (x^2 = x). Empty product is the constant 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<VarId> vars);
    static Monomial unit() { return Monomial{}; }
    static Monomial var(VarId v) { return Monomial{{v}}; }

    const std::vector<VarId>& vars() const { return vars_; }
    std::size_t degree() const { return vars_.size(); }
    bool is_unit() const { return vars_.empty(); }
    bool contains(VarId v) const;
    Monomial merged(const Monomial& o) const;  // union of variable sets
    Monomial without(VarId v) const;
    bool eval(const Assignment& a) const;

    // Canonical order: shortlex on the sorted variable list.
    std::strong_ordering operator<=>(const Monomial& o) const;
    bool operator==(const Monomial& o) const = default;

private:
    std::vector<VarId> vars_;  // sorted, unique
};

// Multilinear polynomial over F2, kept as the canonical XOR-set of monomials.
class BoolPoly {
public:
    BoolPoly() = default;
    static BoolPoly zero() { return {}; }
    static BoolPoly one();
    static BoolPoly var(VarId v);
    static BoolPoly from_monomials(std::vector<Monomial> ms);

    const std::vector<Monomial>& monomials() const { return ms_; }
    std::size_t monomial_count() const { return ms_.size(); }
    bool is_zero() const { return ms_.empty(); }
    bool is_one() const;
    std::optional<VarId> as_single_var() const;
    bool contains_monomial(const Monomial& m) const;
    bool contains_var(VarId v) const;
    void collect_vars(std::set<VarId>& out) const;

    BoolPoly operator^(const BoolPoly& o) const;
    BoolPoly operator*(const BoolPoly& o) const;
    BoolPoly substituted(VarId v, const BoolPoly& q) const;
    bool eval(const Assignment& a) const;
    BoolPoly renamed(const std::map<VarId, VarId>& ren) const;

    std::strong_ordering operator<=>(const BoolPoly& o) const;
    bool operator==(const BoolPoly& o) const = default;

    std::string to_string() const;

private:
    std::vector<Monomial> ms_;  // sorted, unique
};

// Dyadic fraction reduced mod 1 into [0, 1): num / 2^log_den with num odd,
// or the canonical zero (0, 0).
struct Dyadic {
    std::int64_t num = 0;
    std::uint32_t log_den = 0;

    static Dyadic zero() { return {}; }
    static Dyadic of(std::int64_t num, std::uint32_t log_den);
    static Dyadic half() { return of(1, 1); }

    bool is_zero() const { return num == 0; }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic negated() const;  // 1 - c mod 1
    Dyadic times_int(std::int64_t k) const;

    auto operator<=>(const Dyadic&) const = default;
    std::string to_string() const;
};

// Phase polynomial: multilinear with dyadic coefficients, taken mod 1.
class PhasePoly {
public:
    PhasePoly() = default;
    static PhasePoly zero() { return {}; }
    static PhasePoly constant(Dyadic c);
    static PhasePoly term(Monomial m, Dyadic c);

    const std::map<Monomial, Dyadic>& terms() const { return ts_; }
    std::size_t monomial_count() const { return ts_.size(); }
    bool is_zero() const { return ts_.empty(); }
    Dyadic coefficient(const Monomial& m) const;
    Dyadic constant_part() const { return coefficient(Monomial::unit()); }
    bool contains_var(VarId v) const;
    void collect_vars(std::set<VarId>& out) const;
    std::uint32_t max_log_den() const;

    void add_term(const Monomial& m, const Dyadic& c);
    PhasePoly operator+(const PhasePoly& o) const;
    PhasePoly negated() const;
    Dyadic eval(const Assignment& a) const;
    PhasePoly renamed(const std::map<VarId, VarId>& ren) const;

    // P = y*C + R with y absent from both C and R; returns (C, R).
    std::pair<PhasePoly, PhasePoly> cofactor(VarId v) const;

    PhasePoly substituted(VarId v, const BoolPoly& q,
                          std::size_t cap = kDefaultHatCap) const;

    bool operator==(const PhasePoly& o) const = default;
    std::string to_string() const;

    static constexpr std::size_t kDefaultHatCap = 1000000;

private:
    std::map<Monomial, Dyadic> ts_;  // nonzero coefficients only
};

// c * hat(q) mod 1, where hat is the multiplicative lift of XOR to integers:
// hat(x) = x, hat(pq) = hat(p)hat(q), hat(p xor q) = hat(p) + hat(q) - 2 hat(p)hat(q).
// Expands by inclusion-exclusion; coefficients that vanish mod 1 are dropped
// as they arise, which truncates subsets of size > log_den(c) + 1.
PhasePoly hat_scaled(const BoolPoly& q, const Dyadic& c,
                     std::size_t cap = PhasePoly::kDefaultHatCap);

// Interprets a phase cofactor C as the F2 polynomial G with C = hat(G)/2 mod 1.
// Every coefficient of C must be exactly 1/2; throws NonHalfCoefficient otherwise.
BoolPoly cofactor_to_bool(const PhasePoly& c);

}  // namespace sop
