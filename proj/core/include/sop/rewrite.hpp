#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sop/interp.hpp"
#include "sop/term.hpp"

namespace sop {

enum class RuleId {
    Elim,
    HH,
    Omega,
    ZGround,
    CstGround,
    XorGround,
    HGround,
    Disc,
    Ket,
    Bra,
    Z,
};

std::string rule_name(RuleId r);

enum class Strategy { Clif, ClifPlus, ClifGround };

// Lexicographic termination witness:
// (|vars|, #nonlinear discards, total discard monomials,
//  mon(O_1)..mon(O_m), mon(I_1)..mon(I_n), mon(P)).
using MeasureTuple = std::vector<std::size_t>;
MeasureTuple measure_tuple(const SopTerm& t);

struct RewriteStep {
    RuleId rule;
    std::vector<VarId> vars;   // variables the match was anchored on
    int position = -1;         // polynomial index for boundary rules
    MeasureTuple measure_after;
};

struct RewriteTrace {
    std::vector<RewriteStep> steps;
    std::string to_json_lines() const;
};

struct ReduceConfig {
    std::size_t max_steps = 1000000;
    std::size_t hat_cap = PhasePoly::kDefaultHatCap;
    bool check_measure = true;  // assert strict lexicographic decrease
};

// Applies the highest-priority applicable rule once. Deterministic: matches
// are searched lowest variable first, leftmost polynomial first.
std::optional<std::pair<SopTerm, RewriteStep>> try_rule(
    const SopTerm& t, Strategy strategy,
    const ReduceConfig& cfg = {});

// Applies a specific rule (first match only), bypassing the priority order.
std::optional<std::pair<SopTerm, RewriteStep>> try_one_rule(
    const SopTerm& t, RuleId rule, const ReduceConfig& cfg = {});

SopTerm reduce(const SopTerm& t, Strategy strategy,
               const ReduceConfig& cfg = {}, RewriteTrace* trace = nullptr);

bool is_terminal(const SopTerm& t, Strategy strategy);

// Normal-form shape audits for terminal terms.
bool is_clif_plus_normal_form(const SopTerm& t);
bool is_ground_normal_form(const SopTerm& t);

enum class EquivResult { Equal, Distinct, Unknown };

struct EquivConfig {
    ReduceConfig reduce;
    InterpConfig interp;
};

// Reduce both sides and compare up to renaming; definitive for Clifford
// inputs, otherwise falls back to the exact evaluator when small enough.
EquivResult equiv(const SopTerm& a, const SopTerm& b,
                  const EquivConfig& cfg = {});

}  // namespace sop
