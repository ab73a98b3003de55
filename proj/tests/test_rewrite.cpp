#include <doctest.h>

#include "helpers.hpp"
#include "sop/rewrite.hpp"

using namespace sop;
using soptest::Rng;

namespace {

bool measure_less(const MeasureTuple& a, const MeasureTuple& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Steps through a full reduction checking, at every step, exact semantic
// preservation and strict decrease of the termination measure.
void check_sound_reduction(const SopTerm& t0, Strategy strategy,
                           std::size_t max_steps = 200) {
    const bool ground = !t0.is_pure();
    auto sem = [&](const SopTerm& t) {
        return ground ? interp_ground(t) : interp(t);
    };
    SopTerm cur = t0;
    CycMatrix cur_m = sem(cur);
    for (std::size_t i = 0; i < max_steps; ++i) {
        const auto step = try_rule(cur, strategy);
        if (!step) return;
        REQUIRE(measure_less(step->second.measure_after, measure_tuple(cur)));
        validate(step->first);
        const CycMatrix next_m = sem(step->first);
        REQUIRE(matrix_equal(cur_m, next_m));
        cur = step->first;
        cur_m = next_m;
    }
    FAIL("reduction did not terminate within the step budget");
}

SopTerm tensor_chain(const std::vector<SopTerm>& ts) {
    SopTerm r = ts.at(0);
    for (std::size_t i = 1; i < ts.size(); ++i) r = tensor(r, ts[i]);
    return r;
}

}  // namespace

TEST_CASE("elim removes an untouched variable and doubles") {
    SopTerm t = identity(1);
    t.vars.push_back(2);
    validate(t);
    const auto step = try_rule(t, Strategy::Clif);
    REQUIRE(step);
    CHECK(step->second.rule == RuleId::Elim);
    // summing over the untouched variable doubles the term
    SopTerm expect = identity(1);
    expect.scalar = Scalar{1, 2};
    CHECK(step->first == expect);
}

TEST_CASE("H composed with H reduces to the identity") {
    const SopTerm hh = compose(gate_h(), gate_h());
    const SopTerm r = reduce(hh, Strategy::Clif);
    CHECK(alpha_canonicalize(r) == alpha_canonicalize(identity(1)));
    CHECK(r.scalar == Scalar::one());
}

TEST_CASE("omega on an isolated quarter phase") {
    SopTerm t;
    t.vars = {1};
    t.phase.add_term(Monomial::var(1), Dyadic::of(1, 2));
    validate(t);
    const SopTerm r = reduce(t, Strategy::Clif);
    CHECK(r.vars.empty());
    CHECK(r.scalar == Scalar{1, 1});
    CHECK(r.phase == PhasePoly::constant(Dyadic::of(1, 3)));
    CHECK(matrix_equal(interp(t), interp(r)));
}

TEST_CASE("clif is incomplete: the two-term witness") {
    // t1 = sum e^{2 i pi (ab + bc)/2} |c><a,b|
    SopTerm t1;
    t1.n_out = 1;
    t1.n_in = 2;
    t1.vars = {1, 2, 3};
    t1.phase.add_term(Monomial({1, 2}), Dyadic::half());
    t1.phase.add_term(Monomial({2, 3}), Dyadic::half());
    t1.out = {BoolPoly::var(3)};
    t1.in = {BoolPoly::var(1), BoolPoly::var(2)};
    validate(t1);
    // t2 = sum e^{2 i pi bc/2} |a + c><a,b|
    SopTerm t2;
    t2.n_out = 1;
    t2.n_in = 2;
    t2.vars = {1, 2, 3};
    t2.phase.add_term(Monomial({2, 3}), Dyadic::half());
    t2.out = {BoolPoly::var(1) ^ BoolPoly::var(3)};
    t2.in = {BoolPoly::var(1), BoolPoly::var(2)};
    validate(t2);

    CHECK(matrix_equal(interp(t1), interp(t2)));
    CHECK(is_terminal(t1, Strategy::Clif));
    CHECK(is_terminal(t2, Strategy::Clif));
    CHECK(alpha_canonicalize(t1) != alpha_canonicalize(t2));
    CHECK_FALSE(is_terminal(t2, Strategy::ClifPlus));
    CHECK(equiv(t1, t2) == EquivResult::Equal);
    CHECK(alpha_canonicalize(reduce(t1, Strategy::ClifPlus)) ==
          alpha_canonicalize(reduce(t2, Strategy::ClifPlus)));
}

TEST_CASE("the rewrite system is not confluent outside clifford") {
    // sum e^{2 i pi (y0/4 + y0y1y2/2 + y1y3/2)} |y3>
    SopTerm t;
    t.n_out = 1;
    t.vars = {1, 2, 3, 4};
    t.phase.add_term(Monomial::var(1), Dyadic::of(1, 2));
    t.phase.add_term(Monomial({1, 2, 3}), Dyadic::half());
    t.phase.add_term(Monomial({2, 4}), Dyadic::half());
    t.out = {BoolPoly::var(4)};
    validate(t);

    // HH branch: 2 sum e^{2 i pi y0/4} |y0 y2>
    SopTerm hh_expect;
    hh_expect.n_out = 1;
    hh_expect.vars = {1, 3};
    hh_expect.scalar = Scalar{1, 2};
    hh_expect.phase.add_term(Monomial::var(1), Dyadic::of(1, 2));
    hh_expect.out = {BoolPoly::from_monomials({Monomial({1, 3})})};
    validate(hh_expect);
    const SopTerm hh_r = reduce(t, Strategy::ClifPlus);
    CHECK(hh_r == hh_expect);

    // omega branch: sqrt2 sum e^{2 i pi (1/8 - y1y2/4 + y1y3/2)} |y3>
    SopTerm om_expect;
    om_expect.n_out = 1;
    om_expect.vars = {2, 3, 4};
    om_expect.scalar = Scalar{1, 1};
    om_expect.phase.add_term(Monomial::unit(), Dyadic::of(1, 3));
    om_expect.phase.add_term(Monomial({2, 3}), Dyadic::of(3, 2));
    om_expect.phase.add_term(Monomial({2, 4}), Dyadic::half());
    om_expect.out = {BoolPoly::var(4)};
    validate(om_expect);
    const auto om = try_one_rule(t, RuleId::Omega);
    REQUIRE(om);
    CHECK(om->first == om_expect);

    // Both branches are stuck, equal to the original, yet different.
    for (Strategy s : {Strategy::Clif, Strategy::ClifPlus}) {
        CHECK(is_terminal(hh_expect, s));
        CHECK(is_terminal(om_expect, s));
    }
    CHECK(matrix_equal(interp(t), interp(hh_expect)));
    CHECK(matrix_equal(interp(t), interp(om_expect)));
    CHECK(alpha_canonicalize(hh_expect) != alpha_canonicalize(om_expect));
}

TEST_CASE("discard simplification has priority over boundary rules") {
    // |y1,y2,y3> !{y1+y2, y2+y3, y1+y3}
    SopTerm t;
    t.n_out = 3;
    t.vars = {1, 2, 3};
    t.out = {BoolPoly::var(1), BoolPoly::var(2), BoolPoly::var(3)};
    t.discards = {BoolPoly::var(1) ^ BoolPoly::var(2),
                  BoolPoly::var(2) ^ BoolPoly::var(3),
                  BoolPoly::var(1) ^ BoolPoly::var(3)};
    std::sort(t.discards.begin(), t.discards.end());
    validate(t);

    SopTerm expect;
    expect.n_out = 3;
    expect.vars = {1, 2, 3};
    expect.out = {BoolPoly::var(2), BoolPoly::var(1) ^ BoolPoly::var(2),
                  BoolPoly::var(2) ^ BoolPoly::var(3)};
    expect.discards = {BoolPoly::var(1), BoolPoly::var(3)};
    validate(expect);

    const SopTerm r = reduce(t, Strategy::ClifGround);
    CHECK(is_ground_normal_form(r));
    CHECK(alpha_canonicalize(r) == alpha_canonicalize(expect));
    CHECK(matrix_equal(interp_ground(t), interp_ground(r)));
}

TEST_CASE("null clifford terms reach the canonical zero form") {
    // <1|0> = 0, padded with a wire.
    const SopTerm zero01 = compose(bra({true}), ket({false}));
    const SopTerm t = tensor(gate_h(), zero01);
    const SopTerm r = reduce(t, Strategy::ClifPlus);
    SopTerm expect;
    expect.n_in = 1;
    expect.n_out = 1;
    expect.vars = {1};
    expect.phase.add_term(Monomial::var(1), Dyadic::half());
    expect.out = {BoolPoly::zero()};
    expect.in = {BoolPoly::zero()};
    validate(expect);
    CHECK(alpha_canonicalize(r) == alpha_canonicalize(expect));
    CHECK(is_clif_plus_normal_form(r));
    CHECK(matrix_is_zero(interp(r)));
}

TEST_CASE("random pure reductions are sound step by step") {
    Rng rng(101);
    for (int i = 0; i < 150; ++i) {
        const SopTerm t = soptest::random_term(rng, 6, 1 + i % 3, i % 2, 0,
                                               i % 2 == 0);
        check_sound_reduction(t, Strategy::ClifPlus);
        check_sound_reduction(t, Strategy::Clif);
    }
}

TEST_CASE("random ground reductions are sound step by step") {
    Rng rng(103);
    for (int i = 0; i < 120; ++i) {
        const SopTerm t =
            soptest::random_term(rng, 4, i % 3, i % 2, 1 + i % 3, i % 2 == 0);
        check_sound_reduction(t, Strategy::ClifGround);
    }
}

TEST_CASE("random circuit compositions are sound step by step") {
    Rng rng(107);
    int pure_done = 0, ground_done = 0;
    for (int i = 0; pure_done < 25 && i < 100; ++i) {
        const Circuit c = soptest::random_clifford_circuit(rng, 2, 4);
        const SopTerm t = circuit_to_sop(c);
        if (t.vars.size() > 18) continue;
        check_sound_reduction(t, Strategy::ClifPlus);
        ++pure_done;
    }
    CHECK(pure_done == 25);
    // Ground checks go through the doubled matrix, so keep them tiny.
    for (int i = 0; ground_done < 8 && i < 200; ++i) {
        const Circuit c =
            soptest::random_clifford_circuit(rng, 2, 2, {true, true});
        const SopTerm t = circuit_to_sop(c);
        if (2 * t.vars.size() + t.discards.size() > 18) continue;
        check_sound_reduction(t, Strategy::ClifGround);
        ++ground_done;
    }
    CHECK(ground_done == 8);
}

TEST_CASE("reducts of clifford circuits are in normal form") {
    Rng rng(109);
    for (int i = 0; i < 40; ++i) {
        const Circuit c = soptest::random_clifford_circuit(rng, 3, 12);
        const SopTerm r = reduce(circuit_to_sop(c), Strategy::ClifPlus);
        CHECK(is_clif_plus_normal_form(r));
        const Circuit g =
            soptest::random_clifford_circuit(rng, 3, 12, {true, true});
        const SopTerm rg = reduce(circuit_to_sop(g), Strategy::ClifGround);
        CHECK(is_ground_normal_form(rg));
    }
}

TEST_CASE("equiv verdicts") {
    const SopTerm cz = gate_cz();
    const SopTerm hch = compose(tensor(identity(1), gate_h()),
                                compose(gate_cx(), tensor(identity(1), gate_h())));
    CHECK(equiv(cz, hch) == EquivResult::Equal);
    CHECK(equiv(cz, identity(2)) == EquivResult::Distinct);
    CHECK_THROWS_AS(equiv(cz, identity(1)), ArityMismatch);

    // Non-clifford and too large for the evaluator: unknown.
    std::vector<SopTerm> ta(21, gate_t()), tb(21, gate_t());
    tb[20] = gate_rz(3, 3);
    CHECK(equiv(tensor_chain(ta), tensor_chain(tb)) == EquivResult::Unknown);

    // Non-clifford but small: the exact evaluator decides.
    CHECK(equiv(gate_t(), gate_rz(1, 3)) == EquivResult::Equal);
    CHECK(equiv(gate_t(), gate_rz(3, 3)) == EquivResult::Distinct);
}

TEST_CASE("traces record strictly decreasing measures") {
    RewriteTrace trace;
    const SopTerm t = compose(gate_h(), compose(gate_s(), gate_h()));
    reduce(t, Strategy::ClifPlus, {}, &trace);
    REQUIRE(!trace.steps.empty());
    MeasureTuple prev = measure_tuple(t);
    for (const auto& s : trace.steps) {
        CHECK(measure_less(s.measure_after, prev));
        prev = s.measure_after;
    }
    CHECK(trace.to_json_lines().find("\"rule\"") != std::string::npos);
}

TEST_CASE("step limit and strategy guards") {
    const SopTerm t = compose(gate_h(), gate_h());
    ReduceConfig cfg;
    cfg.max_steps = 1;
    CHECK_THROWS_AS(reduce(t, Strategy::Clif, cfg), StepLimitExceeded);
    CHECK_THROWS_AS(reduce(measure(), Strategy::ClifPlus), Error);
}

TEST_CASE("ground reduction drops global phase") {
    SopTerm t = measure();
    t.phase.add_term(Monomial::unit(), Dyadic::of(1, 3));
    validate(t);
    const SopTerm r = reduce(t, Strategy::ClifGround);
    CHECK(r.phase.constant_part().is_zero());
    CHECK(matrix_equal(interp_ground(t), interp_ground(r)));
}
