#include <doctest.h>

#include "helpers.hpp"
#include "sop/discard.hpp"
#include "sop/interp.hpp"

using namespace sop;
using soptest::Cplx;

TEST_CASE("hadamard matrix is exact") {
    const CycMatrix m = interp(gate_h());
    CHECK(m.half_exp == -1);
    CHECK(m.at(0, 0) == CycInt::one());
    CHECK(m.at(0, 1) == CycInt::one());
    CHECK(m.at(1, 0) == CycInt::one());
    CHECK(m.at(1, 1) == CycInt::from_int(-1));
}

TEST_CASE("cap row vector") {
    const CycMatrix m = interp(cap(1));
    REQUIRE(m.rows == 1);
    REQUIRE(m.cols == 4);
    CHECK(m.at(0, 0) == CycInt::one());
    CHECK(m.at(0, 1).is_zero());
    CHECK(m.at(0, 2).is_zero());
    CHECK(m.at(0, 3) == CycInt::one());
    CHECK(m.half_exp == 0);
}

TEST_CASE("scalar sums evaluate exactly") {
    // sum_y e^{2 i pi y / 4} = 1 + i
    SopTerm t;
    t.vars = {1};
    t.phase.add_term(Monomial::var(1), Dyadic::of(1, 2));
    validate(t);
    const CycMatrix m = interp(t);
    CHECK(m.at(0, 0) == CycInt::one() + CycInt::root(Dyadic::of(1, 2)));
    CHECK(std::abs(m.to_complex(0, 0) - Cplx(1, 1)) < 1e-12);
}

TEST_CASE("variable cap is enforced") {
    SopTerm t;
    for (VarId v = 1; v <= 8; ++v) {
        t.vars.push_back(v);
        t.phase.add_term(Monomial::var(v), Dyadic::half());
    }
    validate(t);
    InterpConfig cfg;
    cfg.var_cap = 4;
    CHECK_THROWS_AS(interp(t, cfg), TooManyVariables);
    CHECK(interp(t).at(0, 0).is_zero());
}

TEST_CASE("interp refuses terms with discards") {
    CHECK_THROWS_AS(interp(measure()), NotPure);
}

TEST_CASE("ground semantics of measurement is the dephasing channel") {
    const CycMatrix m = interp_ground(measure());
    REQUIRE(m.rows == 4);
    REQUIRE(m.cols == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool keep = (i == j) && (i == 0 || i == 3);
            CHECK(m.at(i, j).is_zero() == !keep);
        }
    CHECK(matrix_equal(interp_ground(identity(1)), interp(cpm(identity(1)))));
}

TEST_CASE("discarding a wire traces it out") {
    // discard . ket(0) and discard . ket(1) are both the scalar channel 1.
    const SopTerm d0 = compose(discard_wires(1), ket({false}));
    const SopTerm d1 = compose(discard_wires(1), ket({true}));
    CHECK(matrix_equal(interp_ground(d0), interp_ground(d1)));
    const CycMatrix m = interp_ground(d0);
    REQUIRE(m.rows == 1);
    REQUIRE(m.cols == 1);
    CHECK(std::abs(m.to_complex(0, 0) - Cplx(1, 0)) < 1e-9);
}

TEST_CASE("row index convention: first wire most significant") {
    // |10> via x on the first of two prepared wires.
    const SopTerm t = tensor(compose(gate_x(), ket({false})), ket({false}));
    const CycMatrix m = interp(t);
    REQUIRE(m.rows == 4);
    CycMatrix e(4, 1);
    e.at(2, 0) = CycInt::one();
    CHECK(matrix_equal(m, e));
}
