#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "sop/circuit.hpp"

using namespace sop;
using soptest::Rng;

namespace {

std::string msg_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parsing") {
    const Circuit c = parse_circuit("qubits 2\nh 1\ncx 0 1\nh 1\n");
    CHECK(c.n_qubits == 2);
    REQUIRE(c.ops.size() == 3);
    CHECK(c.ops[0].name == "h");
    CHECK(c.ops[1].qubits == std::vector<std::size_t>{0, 1});

    const Circuit t = parse_circuit("qubits 1\nrz 1 3 0\n");
    REQUIRE(t.ops.size() == 1);
    CHECK(t.ops[0].param == Dyadic::of(1, 3));

    CHECK(parse_circuit("qubits 3\n# only comments\n").ops.empty());
    CHECK(parse_circuit("").n_qubits == 0);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(msg_of([] { parse_circuit("qubits 1\nh 2\n"); }).find("line 2") !=
          std::string::npos);
    CHECK_THROWS_AS(parse_circuit("qubits 1\nh 2\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("h 0\n"), ParseError);          // no header
    CHECK_THROWS_AS(parse_circuit("qubits 2\nfoo 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits 2\nrz 1 99 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("qubits -1\n"), ParseError);
}

TEST_CASE("hadamard conjugated cnot equals cz") {
    const Circuit c = parse_circuit("qubits 2\nh 1\ncx 0 1\nh 1\n");
    CHECK(equiv(circuit_to_sop(c), gate_cz()) == EquivResult::Equal);
}

TEST_CASE("empty circuit is the identity") {
    const Circuit c = parse_circuit("qubits 3\n");
    CHECK(circuit_to_sop(c) == identity(3));
}

TEST_CASE("measure circuit is the measure generator") {
    const Circuit c = parse_circuit("qubits 1\nmeasure 0\n");
    const SopTerm t = reduce(circuit_to_sop(c), Strategy::ClifGround);
    CHECK(alpha_canonicalize(t) ==
          alpha_canonicalize(reduce(measure(), Strategy::ClifGround)));
}

TEST_CASE("prep0 and post0 change arity") {
    const SopTerm plus = circuit_to_sop(parse_circuit("qubits 1\nprep0 0\nh 0\n"));
    CHECK(plus.n_in == 0);
    CHECK(plus.n_out == 1);
    const CycMatrix m = interp(reduce(plus, Strategy::ClifPlus));
    CHECK(m.at(0, 0) == m.at(1, 0));
    CHECK(!m.at(0, 0).is_zero());

    const SopTerm post =
        circuit_to_sop(parse_circuit("qubits 1\nh 0\npost0 0\n"));
    CHECK(post.n_in == 1);
    CHECK(post.n_out == 0);
    const CycMatrix b = interp(reduce(post, Strategy::ClifPlus));
    CHECK(b.at(0, 0) == b.at(0, 1));

    // prep0 on an open qubit and gates on closed qubits are rejected.
    CHECK_THROWS_AS(circuit_to_sop(parse_circuit("qubits 1\nh 0\nprep0 0\n")),
                    ParseError);
    CHECK_THROWS_AS(
        circuit_to_sop(parse_circuit("qubits 2\ndiscard 0\nh 0\n")),
        ParseError);
    // post0 after measure on the same wire is fine.
    CHECK_NOTHROW(
        circuit_to_sop(parse_circuit("qubits 1\nmeasure 0\npost0 0\n")));
    // prep0 reopens a consumed qubit.
    const SopTerm re = circuit_to_sop(
        parse_circuit("qubits 1\npost0 0\nprep0 0\n"));
    CHECK(re.n_in == 1);
    CHECK(re.n_out == 1);
}

TEST_CASE("output wire order follows qubit indices after prep0") {
    // Qubit 0 is prepared after qubit 1 exists; outputs must still be q0, q1.
    const Circuit c = parse_circuit("qubits 2\nh 1\nprep0 0\nx 0\n");
    const SopTerm t = reduce(circuit_to_sop(c), Strategy::ClifPlus);
    const CycMatrix m = interp(t);
    // First output wire (most significant) is qubit 0 in state |1>.
    for (std::size_t col = 0; col < m.cols; ++col) {
        CHECK(m.at(0, col).is_zero());
        CHECK(m.at(1, col).is_zero());
    }
}

TEST_CASE("random gate circuits match the matrix product oracle") {
    Rng rng(401);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 1 + soptest::pick(rng, 5);
        const Circuit c = soptest::random_clifford_circuit(rng, n, 20);
        const SopTerm t = reduce(circuit_to_sop(c), Strategy::ClifPlus);
        CHECK(soptest::cmat_close(soptest::to_cmat(interp(t)),
                                  soptest::circuit_unitary(c)));
    }
}

TEST_CASE("amplitudes") {
    const Circuit bell = parse_circuit("qubits 2\nh 0\ncx 0 1\n");
    const auto a00 = amplitude(bell, {false, false}, {false, false});
    CHECK(a00.value == CycInt::one());
    CHECK(a00.half_exp == -1);
    CHECK(a00.to_string() == "1/sqrt(2)^1 * (1)");
    const auto a01 = amplitude(bell, {false, false}, {false, true});
    CHECK(a01.value.is_zero());

    const Circuit id1 = parse_circuit("qubits 1\n");
    for (bool b : {false, true}) {
        const auto r = amplitude(id1, {b}, {b});
        CHECK(r.value == CycInt::one());
        CHECK(r.half_exp == 0);
    }
    CHECK_THROWS_AS(amplitude(bell, {false}, {false, false}), ArityMismatch);
    CHECK_THROWS_AS(
        amplitude(parse_circuit("qubits 1\nmeasure 0\n"), {false}, {false}),
        NotPure);
}

TEST_CASE("amplitude agrees with the oracle entrywise") {
    Rng rng(409);
    for (int i = 0; i < 10; ++i) {
        const std::size_t n = 1 + soptest::pick(rng, 3);
        Circuit c = soptest::random_clifford_circuit(rng, n, 12);
        if (i % 2) c.ops.push_back({"t", {soptest::pick(rng, n)}, {}, 0});
        const soptest::CMat u = soptest::circuit_unitary(c);
        for (std::size_t row = 0; row < u.size(); ++row)
            for (std::size_t col = 0; col < u.size(); ++col) {
                std::vector<bool> ob, ib;
                for (std::size_t q = 0; q < n; ++q) {
                    ob.push_back((row >> (n - 1 - q)) & 1);
                    ib.push_back((col >> (n - 1 - q)) & 1);
                }
                const auto r = amplitude(c, ib, ob);
                const auto val = r.value.to_complex() *
                                 std::pow(std::sqrt(2.0), r.half_exp);
                CHECK(std::abs(val - u[row][col]) < 1e-9);
            }
    }
}

TEST_CASE("construction size is linear in ops times qubits") {
    Rng rng(419);
    for (std::size_t n : {2, 4, 6}) {
        for (std::size_t depth : {10, 20, 40}) {
            const Circuit c = soptest::random_clifford_circuit(rng, n, depth);
            const SopTerm t = circuit_to_sop(c);
            std::size_t size = t.vars.size() + t.phase.monomial_count();
            for (const auto& p : t.out) size += p.monomial_count();
            for (const auto& p : t.in) size += p.monomial_count();
            CHECK(size <= 12 * (c.ops.size() + 1) * (n + 1));
        }
    }
}
