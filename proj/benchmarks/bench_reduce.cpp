// Reduction and equivalence timings on random Clifford circuits.
#include <benchmark/benchmark.h>

#include <random>

#include "sop/circuit.hpp"
#include "sop/rewrite.hpp"

using namespace sop;

namespace {

using Rng = std::mt19937;

std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Circuit random_circuit(Rng& rng, std::size_t n, std::size_t depth,
                       bool ground) {
    Circuit c;
    c.n_qubits = n;
    std::vector<std::string> pool = {"h", "x", "z", "s", "sdg", "cz", "cx"};
    if (ground) pool.push_back("measure");
    for (std::size_t i = 0; i < depth; ++i) {
        const std::string& g = pool[pick(rng, pool.size())];
        CircuitOp op{g, {}, Dyadic::zero(), 0};
        if (g == "cz" || g == "cx") {
            if (n < 2) continue;
            std::size_t a = pick(rng, n), b = pick(rng, n - 1);
            if (b >= a) ++b;
            op.qubits = {a, b};
        } else {
            op.qubits = {pick(rng, n)};
        }
        c.ops.push_back(op);
    }
    return c;
}

void bm_reduce(benchmark::State& state) {
    Rng rng(42);
    const std::size_t n = std::size_t(state.range(0));
    const SopTerm t = circuit_to_sop(random_circuit(rng, n, 8 * n, false));
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce(t, Strategy::ClifPlus));
}

void bm_reduce_ground(benchmark::State& state) {
    Rng rng(43);
    const std::size_t n = std::size_t(state.range(0));
    const SopTerm t = circuit_to_sop(random_circuit(rng, n, 8 * n, true));
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce(t, Strategy::ClifGround));
}

void bm_equiv(benchmark::State& state) {
    Rng rng(44);
    const std::size_t n = std::size_t(state.range(0));
    const Circuit c = random_circuit(rng, n, 8 * n, false);
    Circuit d = c;
    d.ops.push_back({"h", {0}, {}, 0});
    d.ops.push_back({"h", {0}, {}, 0});
    const SopTerm a = circuit_to_sop(c), b = circuit_to_sop(d);
    for (auto _ : state) benchmark::DoNotOptimize(equiv(a, b));
}

}  // namespace

BENCHMARK(bm_reduce)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bm_reduce_ground)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bm_equiv)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
