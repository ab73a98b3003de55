#include "sop/interp.hpp"

#include "sop/discard.hpp"

namespace sop {

CycMatrix interp(const SopTerm& t, const InterpConfig& cfg) {
    if (!t.is_pure()) throw NotPure("interp expects a pure term; see interp_ground");
    if (t.vars.size() > cfg.var_cap)
        throw TooManyVariables("term has " + std::to_string(t.vars.size()) +
                               " variables, cap is " + std::to_string(cfg.var_cap));
    if (t.phase.max_log_den() > cfg.max_level)
        throw Error("phase denominator exceeds supported root order");
    if (t.n_out > 24 || t.n_in > 24)
        throw TooManyVariables("matrix dimensions too large");

    CycMatrix m(std::size_t{1} << t.n_out, std::size_t{1} << t.n_in);
    m.half_exp = t.scalar.half_exp;

    const std::size_t k = t.vars.size();
    Assignment a;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        for (std::size_t i = 0; i < k; ++i)
            a[t.vars[i]] = (bits >> i) & 1;
        std::size_t row = 0, col = 0;
        for (std::size_t i = 0; i < t.n_out; ++i)
            row = (row << 1) | std::size_t(t.out[i].eval(a));
        for (std::size_t i = 0; i < t.n_in; ++i)
            col = (col << 1) | std::size_t(t.in[i].eval(a));
        m.at(row, col) = m.at(row, col) + CycInt::root(t.phase.eval(a));
    }
    if (t.scalar.odd != 1)
        for (auto& e : m.entries) e = e.times_int(t.scalar.odd);
    return m;
}

CycMatrix interp_ground(const SopTerm& t, const InterpConfig& cfg) {
    return interp(cpm(t), cfg);
}

}  // namespace sop
