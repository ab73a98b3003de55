#include "sop/circuit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sop {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

const std::map<std::string, std::size_t> kGateArity = {
    {"h", 1},     {"x", 1},    {"z", 1},       {"s", 1},       {"sdg", 1},
    {"t", 1},     {"tdg", 1},  {"rz", 1},      {"cz", 2},      {"cx", 2},
    {"prep0", 1}, {"post0", 1}, {"measure", 1}, {"discard", 1},
};

std::int64_t parse_int(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(tok, &pos);
        if (pos != tok.size()) fail(line, "bad integer '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "bad integer '" + tok + "'");
    }
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks[0] != "qubits" || toks.size() != 2)
                fail(line, "expected header 'qubits N'");
            const std::int64_t n = parse_int(toks[1], line);
            if (n < 0) fail(line, "negative qubit count");
            c.n_qubits = std::size_t(n);
            have_header = true;
            continue;
        }

        const auto it = kGateArity.find(toks[0]);
        if (it == kGateArity.end()) fail(line, "unknown op '" + toks[0] + "'");
        CircuitOp op{toks[0], {}, Dyadic::zero(), line};
        std::size_t first_qubit = 1;
        if (op.name == "rz") {
            if (toks.size() != 4) fail(line, "rz takes num log_den qubit");
            const std::int64_t num = parse_int(toks[1], line);
            const std::int64_t den = parse_int(toks[2], line);
            if (den < 0 || den > 62) fail(line, "rz log-denominator out of range");
            op.param = Dyadic::of(num, std::uint32_t(den));
            first_qubit = 3;
        } else if (toks.size() != 1 + it->second) {
            fail(line, op.name + " takes " + std::to_string(it->second) +
                           " qubit argument(s)");
        }
        for (std::size_t i = first_qubit; i < toks.size(); ++i) {
            const std::int64_t q = parse_int(toks[i], line);
            if (q < 0 || std::size_t(q) >= c.n_qubits)
                fail(line, "qubit index " + toks[i] + " out of range");
            op.qubits.push_back(std::size_t(q));
        }
        if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1])
            fail(line, op.name + " needs two distinct qubits");
        c.ops.push_back(op);
    }
    if (!have_header && !text.empty()) {
        // A fully blank file means the empty circuit on zero qubits.
        std::istringstream chk(text);
        for (std::string t; chk >> t;) fail(1, "expected header 'qubits N'");
    }
    return c;
}

namespace {

// Mutable build state: the term so far plus, for each qubit, its current
// wire position (top-down) or npos when the qubit is closed.
struct BuildState {
    SopTerm t;
    std::vector<std::size_t> pos;
    static constexpr std::size_t npos = std::size_t(-1);

    std::size_t wires() const { return t.n_out; }

    std::size_t wire_of(const CircuitOp& op, std::size_t arg) {
        const std::size_t p = pos[op.qubits[arg]];
        if (p == npos)
            fail(op.line, "qubit " + std::to_string(op.qubits[arg]) +
                              " is closed here");
        return p;
    }

    // Identity layer skeleton on the current wire count.
    SopTerm layer() const {
        return identity(wires());
    }

    void apply(const SopTerm& l) { t = compose(l, t); }
};

void apply_gate(BuildState& st, const CircuitOp& op) {
    const std::size_t w = st.wires();
    SopTerm l = st.layer();
    auto y = [](std::size_t p) { return VarId(p + 1); };

    if (op.name == "h") {
        const std::size_t p = st.wire_of(op, 0);
        const VarId fresh = VarId(w + 1);
        l.vars.push_back(fresh);
        l.out[p] = BoolPoly::var(fresh);
        l.phase.add_term(Monomial({y(p), fresh}), Dyadic::half());
        l.scalar = l.scalar.times_sqrt2(-1);
    } else if (op.name == "x") {
        const std::size_t p = st.wire_of(op, 0);
        l.out[p] = l.out[p] ^ BoolPoly::one();
    } else if (op.name == "z" || op.name == "s" || op.name == "sdg" ||
               op.name == "t" || op.name == "tdg" || op.name == "rz") {
        static const std::map<std::string, Dyadic> phases = {
            {"z", Dyadic::of(1, 1)},  {"s", Dyadic::of(1, 2)},
            {"sdg", Dyadic::of(3, 2)}, {"t", Dyadic::of(1, 3)},
            {"tdg", Dyadic::of(7, 3)},
        };
        const std::size_t p = st.wire_of(op, 0);
        const Dyadic c = op.name == "rz" ? op.param : phases.at(op.name);
        l.phase.add_term(Monomial::var(y(p)), c);
    } else if (op.name == "cz") {
        const std::size_t a = st.wire_of(op, 0), b = st.wire_of(op, 1);
        l.phase.add_term(Monomial({y(a), y(b)}), Dyadic::half());
    } else if (op.name == "cx") {
        const std::size_t a = st.wire_of(op, 0), b = st.wire_of(op, 1);
        l.out[b] = BoolPoly::var(y(a)) ^ BoolPoly::var(y(b));
    } else if (op.name == "measure") {
        const std::size_t p = st.wire_of(op, 0);
        l.discards.push_back(BoolPoly::var(y(p)));
    } else if (op.name == "discard" || op.name == "post0") {
        const std::size_t p = st.wire_of(op, 0);
        l.out.erase(l.out.begin() + std::ptrdiff_t(p));
        l.n_out = w - 1;
        if (op.name == "discard") {
            l.discards.push_back(BoolPoly::var(y(p)));
        } else {
            // Postselect 0: keep the variable but force it through <0|.
            l.in[p] = BoolPoly::zero();
            l.vars.erase(std::find(l.vars.begin(), l.vars.end(), y(p)));
        }
        for (auto& q : st.pos)
            if (q != BuildState::npos && q > p) --q;
        st.pos[op.qubits[0]] = BuildState::npos;
    } else if (op.name == "prep0") {
        if (st.pos[op.qubits[0]] != BuildState::npos)
            fail(op.line, "prep0 on an open qubit " +
                              std::to_string(op.qubits[0]));
        // Insert the new wire so outputs stay in qubit order.
        std::size_t p = 0;
        for (std::size_t q = 0; q < op.qubits[0]; ++q)
            if (st.pos[q] != BuildState::npos) ++p;
        l.out.insert(l.out.begin() + std::ptrdiff_t(p), BoolPoly::zero());
        l.n_out = w + 1;
        for (auto& q : st.pos)
            if (q != BuildState::npos && q >= p) ++q;
        st.pos[op.qubits[0]] = p;
    } else {
        fail(op.line, "unknown op '" + op.name + "'");
    }
    validate(l);
    st.apply(l);
}

}  // namespace

SopTerm circuit_to_sop(const Circuit& c) {
    // Qubits whose first op is prep0 start closed, everything else is an
    // open circuit input.
    std::vector<bool> opens(c.n_qubits, true);
    {
        std::vector<bool> seen(c.n_qubits, false);
        for (const auto& op : c.ops)
            for (std::size_t q : op.qubits)
                if (!seen[q]) {
                    seen[q] = true;
                    if (op.name == "prep0") opens[q] = false;
                }
    }
    BuildState st;
    st.pos.assign(c.n_qubits, BuildState::npos);
    std::size_t w = 0;
    for (std::size_t q = 0; q < c.n_qubits; ++q)
        if (opens[q]) st.pos[q] = w++;
    st.t = identity(w);

    for (const auto& op : c.ops) apply_gate(st, op);
    validate(st.t);
    return st.t;
}

std::string AmplitudeResult::to_string() const {
    std::ostringstream os;
    if (half_exp < 0)
        os << "1/sqrt(2)^" << -half_exp << " * ";
    else if (half_exp > 0)
        os << "sqrt(2)^" << half_exp << " * ";
    os << "(" << value.to_string() << ")";
    return os.str();
}

AmplitudeResult amplitude(const Circuit& c, const std::vector<bool>& in_bits,
                          const std::vector<bool>& out_bits,
                          const ReduceConfig& rcfg, const InterpConfig& icfg) {
    SopTerm t = circuit_to_sop(c);
    if (!t.is_pure())
        throw NotPure("amplitude needs a pure circuit; this one has discards");
    if (in_bits.size() != t.n_in || out_bits.size() != t.n_out)
        throw ArityMismatch("bit string lengths do not match circuit arity");
    t = compose(bra(out_bits), compose(t, ket(in_bits)));
    t = reduce(t, Strategy::ClifPlus, rcfg);
    const CycMatrix m = interp(t, icfg);
    return {m.at(0, 0), m.half_exp};
}

}  // namespace sop
