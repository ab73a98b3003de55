#pragma once

#include <string>
#include <vector>

#include "sop/interp.hpp"
#include "sop/rewrite.hpp"
#include "sop/term.hpp"

namespace sop {

struct CircuitOp {
    std::string name;
    std::vector<std::size_t> qubits;
    Dyadic param;  // rz only
    int line = 0;
};

struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<CircuitOp> ops;
};

// Grammar: header "qubits N", then one op per line from
//   h x z s sdg t tdg q | rz num log_den q | cz a b | cx a b |
//   prep0 q | post0 q | measure q | discard q
// with '#' starting a comment. Errors carry the offending line number.
Circuit parse_circuit(const std::string& text);

// Left-fold of generator layers. Qubits whose first op is prep0 start closed;
// all others are open inputs. measure decoheres in place, discard and post0
// consume the wire, prep0 reopens a consumed (or never-opened) qubit.
// Using a gate on a closed qubit is an error.
SopTerm circuit_to_sop(const Circuit& c);

struct AmplitudeResult {
    CycInt value;
    int half_exp = 0;
    std::string to_string() const;  // e.g. "1/sqrt(2)^1 * (1)"
};

// <out_bits| C |in_bits> for a pure circuit, computed exactly by reducing
// the closed term and evaluating the leftover scalar sum.
AmplitudeResult amplitude(const Circuit& c, const std::vector<bool>& in_bits,
                          const std::vector<bool>& out_bits,
                          const ReduceConfig& rcfg = {},
                          const InterpConfig& icfg = {});

}  // namespace sop
