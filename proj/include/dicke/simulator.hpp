#pragma once

#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dicke/circuit.hpp"

namespace dicke {

using cplx = std::complex<double>;

// Dense statevector over 2^n basis states. Index bit (n-1-j) carries qubit j,
// so the bitstring written qubit 0 first reads as the big-endian index.
struct StateVector {
    int n = 0;
    std::vector<cplx> amps;

    static StateVector zero_state(int n);
    static StateVector basis_state(int n, std::uint64_t index);

    double norm() const;
    std::uint64_t size() const { return amps.size(); }
};

// Default 24 qubits; DICKE_SIM_CAP overrides.
int simulator_cap();

// Gate application. apply_gate picks the OpenMP kernel for large states;
// apply_gate_serial is the reference implementation the parallel path is
// tested against.
void apply_gate(StateVector& s, const Gate& g);
void apply_gate_serial(StateVector& s, const Gate& g);

StateVector run(const Circuit& c, const StateVector& initial);
StateVector run_serial(const Circuit& c, const StateVector& initial);

double fidelity(const StateVector& a, const StateVector& b);

// Hamming weights whose total probability mass exceeds `threshold`.
std::set<int> support_weights(const StateVector& s, double threshold);

// JSON array of [bitstring, re, im] for amplitudes with magnitude > 1e-12.
std::string dump_nonzero_amplitudes(const StateVector& s);

}  // namespace dicke
