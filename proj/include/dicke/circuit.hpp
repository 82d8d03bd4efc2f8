#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dicke {

// Gate-level IR. Native kinds cover everything the builders emit; Phase shows
// up only when Toffolis are lowered (an exact Toffoli is not expressible over
// {X, RY, CX} alone).
enum class GateKind {
    PauliX,
    RotY,
    Phase,
    ControlledNot,
    ControlledRotY,
    Toffoli,
    ControlledSwap,
};

const char* gate_kind_name(GateKind kind);

struct Gate {
    GateKind kind;
    std::array<int, 3> q{-1, -1, -1};
    double angle = 0.0;

    int arity() const;

    // Factories check index distinctness and angle finiteness.
    static Gate x(int target);
    static Gate ry(int target, double angle);
    static Gate phase(int target, double angle);
    static Gate cx(int control, int target);
    static Gate cry(int control, int target, double angle);
    static Gate ccx(int control1, int control2, int target);
    static Gate cswap(int control, int swap1, int swap2);
};

// Ordered gate list over qubits 0..qubit_count-1. Qubit 0 is the most
// significant bit of a basis-state index (big-endian throughout).
struct Circuit {
    int qubit_count = 0;
    std::vector<Gate> gates;
    std::string label;

    Circuit() = default;
    explicit Circuit(int n, std::string lbl = "");

    void append(const Gate& g);
    void append(const Circuit& other);
    void append_swap(int a, int b);  // 3 CX
};

struct Topology {
    enum class Kind { AllToAll, Path, Grid };
    Kind kind = Kind::AllToAll;
    int n = 0;     // AllToAll / Path
    int rows = 0;  // Grid
    int cols = 0;

    static Topology all_to_all(int n);
    static Topology path(int n);
    static Topology grid(int rows, int cols);

    int size() const;
    bool adjacent(int a, int b) const;
    std::string name() const;
};

struct Metrics {
    int depth = 0;
    long long cnot_count = 0;
    long long total_gates = 0;
    std::map<GateKind, long long> histogram;
};

// ASAP layering: each gate lands in the earliest layer strictly after every
// preceding gate that shares a qubit with it.
int compute_depth(const Circuit& c);

// Rewrites into {PauliX, RotY, Phase, ControlledNot}. With topology_aware set,
// Toffolis use an 8-CX decomposition valid on a contiguous path segment; the
// segment is judged against `topology` when given, otherwise against
// consecutive qubit indices. Throws if a Toffoli support is not contiguous.
Circuit lower_to_basis(const Circuit& c, bool topology_aware,
                       const Topology* topology = nullptr);

// Two-qubit-gate count of lower_to_basis(c, false).
long long count_cnots(const Circuit& c);

Metrics compute_metrics(const Circuit& c);

enum class ValidationMode { GateSupport, Lowered };

struct Violation {
    std::size_t gate_index;
    int a;
    int b;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_connectivity(const Circuit& c, const Topology& t,
                                       ValidationMode mode);

// Serialization: OpenQASM 2.0 (self-contained gate definitions) and JSON.
// Both round-trip losslessly for the native gate set.
std::string to_qasm(const Circuit& c);
Circuit circuit_from_qasm(const std::string& text);
std::string to_json_string(const Circuit& c);
Circuit circuit_from_json_string(const std::string& text);

}  // namespace dicke
