#include "dicke/simulator.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dicke {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Below this size the OpenMP fork/join overhead dominates.
constexpr u64 kParallelThreshold = u64{1} << 15;

inline u64 qubit_mask(int n, int qubit) { return u64{1} << (n - 1 - qubit); }

// The kernels are written against a canonical index enumeration: every basis
// index is visited once, and an index participates in at most one update pair,
// so iterations are independent and may be split across threads freely.

template <bool Parallel>
void kernel_x(std::vector<cplx>& a, u64 m) {
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if (!(i & m)) std::swap(a[i], a[i | m]);
    }
}

template <bool Parallel>
void kernel_ry(std::vector<cplx>& a, u64 m, double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if (!(i & m)) {
            cplx a0 = a[i], a1 = a[i | m];
            a[i] = c * a0 - s * a1;
            a[i | m] = s * a0 + c * a1;
        }
    }
}

template <bool Parallel>
void kernel_phase(std::vector<cplx>& a, u64 m, double angle) {
    const cplx ph = std::polar(1.0, angle);
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if (i & m) a[i] *= ph;
    }
}

template <bool Parallel>
void kernel_cx(std::vector<cplx>& a, u64 mc, u64 mt) {
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if ((i & mc) && !(i & mt)) std::swap(a[i], a[i | mt]);
    }
}

template <bool Parallel>
void kernel_cry(std::vector<cplx>& a, u64 mc, u64 mt, double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if ((i & mc) && !(i & mt)) {
            cplx a0 = a[i], a1 = a[i | mt];
            a[i] = c * a0 - s * a1;
            a[i | mt] = s * a0 + c * a1;
        }
    }
}

template <bool Parallel>
void kernel_ccx(std::vector<cplx>& a, u64 m1, u64 m2, u64 mt) {
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if ((i & m1) && (i & m2) && !(i & mt)) std::swap(a[i], a[i | mt]);
    }
}

template <bool Parallel>
void kernel_cswap(std::vector<cplx>& a, u64 mc, u64 ma, u64 mb) {
    const i64 size = static_cast<i64>(a.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (i64 i = 0; i < size; ++i) {
        if ((i & mc) && (i & ma) && !(i & mb)) std::swap(a[i], a[i ^ ma ^ mb]);
    }
}

template <bool Parallel>
void dispatch(StateVector& s, const Gate& g) {
    const int n = s.n;
    switch (g.kind) {
        case GateKind::PauliX:
            kernel_x<Parallel>(s.amps, qubit_mask(n, g.q[0]));
            break;
        case GateKind::RotY:
            kernel_ry<Parallel>(s.amps, qubit_mask(n, g.q[0]), g.angle);
            break;
        case GateKind::Phase:
            kernel_phase<Parallel>(s.amps, qubit_mask(n, g.q[0]), g.angle);
            break;
        case GateKind::ControlledNot:
            kernel_cx<Parallel>(s.amps, qubit_mask(n, g.q[0]), qubit_mask(n, g.q[1]));
            break;
        case GateKind::ControlledRotY:
            kernel_cry<Parallel>(s.amps, qubit_mask(n, g.q[0]), qubit_mask(n, g.q[1]),
                                 g.angle);
            break;
        case GateKind::Toffoli:
            kernel_ccx<Parallel>(s.amps, qubit_mask(n, g.q[0]), qubit_mask(n, g.q[1]),
                                 qubit_mask(n, g.q[2]));
            break;
        case GateKind::ControlledSwap:
            kernel_cswap<Parallel>(s.amps, qubit_mask(n, g.q[0]),
                                   qubit_mask(n, g.q[1]), qubit_mask(n, g.q[2]));
            break;
    }
}

void check_gate(const StateVector& s, const Gate& g) {
    for (int i = 0; i < g.arity(); ++i) {
        if (g.q[i] < 0 || g.q[i] >= s.n) {
            throw std::out_of_range("gate qubit index out of range for state");
        }
    }
}

}  // namespace

StateVector StateVector::zero_state(int n) { return basis_state(n, 0); }

StateVector StateVector::basis_state(int n, std::uint64_t index) {
    if (n < 0 || n > 62) throw std::invalid_argument("unsupported qubit count");
    StateVector s;
    s.n = n;
    s.amps.assign(u64{1} << n, cplx{0.0, 0.0});
    if (index >= s.amps.size()) throw std::out_of_range("basis index out of range");
    s.amps[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const cplx& a : amps) acc += std::norm(a);
    return std::sqrt(acc);
}

int simulator_cap() {
    if (const char* env = std::getenv("DICKE_SIM_CAP")) {
        int cap = std::atoi(env);
        if (cap > 0) return cap;
    }
    return 24;
}

void apply_gate(StateVector& s, const Gate& g) {
    check_gate(s, g);
#ifdef _OPENMP
    if (s.amps.size() >= kParallelThreshold) {
        dispatch<true>(s, g);
        return;
    }
#endif
    dispatch<false>(s, g);
}

void apply_gate_serial(StateVector& s, const Gate& g) {
    check_gate(s, g);
    dispatch<false>(s, g);
}

namespace {

StateVector run_impl(const Circuit& c, const StateVector& initial,
                     void (*apply)(StateVector&, const Gate&)) {
    if (c.qubit_count != initial.n) {
        throw std::invalid_argument("circuit and state sizes differ");
    }
    if (c.qubit_count > simulator_cap()) {
        throw std::invalid_argument("qubit count exceeds simulator cap (" +
                                    std::to_string(simulator_cap()) + ")");
    }
    StateVector s = initial;
    for (const Gate& g : c.gates) apply(s, g);
    return s;
}

}  // namespace

StateVector run(const Circuit& c, const StateVector& initial) {
    return run_impl(c, initial, &apply_gate);
}

StateVector run_serial(const Circuit& c, const StateVector& initial) {
    return run_impl(c, initial, &apply_gate_serial);
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.n != b.n) throw std::invalid_argument("fidelity: size mismatch");
    cplx overlap{0.0, 0.0};
    for (u64 i = 0; i < a.size(); ++i) overlap += std::conj(a.amps[i]) * b.amps[i];
    return std::norm(overlap);
}

std::set<int> support_weights(const StateVector& s, double threshold) {
    std::vector<double> mass(s.n + 1, 0.0);
    for (u64 i = 0; i < s.size(); ++i) {
        mass[std::popcount(i)] += std::norm(s.amps[i]);
    }
    std::set<int> weights;
    for (int w = 0; w <= s.n; ++w) {
        if (mass[w] > threshold) weights.insert(w);
    }
    return weights;
}

std::string dump_nonzero_amplitudes(const StateVector& s) {
    nlohmann::json j = nlohmann::json::array();
    for (u64 i = 0; i < s.size(); ++i) {
        if (std::abs(s.amps[i]) <= 1e-12) continue;
        std::string bits(s.n, '0');
        for (int q = 0; q < s.n; ++q) {
            if (i & (u64{1} << (s.n - 1 - q))) bits[q] = '1';
        }
        j.push_back({bits, s.amps[i].real(), s.amps[i].imag()});
    }
    return j.dump();
}

}  // namespace dicke
