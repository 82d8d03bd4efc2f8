#pragma once

#include <cstdint>
#include <vector>

#include "dicke/simulator.hpp"

namespace dicke {

// Exact binomial coefficient. C(a,b) = 0 for b < 0 or b > a. Throws on a < 0
// or when the exact value does not fit in 64 bits.
std::int64_t binomial(std::int64_t a, std::int64_t b);

// Terms x_i = C(m,i) * C(n-m, l-i) and their suffix sums s_i = sum_{j>=i} x_j
// for i = 0..l. s_0 equals C(n,l) by the Vandermonde identity.
struct WeightSplitCoefficients {
    std::int64_t n, m, k, l;
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> s;
};

WeightSplitCoefficients split_coefficients(std::int64_t n, std::int64_t m,
                                           std::int64_t k, std::int64_t l);

// 2*acos(sqrt(x/y)): RotY by this angle sends |0> to
// sqrt(x/y)|0> + sqrt((y-x)/y)|1>.
double rotation_angle(std::int64_t x, std::int64_t y);
double rotation_angle_real(double x, double y);

// Coefficient vector alpha_0..alpha_k of a Hamming-weight-bounded symmetric
// state, sum_l alpha_l D(n,l).
struct AmplitudeSpec {
    std::vector<cplx> alpha;

    int max_weight() const { return static_cast<int>(alpha.size()) - 1; }
    bool normalized(double tol = 1e-10) const;
};

// Brute-force ground-truth states, built by direct enumeration.
StateVector oracle_dicke_state(int n, int l);
StateVector oracle_symmetric_state(int n, const AmplitudeSpec& spec);

}  // namespace dicke
