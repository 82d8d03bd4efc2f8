#include "dicke/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicke {

namespace {

using i64 = std::int64_t;

constexpr int kTableMax = 64;

// Pascal triangle up to a = 64; every entry fits in int64.
const std::vector<std::vector<i64>>& pascal_table() {
    static const std::vector<std::vector<i64>> table = [] {
        std::vector<std::vector<i64>> t(kTableMax + 1);
        for (int a = 0; a <= kTableMax; ++a) {
            t[a].resize(a + 1);
            t[a][0] = t[a][a] = 1;
            for (int b = 1; b < a; ++b) t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
        }
        return t;
    }();
    return table;
}

}  // namespace

std::int64_t binomial(std::int64_t a, std::int64_t b) {
    if (a < 0) throw std::invalid_argument("binomial: a must be non-negative");
    if (b < 0 || b > a) return 0;
    if (a <= kTableMax) return pascal_table()[a][b];
    // Exact multiplicative evaluation for wide, shallow coefficients.
    b = std::min(b, a - b);
    __int128 acc = 1;
    for (i64 i = 1; i <= b; ++i) {
        acc = acc * (a - b + i) / i;  // exact at every step
        if (acc > std::numeric_limits<i64>::max()) {
            throw std::overflow_error("binomial: value exceeds 64 bits");
        }
    }
    return static_cast<i64>(acc);
}

WeightSplitCoefficients split_coefficients(std::int64_t n, std::int64_t m,
                                           std::int64_t k, std::int64_t l) {
    if (!(0 <= l && l <= k && k <= n)) {
        throw std::invalid_argument("split_coefficients: need 0 <= l <= k <= n");
    }
    if (!(1 <= m && m < n)) {
        throw std::invalid_argument("split_coefficients: need 1 <= m < n");
    }
    WeightSplitCoefficients w{n, m, k, l, {}, {}};
    w.x.resize(l + 1);
    for (i64 i = 0; i <= l; ++i) w.x[i] = binomial(m, i) * binomial(n - m, l - i);
    w.s.assign(l + 1, 0);
    i64 acc = 0;
    for (i64 i = l; i >= 0; --i) {
        acc += w.x[i];
        w.s[i] = acc;
    }
    if (w.s[0] != binomial(n, l)) {
        throw std::logic_error("split_coefficients: Vandermonde check failed");
    }
    return w;
}

double rotation_angle(std::int64_t x, std::int64_t y) {
    if (y <= 0 || x < 0 || x > y) {
        throw std::invalid_argument("rotation_angle: need 0 <= x <= y, y > 0");
    }
    return rotation_angle_real(static_cast<double>(x), static_cast<double>(y));
}

double rotation_angle_real(double x, double y) {
    if (!(y > 0.0) || x < 0.0 || x > y) {
        throw std::invalid_argument("rotation_angle: need 0 <= x <= y, y > 0");
    }
    double ratio = std::clamp(x / y, 0.0, 1.0);
    return 2.0 * std::acos(std::sqrt(ratio));
}

bool AmplitudeSpec::normalized(double tol) const {
    double acc = 0.0;
    for (const cplx& a : alpha) acc += std::norm(a);
    return std::abs(acc - 1.0) <= tol;
}

StateVector oracle_dicke_state(int n, int l) {
    if (n < 1 || n > simulator_cap()) {
        throw std::invalid_argument("oracle_dicke_state: n out of range");
    }
    if (l < 0 || l > n) {
        throw std::invalid_argument("oracle_dicke_state: need 0 <= l <= n");
    }
    StateVector s = StateVector::zero_state(n);
    s.amps[0] = 0.0;
    double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, l)));
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        if (std::popcount(i) == l) s.amps[i] = amp;
    }
    return s;
}

StateVector oracle_symmetric_state(int n, const AmplitudeSpec& spec) {
    if (!spec.normalized()) {
        throw std::invalid_argument("oracle_symmetric_state: alpha not normalized");
    }
    if (spec.max_weight() >= n) {
        throw std::invalid_argument("oracle_symmetric_state: need k < n");
    }
    StateVector s = StateVector::zero_state(n);
    s.amps[0] = 0.0;
    for (int l = 0; l <= spec.max_weight(); ++l) {
        if (spec.alpha[l] == cplx{0.0, 0.0}) continue;
        StateVector d = oracle_dicke_state(n, l);
        for (std::uint64_t i = 0; i < s.size(); ++i) {
            s.amps[i] += spec.alpha[l] * d.amps[i];
        }
    }
    return s;
}

}  // namespace dicke
