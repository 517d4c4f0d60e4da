// Classical random-walk baselines: exact distributions by dynamic-programming
// convolution (double precision and exact-rational), the Gaussian
// approximation, and the closed-form occupancy asymptotics
//   x*(t)       = sqrt(t) * sqrt(-ln(pi/(8t)))
//   OccRate(t) ~= sqrt(-ln(pi/(8t)) / (4t))
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

struct ClassicalStepLaw {
    double p_left = 1.0 / 3.0;
    double p_stay = 1.0 / 3.0;
    double p_right = 1.0 / 3.0;

    static ClassicalStepLaw normal() { return {0.5, 0.0, 0.5}; }
    static ClassicalStepLaw lazy_uniform() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }
};

inline void validate(const ClassicalStepLaw& law) {
    if (law.p_left < 0.0 || law.p_stay < 0.0 || law.p_right < 0.0)
        throw std::invalid_argument("classical step law has a negative probability");
    if (std::abs(law.p_left + law.p_stay + law.p_right - 1.0) > 1e-12)
        throw std::invalid_argument("classical step law does not sum to 1");
}

// Exact t-fold convolution over the window [-t, t].
inline ProbabilityDistribution classical_distribution(const ClassicalStepLaw& law, int t) {
    validate(law);
    if (t < 0) throw std::invalid_argument("classical_distribution: t must be >= 0");
    std::vector<double> p(2 * t + 1, 0.0), q(2 * t + 1, 0.0);
    p[t] = 1.0;  // index i <-> position x = i - t
    for (int s = 1; s <= t; ++s) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int i = t - s + 1; i <= t + s - 1; ++i) {
            if (p[i] == 0.0) continue;
            q[i + 1] += law.p_right * p[i];
            q[i] += law.p_stay * p[i];
            q[i - 1] += law.p_left * p[i];
        }
        std::swap(p, q);
    }
    ProbabilityDistribution d;
    d.x0 = -t;
    d.probs = Eigen::Map<Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    detail::clamp_probs(d.probs);
    return d;
}

// Exact-rational DP for laws expressible as integer weights (wl, ws, wr) over
// the denominator wl+ws+wr; validates the floating path. P(x,t) has the exact
// denominator (wl+ws+wr)^t.
inline ProbabilityDistribution classical_distribution_exact(int wl, int ws, int wr, int t) {
    using boost::multiprecision::cpp_int;
    if (wl < 0 || ws < 0 || wr < 0 || wl + ws + wr <= 0)
        throw std::invalid_argument("classical_distribution_exact: weights must be nonnegative and not all zero");
    if (t < 0) throw std::invalid_argument("classical_distribution_exact: t must be >= 0");
    std::vector<cpp_int> p(2 * t + 1), q(2 * t + 1);
    p[t] = 1;
    for (int s = 1; s <= t; ++s) {
        for (auto& v : q) v = 0;
        for (int i = t - s + 1; i <= t + s - 1; ++i) {
            if (p[i] == 0) continue;
            q[i + 1] += wr * p[i];
            q[i] += ws * p[i];
            q[i - 1] += wl * p[i];
        }
        std::swap(p, q);
    }
    cpp_int denom = 1;
    const int w = wl + ws + wr;
    for (int s = 0; s < t; ++s) denom *= w;
    ProbabilityDistribution d;
    d.x0 = -t;
    d.probs.resize(2 * t + 1);
    for (int i = 0; i <= 2 * t; ++i) {
        boost::multiprecision::cpp_rational r(p[i], denom);
        d.probs[i] = r.convert_to<double>();
    }
    return d;
}

// P(x,t) ~= sqrt(2/(pi t)) exp(-x^2/(2t)) -- the even-parity binomial
// envelope (already carries the parity factor 2).
inline double gaussian_approx(int x, int t) {
    if (t < 1) throw std::invalid_argument("gaussian_approx: t must be >= 1");
    const double td = t;
    return std::sqrt(2.0 / (std::numbers::pi * td)) *
           std::exp(-static_cast<double>(x) * x / (2.0 * td));
}

// Threshold position where the Gaussian envelope crosses the mean probability
// 1/(2t+1) of the range.
inline double x_star(int t) {
    if (t < 1) throw std::invalid_argument("x_star: t must be >= 1");
    const double arg = -std::log(std::numbers::pi / (8.0 * t));
    if (!(arg > 0.0))
        throw std::invalid_argument("x_star: t too small, log term not positive");
    return std::sqrt(static_cast<double>(t)) * std::sqrt(arg);
}

inline double classical_occ_rate_asymptotic(int t) {
    if (t < 1) throw std::invalid_argument("classical_occ_rate_asymptotic: t must be >= 1");
    const double arg = -std::log(std::numbers::pi / (8.0 * t));
    if (!(arg > 0.0))
        throw std::invalid_argument("classical_occ_rate_asymptotic: t too small");
    return std::sqrt(arg / (4.0 * t));
}

} // namespace qwalk
