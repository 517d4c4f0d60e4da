// Scalar observables: moments, occupancy number/rate (plain and generalized),
// interval mass, and coin-position entanglement entropy.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

struct MetricSeries {
    std::vector<int> times;
    std::vector<double> values;
    std::string label;
};

struct OccupancyParams {
    double delta = 1.0;
    int N = 1;
};

inline void validate(const OccupancyParams& p) {
    if (p.N < 1) throw std::invalid_argument("occupancy N must be >= 1");
    if (!(p.delta > 0.0) || p.delta > static_cast<double>(p.N))
        throw std::invalid_argument("occupancy delta must satisfy 0 < delta <= N");
}

// <x^n> = sum_x x^n P(x)
inline double moment(const ProbabilityDistribution& d, int n) {
    if (n < 1) throw std::invalid_argument("moment order must be >= 1");
    double acc = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        double xp = 1.0;
        const double x = d.position(i);
        for (int k = 0; k < n; ++k) xp *= x;
        acc += xp * d.probs[i];
    }
    return acc;
}

// #{x : P(x) >= 1/N}; sharp floating comparison by design.
inline int occupancy_number(const ProbabilityDistribution& d, int N) {
    if (N < 1) throw std::invalid_argument("occupancy N must be >= 1");
    const double thr = 1.0 / static_cast<double>(N);
    int count = 0;
    for (int i = 0; i < d.size(); ++i)
        if (d.probs[i] >= thr) ++count;
    return count;
}

inline double occupancy_rate(const ProbabilityDistribution& d, int N) {
    return static_cast<double>(occupancy_number(d, N)) / static_cast<double>(N);
}

// #{x : P(x) >= delta/N}
inline int general_occupancy_number(const ProbabilityDistribution& d, const OccupancyParams& p) {
    validate(p);
    const double thr = p.delta / static_cast<double>(p.N);
    int count = 0;
    for (int i = 0; i < d.size(); ++i)
        if (d.probs[i] >= thr) ++count;
    return count;
}

inline double general_occupancy_rate(const ProbabilityDistribution& d, const OccupancyParams& p) {
    return static_cast<double>(general_occupancy_number(d, p)) / static_cast<double>(p.N);
}

// sum of P(x) over integer positions lo <= x <= hi.
inline double interval_mass(const ProbabilityDistribution& d, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("interval_mass: lo must be <= hi");
    double acc = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        const double x = d.position(i);
        if (x >= lo && x <= hi) acc += d.probs[i];
    }
    return acc;
}

// Von Neumann entropy (base 2) of the coin-space reduced density matrix
// rho_c[a,b] = sum_x psi_a(x) conj(psi_b(x)). The coin side is the cheap
// partition: dim x dim regardless of t; S(rho_coin) = S(rho_position).
inline double entanglement_entropy(const WalkState& state) {
    if (std::abs(state.norm_sq() - 1.0) > 1e-10)
        throw std::invalid_argument("entanglement_entropy: state is not normalized (|psi|^2 = " +
                                    fmt_g17(state.norm_sq()) + ")");
    Eigen::MatrixXcd rho = state.amps.transpose() * state.amps.conjugate();
    rho = 0.5 * (rho + rho.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    if (es.info() != Eigen::Success)
        throw numerical_error("entanglement_entropy: eigensolver failed");
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = std::min(es.eigenvalues()[i], 1.0);
        if (lam < 1e-15) continue;  // 0 log 0 = 0
        s -= lam * std::log2(lam);
    }
    return s;
}

} // namespace qwalk
