// Shared fixtures for the test suite: seeded random states/unitaries, the
// benchmark initial coin states used across modules, and small comparison
// utilities.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "qwalk/qwalk.hpp"

namespace qtest {

inline Eigen::VectorXcd random_unit_vector(int dim, std::mt19937& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = std::complex<double>(nd(gen), nd(gen));
    v /= v.norm();
    return v;
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = std::complex<double>(nd(gen), nd(gen));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return Eigen::MatrixXcd(qr.householderQ());
}

// Benchmark initial coin states: |a|^2 = 0.85 on the right-mover, 0.15 on the
// left-mover (middle component empty for the three-state walk).
inline Eigen::VectorXcd ref_init_lazy() {
    Eigen::VectorXcd v(3);
    v << std::sqrt(0.85), 0.0, -std::sqrt(0.15);
    return v;
}

inline Eigen::VectorXcd ref_init_normal() {
    Eigen::VectorXcd v(2);
    v << std::sqrt(0.85), -std::sqrt(0.15);
    return v;
}

// Largest |a - b| over matching positions; requires identical windows.
inline double max_prob_diff(const qwalk::ProbabilityDistribution& a,
                            const qwalk::ProbabilityDistribution& b) {
    if (a.x0 != b.x0 || a.size() != b.size()) return 1e300;
    return (a.probs - b.probs).cwiseAbs().maxCoeff();
}

inline qwalk::WalkState run_walk(const qwalk::WalkSpec& spec) {
    qwalk::WalkState s = qwalk::init_state(spec);
    for (int t = 1; t <= spec.steps; ++t) s = qwalk::step(s, spec.coin, spec.shift);
    return s;
}

} // namespace qtest
