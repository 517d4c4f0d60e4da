// Position-space walk engine: state representation, single-step and full
// evolution, probability distributions, range, and a brute-force path-sum
// oracle used for verification.
//
// Component -> displacement conventions (component 0 always moves furthest
// right):
//   lazy          : {+1, 0, -1}
//   normal        : {+1, -1}
//   stay_or_right : {+1, 0}
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

enum class ShiftKind { lazy, normal, stay_or_right };

inline const std::vector<int>& displacements(ShiftKind s) {
    static const std::vector<int> lazy_d{1, 0, -1};
    static const std::vector<int> normal_d{1, -1};
    static const std::vector<int> sr_d{1, 0};
    switch (s) {
        case ShiftKind::lazy: return lazy_d;
        case ShiftKind::normal: return normal_d;
        default: return sr_d;
    }
}

inline int coin_dim(ShiftKind s) { return s == ShiftKind::lazy ? 3 : 2; }

inline std::string shift_name(ShiftKind s) {
    switch (s) {
        case ShiftKind::lazy: return "lazy";
        case ShiftKind::normal: return "normal";
        default: return "stay_or_right";
    }
}

inline ShiftKind parse_shift(const std::string& name) {
    if (name == "lazy") return ShiftKind::lazy;
    if (name == "normal") return ShiftKind::normal;
    if (name == "stay_or_right") return ShiftKind::stay_or_right;
    throw std::invalid_argument("unknown walk kind '" + name + "'");
}

// Number of distinct positions reachable after t steps; independent of the
// coin and the initial state.
inline int range(ShiftKind s, int t) {
    if (t < 0) throw std::invalid_argument("range: t must be >= 0");
    return s == ShiftKind::stay_or_right ? t + 1 : 2 * t + 1;
}

struct WalkSpec {
    CoinOperator coin;
    ShiftKind shift = ShiftKind::lazy;
    Eigen::VectorXcd initial_coin;
    int steps = 0;
};

// Dense amplitude field over the walk's reachable window. Row i of `amps`
// holds the coin vector at position x = offset + i.
struct WalkState {
    int t = 0;
    int offset = 0;
    ShiftKind shift = ShiftKind::lazy;
    Eigen::MatrixXcd amps;  // (#positions) x (coin dim)

    int positions() const { return static_cast<int>(amps.rows()); }
    int dim() const { return static_cast<int>(amps.cols()); }
    double norm_sq() const { return amps.squaredNorm(); }
};

struct ProbabilityDistribution {
    int x0 = 0;              // position of probs[0]; positions ascend by 1
    Eigen::VectorXd probs;

    int size() const { return static_cast<int>(probs.size()); }
    int position(int i) const { return x0 + i; }
    double sum() const { return probs.sum(); }
};

namespace detail {
inline void clamp_probs(Eigen::VectorXd& p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) {
            if (p[i] < -1e-15)
                throw numerical_error("negative probability " + fmt_g17(p[i]));
            p[i] = 0.0;
        }
    }
}

inline void check_spec(const WalkSpec& spec) {
    if (spec.coin.dim != coin_dim(spec.shift))
        throw std::invalid_argument("coin dimension " + std::to_string(spec.coin.dim) +
                                    " does not match " + shift_name(spec.shift) + " walk");
    if (spec.initial_coin.size() != spec.coin.dim)
        throw std::invalid_argument("initial coin vector has length " +
                                    std::to_string(spec.initial_coin.size()) + ", expected " +
                                    std::to_string(spec.coin.dim));
    if (std::abs(spec.initial_coin.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("initial coin vector is not normalized (norm " +
                                    fmt_g17(spec.initial_coin.norm()) + ")");
    if (spec.steps < 0) throw std::invalid_argument("steps must be >= 0");
}
} // namespace detail

inline WalkState init_state(const WalkSpec& spec) {
    detail::check_spec(spec);
    WalkState s;
    s.t = 0;
    s.offset = 0;
    s.shift = spec.shift;
    s.amps = Eigen::MatrixXcd::Zero(1, spec.coin.dim);
    s.amps.row(0) = spec.initial_coin.transpose();
    return s;
}

// One step of U = S (I (x) C): coin every position's internal vector, then
// shift component alpha by its displacement. The window grows to the full
// reachable range at t+1.
inline WalkState step(const WalkState& state, const CoinOperator& coin, ShiftKind shift) {
    if (coin.dim != coin_dim(shift))
        throw std::invalid_argument("coin dimension does not match shift kind");
    if (state.dim() != coin.dim)
        throw std::invalid_argument("state dimension does not match coin");
    const auto& disp = displacements(shift);
    const int nold = state.positions();

    // Row-major state times C^T applies C to every position's coin vector.
    Eigen::MatrixXcd coined = state.amps * coin.entries.transpose();

    WalkState out;
    out.t = state.t + 1;
    out.shift = shift;
    out.offset = (shift == ShiftKind::stay_or_right) ? 0 : -(state.t + 1);
    out.amps = Eigen::MatrixXcd::Zero(range(shift, out.t), coin.dim);
    // Old row i sits at x = state.offset + i; component alpha lands at
    // x + disp[alpha], i.e. new row  state.offset + i + disp[alpha] - out.offset.
    const int base = state.offset - out.offset;
    for (int a = 0; a < coin.dim; ++a)
        out.amps.col(a).segment(base + disp[a], nold) = coined.col(a);
    return out;
}

inline ProbabilityDistribution distribution(const WalkState& state) {
    ProbabilityDistribution d;
    d.x0 = state.offset;
    d.probs = state.amps.cwiseAbs2().rowwise().sum();
    detail::clamp_probs(d.probs);
    return d;
}

// Snapshots at t = 0, record_every, 2*record_every, ..., plus the final step.
inline std::vector<WalkState> evolve(const WalkSpec& spec, int record_every = 1) {
    if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    detail::check_spec(spec);
    std::vector<WalkState> snaps;
    WalkState s = init_state(spec);
    snaps.push_back(s);
    for (int t = 1; t <= spec.steps; ++t) {
        s = step(s, spec.coin, spec.shift);
        if (t % record_every == 0 || t == spec.steps) snaps.push_back(s);
    }
    return snaps;
}

// Independent oracle: enumerate every coin path (beta, a_1, ..., a_t). The
// path amplitude is chi_beta * prod_s C(a_s, a_{s-1}) and it lands at
// x = sum_s disp[a_s]; amplitudes accumulate per (position, final component).
inline ProbabilityDistribution brute_force_distribution(const WalkSpec& spec) {
    detail::check_spec(spec);
    if (spec.steps > 10)
        throw std::invalid_argument("brute_force_distribution: steps must be <= 10, got " +
                                    std::to_string(spec.steps));
    const int dim = spec.coin.dim;
    const int t = spec.steps;
    const auto& disp = displacements(spec.shift);
    const int n = range(spec.shift, t);
    const int x0 = (spec.shift == ShiftKind::stay_or_right) ? 0 : -t;

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, dim);
    if (t == 0) {
        acc.row(0) = spec.initial_coin.transpose();
    } else {
        std::vector<int> path(t, 0);
        for (int beta = 0; beta < dim; ++beta) {
            std::fill(path.begin(), path.end(), 0);
            while (true) {
                std::complex<double> amp = spec.initial_coin[beta];
                int x = 0, prev = beta;
                for (int s = 0; s < t; ++s) {
                    amp *= spec.coin.entries(path[s], prev);
                    x += disp[path[s]];
                    prev = path[s];
                }
                acc(x - x0, prev) += amp;
                int i = t - 1;
                while (i >= 0 && ++path[i] == dim) path[i--] = 0;
                if (i < 0) break;
            }
        }
    }
    ProbabilityDistribution d;
    d.x0 = x0;
    d.probs = acc.cwiseAbs2().rowwise().sum();
    detail::clamp_probs(d.probs);
    return d;
}

} // namespace qwalk
