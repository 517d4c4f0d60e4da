// Momentum-space analysis. For each k on a uniform grid over [-pi, pi) the
// one-step operator is Uhat(k) = diag(e^{i k d_alpha}) C with d_alpha the
// per-component displacement. Eigenphases omega_j(k) (lambda_j = e^{i omega_j})
// are tracked across the grid by maximal eigenvector overlap, unwrapped to
// continuous bands, and differentiated to group velocities v_j = d omega_j/dk.
// Weak-limit outputs: moment coefficients <x^n> ~= c_n t^n with
// c_n = int dk/2pi sum_j w_j(k) v_j(k)^n, the velocity density (pushforward of
// dk/2pi through v_j, flat bands contributing an atom at v=0), and the
// asymptotic occupancy rate (half the measure of {v : density >= 1/2}).
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline constexpr double kFlatBandTol = 1e-10;

struct KGrid {
    int M = 2048;
    std::vector<double> points;  // k_m = -pi + 2 pi m / M

    static KGrid make(int M = 2048) {
        if (M < 64 || M % 2 != 0)
            throw std::invalid_argument("KGrid: M must be even and >= 64, got " + std::to_string(M));
        KGrid g;
        g.M = M;
        g.points.resize(M);
        for (int m = 0; m < M; ++m)
            g.points[m] = -std::numbers::pi + 2.0 * std::numbers::pi * m / M;
        return g;
    }

    double spacing() const { return 2.0 * std::numbers::pi / M; }
};

inline Eigen::MatrixXcd momentum_operator(const CoinOperator& coin, ShiftKind shift, double k) {
    if (coin.dim != coin_dim(shift))
        throw std::invalid_argument("momentum_operator: coin dimension does not match shift kind");
    const auto& disp = displacements(shift);
    Eigen::MatrixXcd u = coin.entries;
    for (int a = 0; a < coin.dim; ++a) {
        const double phi = k * disp[a];
        u.row(a) *= std::complex<double>(std::cos(phi), std::sin(phi));
    }
    return u;
}

struct SpectralDecomposition {
    KGrid grid;
    int dim = 0;
    Eigen::VectorXcd psi0;
    Eigen::MatrixXd omega;    // M x dim, unwrapped phases
    Eigen::MatrixXd weight;   // M x dim, w_j(k) = |<v_j|psi0>|^2
    std::vector<Eigen::MatrixXcd> vectors;  // per m: columns are band eigenvectors
    // Tracked periodic continuations just outside the grid, for difference
    // stencils: m = -1 and m = M, M+1. weight_M is the weight at m = M.
    Eigen::RowVectorXd omega_m1, omega_M, omega_M1, weight_M;
    Eigen::MatrixXd velocity;  // (M+1) x dim, central differences at m = 0..M
    double min_overlap = 1.0;  // smallest matched eigenvector overlap seen
};

namespace detail {

struct EigPair {
    Eigen::VectorXcd lambda;
    Eigen::MatrixXcd vectors;
};

// Eigendecomposition of a (numerically) unitary matrix via complex Schur:
// for normal matrices the Schur form is diagonal, so Q's columns are an
// orthonormal eigenbasis. The residual check guards the normality assumption.
inline EigPair eig_unitary(const Eigen::MatrixXcd& u, double k) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, true);
    if (schur.info() != Eigen::Success)
        throw numerical_error("eigen-solver failure at k = " + fmt_g17(k));
    EigPair e{schur.matrixT().diagonal(), schur.matrixU()};
    const double resid =
        (u * e.vectors - e.vectors * e.lambda.asDiagonal()).cwiseAbs().maxCoeff();
    if (resid > 1e-10)
        throw numerical_error("eigen residual " + fmt_g17(resid) + " exceeds 1e-10 at k = " +
                              fmt_g17(k));
    return e;
}

// Match bands at the next k sample to the previous ones: choose the
// permutation maximizing the summed squared eigenvector overlaps, breaking
// near-ties by eigenvalue proximity. Returns the minimum matched overlap.
inline double match_bands(const Eigen::MatrixXcd& prev_vecs, const Eigen::VectorXcd& prev_lam,
                          EigPair& cur, double k) {
    const int dim = static_cast<int>(prev_lam.size());
    Eigen::MatrixXd ov = (prev_vecs.adjoint() * cur.vectors).cwiseAbs();  // [prev j][cur i]
    std::vector<int> idx(dim), best(dim);
    std::iota(idx.begin(), idx.end(), 0);
    double best_score = -1.0, best_eigdist = 0.0;
    do {
        double score = 0.0, eigdist = 0.0;
        for (int j = 0; j < dim; ++j) {
            score += ov(j, idx[j]) * ov(j, idx[j]);
            eigdist += std::abs(cur.lambda[idx[j]] - prev_lam[j]);
        }
        if (score > best_score + 1e-12 ||
            (std::abs(score - best_score) <= 1e-12 && eigdist < best_eigdist)) {
            best_score = score;
            best_eigdist = eigdist;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));

    Eigen::VectorXcd lam(dim);
    Eigen::MatrixXcd vecs(dim, dim);
    double min_ov = 1.0;
    for (int j = 0; j < dim; ++j) {
        lam[j] = cur.lambda[best[j]];
        vecs.col(j) = cur.vectors.col(best[j]);
        min_ov = std::min(min_ov, ov(j, best[j]));
    }
    if (min_ov < 0.5)
        throw numerical_error("ambiguous band tracking (overlap " + fmt_g17(min_ov) +
                              " < 0.5) at k = " + fmt_g17(k));
    cur.lambda = lam;
    cur.vectors = vecs;
    return min_ov;
}

// Continue the unwrapped phases by the principal argument of the eigenvalue
// ratio (|lambda| = 1, so ratios stay on the unit circle).
inline Eigen::RowVectorXd unwrap_step(const Eigen::RowVectorXd& om_prev,
                                      const Eigen::VectorXcd& lam_prev,
                                      const Eigen::VectorXcd& lam_cur) {
    Eigen::RowVectorXd om(om_prev.size());
    for (Eigen::Index j = 0; j < om.size(); ++j)
        om[j] = om_prev[j] + std::arg(lam_cur[j] * std::conj(lam_prev[j]));
    return om;
}

} // namespace detail

inline SpectralDecomposition band_structure(const CoinOperator& coin, ShiftKind shift,
                                            const KGrid& grid, const Eigen::VectorXcd& psi0) {
    if (coin.dim != coin_dim(shift))
        throw std::invalid_argument("band_structure: coin dimension does not match shift kind");
    if (psi0.size() != coin.dim)
        throw std::invalid_argument("band_structure: psi0 has wrong length");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("band_structure: psi0 is not normalized");

    const int M = grid.M, dim = coin.dim;
    const double h = grid.spacing();
    SpectralDecomposition sd;
    sd.grid = grid;
    sd.dim = dim;
    sd.psi0 = psi0;
    sd.omega.resize(M, dim);
    sd.weight.resize(M, dim);
    sd.vectors.resize(M);

    // Base point: order bands by ascending principal argument.
    detail::EigPair e = detail::eig_unitary(momentum_operator(coin, shift, grid.points[0]),
                                            grid.points[0]);
    {
        std::vector<int> order(dim);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::arg(e.lambda[a]) < std::arg(e.lambda[b]);
        });
        Eigen::VectorXcd lam(dim);
        Eigen::MatrixXcd vecs(dim, dim);
        for (int j = 0; j < dim; ++j) {
            lam[j] = e.lambda[order[j]];
            vecs.col(j) = e.vectors.col(order[j]);
        }
        e.lambda = lam;
        e.vectors = vecs;
    }
    Eigen::RowVectorXd om(dim);
    for (int j = 0; j < dim; ++j) om[j] = std::arg(e.lambda[j]);
    sd.omega.row(0) = om;
    sd.vectors[0] = e.vectors;
    Eigen::VectorXcd lam_prev = e.lambda;

    for (int m = 1; m < M; ++m) {
        const double k = grid.points[m];
        detail::EigPair cur = detail::eig_unitary(momentum_operator(coin, shift, k), k);
        sd.min_overlap = std::min(sd.min_overlap,
                                  detail::match_bands(sd.vectors[m - 1], lam_prev, cur, k));
        sd.omega.row(m) = detail::unwrap_step(sd.omega.row(m - 1), lam_prev, cur.lambda);
        sd.vectors[m] = cur.vectors;
        lam_prev = cur.lambda;
    }

    // w_j(k) = |<v_j|psi0>|^2 (Eigen's dot conjugates its left argument).
    for (int m = 0; m < M; ++m)
        for (int j = 0; j < dim; ++j)
            sd.weight(m, j) = std::norm(sd.vectors[m].col(j).dot(psi0));

    for (int m = 0; m < M; ++m) {
        const double wsum = sd.weight.row(m).sum();
        if (std::abs(wsum - 1.0) > 1e-10)
            throw numerical_error("band weights sum to " + fmt_g17(wsum) + " at k = " +
                                  fmt_g17(grid.points[m]));
    }

    // Ghost continuations for periodic difference stencils.
    auto continue_to = [&](double k, const Eigen::MatrixXcd& vecs_from,
                           const Eigen::VectorXcd& lam_from, const Eigen::RowVectorXd& om_from,
                           Eigen::VectorXcd& lam_out, Eigen::MatrixXcd& vecs_out,
                           Eigen::RowVectorXd& om_out) {
        detail::EigPair g = detail::eig_unitary(momentum_operator(coin, shift, k), k);
        detail::match_bands(vecs_from, lam_from, g, k);
        om_out = detail::unwrap_step(om_from, lam_from, g.lambda);
        lam_out = g.lambda;
        vecs_out = g.vectors;
    };

    // m = -1 (k = -pi - h), continued backward from m = 0. The eigenvalues in
    // band order are recovered from the stored phases (lambda = e^{i omega}).
    {
        Eigen::VectorXcd lam0(dim);
        for (int j = 0; j < dim; ++j)
            lam0[j] = std::complex<double>(std::cos(sd.omega(0, j)), std::sin(sd.omega(0, j)));
        Eigen::VectorXcd lam_g;
        Eigen::MatrixXcd vecs_g;
        Eigen::RowVectorXd om_g;
        continue_to(-std::numbers::pi - h, sd.vectors[0], lam0, sd.omega.row(0), lam_g, vecs_g,
                    om_g);
        sd.omega_m1 = om_g;
    }
    // m = M (k = pi) and m = M+1 (k = pi + h), continued forward from m = M-1.
    {
        Eigen::VectorXcd lamM1(dim);
        for (int j = 0; j < dim; ++j)
            lamM1[j] = std::complex<double>(std::cos(sd.omega(M - 1, j)),
                                            std::sin(sd.omega(M - 1, j)));
        Eigen::VectorXcd lam_g;
        Eigen::MatrixXcd vecs_g;
        Eigen::RowVectorXd om_g;
        continue_to(std::numbers::pi, sd.vectors[M - 1], lamM1, sd.omega.row(M - 1), lam_g,
                    vecs_g, om_g);
        sd.omega_M = om_g;
        sd.weight_M.resize(dim);
        for (int j = 0; j < dim; ++j) sd.weight_M[j] = std::norm(vecs_g.col(j).dot(psi0));
        Eigen::VectorXcd lam_g2;
        Eigen::MatrixXcd vecs_g2;
        Eigen::RowVectorXd om_g2;
        continue_to(std::numbers::pi + h, vecs_g, lam_g, om_g, lam_g2, vecs_g2, om_g2);
        sd.omega_M1 = om_g2;
    }

    // Group velocities v_j = d omega_j / dk by central differences at m = 0..M.
    sd.velocity.resize(M + 1, dim);
    auto omega_at = [&](int m) -> Eigen::RowVectorXd {
        if (m == -1) return sd.omega_m1;
        if (m == M) return sd.omega_M;
        if (m == M + 1) return sd.omega_M1;
        return sd.omega.row(m);
    };
    for (int m = 0; m <= M; ++m)
        sd.velocity.row(m) = (omega_at(m + 1) - omega_at(m - 1)) / (2.0 * h);

    return sd;
}

struct LocalizationResult {
    bool localized = false;
    std::vector<int> flat_bands;
};

// A band is flat when omega_j(k) deviates from its mean by less than tol at
// every sample; a flat band pins probability (localization).
inline LocalizationResult detect_localization(const SpectralDecomposition& sd,
                                              double tol = kFlatBandTol) {
    LocalizationResult r;
    for (int j = 0; j < sd.dim; ++j) {
        const double mean = sd.omega.col(j).mean();
        if ((sd.omega.col(j).array() - mean).abs().maxCoeff() < tol)
            r.flat_bands.push_back(j);
    }
    r.localized = !r.flat_bands.empty();
    return r;
}

// Weak-limit moment coefficient: <x^n> ~= c_n t^n with
// c_n = int dk/2pi sum_j w_j(k) v_j(k)^n (Riemann mean over the grid).
inline double asymptotic_moment_coefficient(const SpectralDecomposition& sd, int n) {
    if (n < 1 || n > 4)
        throw std::invalid_argument("asymptotic_moment_coefficient: n must be in {1,2,3,4}");
    double acc = 0.0;
    for (int m = 0; m < sd.grid.M; ++m)
        for (int j = 0; j < sd.dim; ++j) {
            double vp = 1.0;
            for (int i = 0; i < n; ++i) vp *= sd.velocity(m, j);
            acc += sd.weight(m, j) * vp;
        }
    return acc / sd.grid.M;
}

struct VelocityDensity {
    int bins = 201;
    Eigen::VectorXd mass;       // over uniform bins spanning [-1, 1]
    double atom_at_zero = 0.0;  // localized mass from flat bands

    double bin_width() const { return 2.0 / bins; }
    double edge(int i) const { return -1.0 + bin_width() * i; }
    double total() const { return mass.sum() + atom_at_zero; }
};

// Pushforward of dk/2pi through the group velocities: each grid segment
// [k_m, k_{m+1}] carries mass avg(w)/M and is deposited uniformly between its
// endpoint velocities. Flat bands route their entire weight to the atom.
inline VelocityDensity velocity_density(const SpectralDecomposition& sd, int bins = 201) {
    if (bins < 32) throw std::invalid_argument("velocity_density: bins must be >= 32");
    const int M = sd.grid.M;
    VelocityDensity vd;
    vd.bins = bins;
    vd.mass = Eigen::VectorXd::Zero(bins);
    const double width = vd.bin_width();
    auto bin_index = [&](double v) {
        int i = static_cast<int>(std::floor((v + 1.0) / width));
        return std::clamp(i, 0, bins - 1);
    };
    for (int j = 0; j < sd.dim; ++j) {
        const double mean = sd.omega.col(j).mean();
        if ((sd.omega.col(j).array() - mean).abs().maxCoeff() < kFlatBandTol) {
            vd.atom_at_zero += sd.weight.col(j).sum() / M;
            continue;
        }
        for (int m = 0; m < M; ++m) {
            const double wa = sd.weight(m, j);
            const double wb = (m + 1 < M) ? sd.weight(m + 1, j) : sd.weight_M[j];
            const double seg = 0.5 * (wa + wb) / M;
            double lo = sd.velocity(m, j), hi = sd.velocity(m + 1, j);
            if (lo > hi) std::swap(lo, hi);
            lo = std::max(lo, -1.0);
            hi = std::min(hi, 1.0);
            if (hi - lo < 1e-14) {
                vd.mass[bin_index(lo)] += seg;
                continue;
            }
            const int i0 = bin_index(lo), i1 = bin_index(hi);
            for (int i = i0; i <= i1; ++i) {
                const double l = std::max(lo, vd.edge(i));
                const double r = std::min(hi, vd.edge(i + 1));
                if (r > l) vd.mass[i] += seg * (r - l) / (hi - lo);
            }
        }
    }
    return vd;
}

// Konno's weak-limit density for two-state walks with |U_00| = a_mod:
// f(v) = sqrt(1-a^2) (1 + d1 v) / (pi (1-v^2) sqrt(a^2 - v^2)) on |v| < a.
inline double konno_density(double a_mod, double d1, double v) {
    if (!(a_mod > 0.0 && a_mod < 1.0))
        throw std::invalid_argument("konno_density: a_mod must lie in (0,1)");
    if (!(std::abs(v) < a_mod))
        throw std::invalid_argument("konno_density: |v| must be < a_mod (open support)");
    return std::sqrt(1.0 - a_mod * a_mod) * (1.0 + d1 * v) /
           (std::numbers::pi * (1.0 - v * v) * std::sqrt(a_mod * a_mod - v * v));
}

// Continuous part of the lazy G(rho) weak-limit density:
// f(v) = sqrt(1-rho^2) (d0 + d1 v + d2 v^2) / (2 pi (1-v^2) sqrt(rho^2 - v^2)).
inline double g_velocity_density(double rho, double d0, double d1, double d2, double v) {
    const double r = std::abs(rho);
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("g_velocity_density: |rho| must lie in (0,1)");
    if (!(std::abs(v) < r))
        throw std::invalid_argument("g_velocity_density: |v| must be < |rho|");
    return std::sqrt(1.0 - rho * rho) * (d0 + d1 * v + d2 * v * v) /
           (2.0 * std::numbers::pi * (1.0 - v * v) * std::sqrt(rho * rho - v * v));
}

// Half the Lebesgue measure of {v : density(v) >= 1/2}, from histogram bins.
// P(x,t) ~= (1/t) f(x/t) against the mean threshold 1/(2t+1) ~= 1/(2t) gives
// the condition f(v) >= 1/2; the atom occupies O(1) positions (measure zero).
inline double asymptotic_occupancy_rate(const VelocityDensity& vd) {
    const double width = vd.bin_width();
    int count = 0;
    for (Eigen::Index i = 0; i < vd.mass.size(); ++i)
        if (vd.mass[i] / width >= 0.5) ++count;
    return 0.5 * width * count;
}

} // namespace qwalk
