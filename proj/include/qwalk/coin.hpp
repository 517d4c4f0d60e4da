// Coin operators: the d-dimensional DFT family, the rho-parameterized G
// family (Grover at rho = sqrt(1/3)), arbitrary validated 2x2 unitaries, and
// identities. Also the CLI coin-string grammar:
//   dft2 | dft3 | grover | hadamard | identity2 | identity3 | g:<rho> | u2:<a>,<b>,<c>,<d>
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/numformat.hpp"

namespace qwalk {

struct CoinOperator {
    int dim = 0;
    Eigen::MatrixXcd entries;
    std::string label;
};

// Max elementwise deviation of C†C from the identity.
inline double unitarity_deviation(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd d = m.adjoint() * m;
    d -= Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff();
}

inline CoinOperator dft_coin(int d) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("dft_coin: dimension must be 2 or 3, got " + std::to_string(d));
    Eigen::MatrixXcd m(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double phi = 2.0 * std::numbers::pi * j * k / d;
            m(j, k) = s * std::complex<double>(std::cos(phi), std::sin(phi));
        }
    return {d, m, "dft" + std::to_string(d)};
}

inline CoinOperator g_coin(double rho) {
    if (!(std::abs(rho) <= 1.0) || rho == 0.0)
        throw std::invalid_argument("g_coin: rho must lie in [-1,1] and be nonzero, got " + fmt_g(rho));
    if (rho <= 0.0 || rho >= 1.0)
        std::cerr << "warning: g_coin rho=" << fmt_g(rho)
                  << " is outside (0,1); the matrix is still unitary\n";
    const double r2 = rho * rho;
    const double off = rho * std::sqrt(2.0 - 2.0 * r2);
    Eigen::MatrixXcd m(3, 3);
    m << -r2, off, 1.0 - r2,
         off, 2.0 * r2 - 1.0, off,
         1.0 - r2, off, -r2;
    return {3, m, "g(" + fmt_g(rho) + ")"};
}

inline CoinOperator grover_coin() {
    CoinOperator c = g_coin(std::sqrt(1.0 / 3.0));
    c.label = "grover";
    return c;
}

inline CoinOperator hadamard_coin() {
    CoinOperator c = dft_coin(2);
    c.label = "hadamard";
    return c;
}

inline CoinOperator general_u2(std::complex<double> a, std::complex<double> b,
                               std::complex<double> c, std::complex<double> d) {
    Eigen::MatrixXcd m(2, 2);
    m << a, b, c, d;
    const double dev = unitarity_deviation(m);
    if (dev > 1e-10)
        throw std::invalid_argument("general_u2: matrix is not unitary (max deviation " + fmt_g(dev) + ")");
    return {2, m, "u2"};
}

inline CoinOperator identity_coin(int d) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("identity_coin: dimension must be 2 or 3, got " + std::to_string(d));
    return {d, Eigen::MatrixXcd::Identity(d, d), "identity"};
}

namespace detail {
inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}
} // namespace detail

inline CoinOperator parse_coin(const std::string& text) {
    if (text == "dft2") return dft_coin(2);
    if (text == "dft3") return dft_coin(3);
    if (text == "grover") return grover_coin();
    if (text == "hadamard") return hadamard_coin();
    if (text == "identity2") return identity_coin(2);
    if (text == "identity3") return identity_coin(3);
    if (text.rfind("g:", 0) == 0)
        return g_coin(detail::parse_double_strict(text.substr(2)));
    if (text.rfind("u2:", 0) == 0) {
        auto parts = detail::split(std::string_view(text).substr(3), ',');
        if (parts.size() != 4)
            throw std::invalid_argument("parse_coin: u2 needs 4 comma-separated entries, got " +
                                        std::to_string(parts.size()));
        return general_u2(parse_complex(parts[0]), parse_complex(parts[1]),
                          parse_complex(parts[2]), parse_complex(parts[3]));
    }
    throw std::invalid_argument("parse_coin: unknown coin '" + text + "'");
}

} // namespace qwalk
