// Numeric text utilities: round-trip-safe double formatting, complex literal
// parsing ("re", "re+imj", "re-imj", "imj"), and FNV-1a 64-bit checksums for
// the output manifest.
#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qwalk {

// 17 significant digits: shortest fixed precision that round-trips binary64.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

namespace detail {
inline double parse_double_strict(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    std::string tmp(s);
    char* end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size())
        throw std::invalid_argument("invalid number '" + tmp + "'");
    return v;
}
} // namespace detail

// Complex literal grammar: a real part, an imaginary part suffixed 'j', or
// both joined by the imaginary part's sign, e.g. "0.5", "-1.5e-3+0.25j", "2j".
inline std::complex<double> parse_complex(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    const bool has_j = s.back() == 'j';
    std::string_view body = has_j ? s.substr(0, s.size() - 1) : s;

    // Locate the sign splitting real and imaginary parts: a '+'/'-' that is
    // neither the leading sign nor part of an exponent.
    size_t split = std::string_view::npos;
    for (size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') &&
            body[i - 1] != 'e' && body[i - 1] != 'E')
            split = i;  // keep the last candidate: "1e-3-2e-4j" splits at the middle '-'
    }

    if (!has_j) {
        if (split != std::string_view::npos)
            throw std::invalid_argument("complex literal missing 'j' suffix: '" + std::string(s) + "'");
        return {detail::parse_double_strict(body), 0.0};
    }
    if (split == std::string_view::npos)  // pure imaginary, e.g. "2j" or "-0.5j"
        return {0.0, detail::parse_double_strict(body)};
    double re = detail::parse_double_strict(body.substr(0, split));
    std::string_view im = body.substr(split);  // keeps the sign
    if (im.size() == 1) throw std::invalid_argument("missing imaginary digits in '" + std::string(s) + "'");
    return {re, detail::parse_double_strict(im)};
}

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

} // namespace qwalk
