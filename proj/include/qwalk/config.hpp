// Plain-text key = value experiment configuration. '#' starts a comment,
// blank lines are skipped, keys are lowercase, and every parse error carries
// "<file>:<line>:". Metric tokens:
//   distribution | moment:<n> | occ | occrate | genocc:<delta> | entropy |
//   bands | vdensity
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/numformat.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct ExperimentConfig {
    ShiftKind walk = ShiftKind::lazy;
    std::string coin = "dft3";
    std::vector<std::complex<double>> initial;  // coin-space amplitudes
    int steps = 100;
    int record_every = 1;
    std::vector<std::string> metrics;
    int kgrid_m = 2048;
    int vbins = 201;
    int occupancy_n = 0;  // 0 -> use range(walk, t)
    ClassicalStepLaw law = ClassicalStepLaw::lazy_uniform();
    std::string sweep_param;            // rho | delta | steps
    std::vector<double> sweep_values;
    std::string sweep_metric = "occrate";
    int workers = 0;  // 0 -> hardware concurrency
    std::string out_dir = "out";

    // Raw lines for the manifest echo, in file order.
    std::vector<std::pair<std::string, std::string>> echo;
};

namespace detail {

inline std::string trim(std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

[[noreturn]] inline void cfg_fail(const std::string& file, int line, const std::string& msg) {
    throw config_error(file + ":" + std::to_string(line) + ": " + msg);
}

inline int parse_int(const std::string& file, int line, const std::string& v) {
    try {
        size_t pos = 0;
        int n = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return n;
    } catch (const std::exception&) {
        cfg_fail(file, line, "invalid integer '" + v + "'");
    }
}

inline double parse_real(const std::string& file, int line, const std::string& v) {
    try {
        return parse_double_strict(v);
    } catch (const std::exception&) {
        cfg_fail(file, line, "invalid number '" + v + "'");
    }
}

inline void validate_metric_token(const std::string& file, int line, const std::string& tok) {
    if (tok == "distribution" || tok == "occ" || tok == "occrate" || tok == "entropy" ||
        tok == "bands" || tok == "vdensity")
        return;
    if (tok.rfind("moment:", 0) == 0) {
        const int n = parse_int(file, line, tok.substr(7));
        if (n < 1) cfg_fail(file, line, "moment order must be >= 1");
        return;
    }
    if (tok.rfind("genocc:", 0) == 0) {
        const double delta = parse_real(file, line, tok.substr(7));
        if (!(delta > 0.0)) cfg_fail(file, line, "genocc delta must be > 0");
        return;
    }
    cfg_fail(file, line, "unknown metric '" + tok + "'");
}

} // namespace detail

inline ExperimentConfig parse_config_text(const std::string& text,
                                          const std::string& file = "<config>") {
    ExperimentConfig cfg;
    int lineno = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string raw = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            detail::cfg_fail(file, lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty()) detail::cfg_fail(file, lineno, "missing key before '='");
        if (val.empty()) detail::cfg_fail(file, lineno, "missing value for '" + key + "'");
        cfg.echo.emplace_back(key, val);

        try {
            if (key == "walk") {
                cfg.walk = parse_shift(val);
            } else if (key == "coin") {
                parse_coin(val);  // validate grammar now, construct later
                cfg.coin = val;
            } else if (key == "initial") {
                cfg.initial.clear();
                for (const auto& part : detail::split(val, ','))
                    cfg.initial.push_back(parse_complex(part));
            } else if (key == "steps") {
                cfg.steps = detail::parse_int(file, lineno, val);
                if (cfg.steps < 0) detail::cfg_fail(file, lineno, "steps must be >= 0");
            } else if (key == "record_every") {
                cfg.record_every = detail::parse_int(file, lineno, val);
                if (cfg.record_every < 1)
                    detail::cfg_fail(file, lineno, "record_every must be >= 1");
            } else if (key == "metrics") {
                cfg.metrics.clear();
                for (const auto& tok_raw : detail::split(val, ',')) {
                    const std::string tok = detail::trim(tok_raw);
                    detail::validate_metric_token(file, lineno, tok);
                    cfg.metrics.push_back(tok);
                }
            } else if (key == "kgrid_m") {
                cfg.kgrid_m = detail::parse_int(file, lineno, val);
            } else if (key == "vbins") {
                cfg.vbins = detail::parse_int(file, lineno, val);
            } else if (key == "occupancy_n") {
                cfg.occupancy_n = detail::parse_int(file, lineno, val);
                if (cfg.occupancy_n < 0)
                    detail::cfg_fail(file, lineno, "occupancy_n must be >= 0");
            } else if (key == "law") {
                auto parts = detail::split(val, ',');
                if (parts.size() != 3)
                    detail::cfg_fail(file, lineno, "law needs 'p_left,p_stay,p_right'");
                cfg.law = {detail::parse_real(file, lineno, detail::trim(parts[0])),
                           detail::parse_real(file, lineno, detail::trim(parts[1])),
                           detail::parse_real(file, lineno, detail::trim(parts[2]))};
                validate(cfg.law);
            } else if (key == "sweep_param") {
                if (val != "rho" && val != "delta" && val != "steps")
                    detail::cfg_fail(file, lineno,
                                     "sweep_param must be rho, delta, or steps; got '" + val + "'");
                cfg.sweep_param = val;
            } else if (key == "sweep_values") {
                cfg.sweep_values.clear();
                for (const auto& part : detail::split(val, ','))
                    cfg.sweep_values.push_back(detail::parse_real(file, lineno, detail::trim(part)));
            } else if (key == "sweep_metric") {
                detail::validate_metric_token(file, lineno, val);
                cfg.sweep_metric = val;
            } else if (key == "workers") {
                cfg.workers = detail::parse_int(file, lineno, val);
                if (cfg.workers < 0) detail::cfg_fail(file, lineno, "workers must be >= 0");
            } else if (key == "out_dir") {
                cfg.out_dir = val;
            } else {
                detail::cfg_fail(file, lineno, "unknown key '" + key + "'");
            }
        } catch (const config_error&) {
            throw;
        } catch (const std::exception& e) {
            detail::cfg_fail(file, lineno, std::string(e.what()));
        }
    }
    return cfg;
}

} // namespace qwalk
