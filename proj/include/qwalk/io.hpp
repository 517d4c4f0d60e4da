// CSV emitters for every exported artifact. All numeric fields use 17
// significant digits so files are byte-stable and round-trip to the exact
// doubles that produced them.
//
//   distribution:      "x,p"
//   metric series:     "# <label>" then "t,value"
//   band structure:    "k,omega_0,...,w_0,..."
//   velocity density:  "v_lo,v_hi,mass" then "atom_at_zero,<value>"
#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "qwalk/classical.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/metrics.hpp"
#include "qwalk/numformat.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline std::string distribution_csv(const ProbabilityDistribution& d) {
    std::string out = "x,p\n";
    for (int i = 0; i < d.size(); ++i) {
        out += std::to_string(d.position(i));
        out += ',';
        out += fmt_g17(d.probs[i]);
        out += '\n';
    }
    return out;
}

inline std::string metric_series_csv(const MetricSeries& s) {
    std::string out = "# " + s.label + "\nt,value\n";
    for (size_t i = 0; i < s.times.size(); ++i) {
        out += std::to_string(s.times[i]);
        out += ',';
        out += fmt_g17(s.values[i]);
        out += '\n';
    }
    return out;
}

inline std::string bands_csv(const SpectralDecomposition& sd) {
    std::string out = "k";
    for (int j = 0; j < sd.dim; ++j) out += ",omega_" + std::to_string(j);
    for (int j = 0; j < sd.dim; ++j) out += ",w_" + std::to_string(j);
    out += '\n';
    for (int m = 0; m < sd.grid.M; ++m) {
        out += fmt_g17(sd.grid.points[m]);
        for (int j = 0; j < sd.dim; ++j) out += ',' + fmt_g17(sd.omega(m, j));
        for (int j = 0; j < sd.dim; ++j) out += ',' + fmt_g17(sd.weight(m, j));
        out += '\n';
    }
    return out;
}

inline std::string velocity_density_csv(const VelocityDensity& vd) {
    std::string out = "v_lo,v_hi,mass\n";
    for (int i = 0; i < vd.bins; ++i) {
        out += fmt_g17(vd.edge(i));
        out += ',';
        out += fmt_g17(vd.edge(i + 1));
        out += ',';
        out += fmt_g17(vd.mass[i]);
        out += '\n';
    }
    out += "atom_at_zero," + fmt_g17(vd.atom_at_zero) + '\n';
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open output file " + path.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw config_error("failed writing " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open file " + path.string());
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

} // namespace qwalk
