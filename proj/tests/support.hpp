#pragma once

#include "thzmol/absorption.hpp"
#include "thzmol/catalog.hpp"
#include "thzmol/constants.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace test {

inline const std::string kDataDir = THZMOL_TEST_DATA_DIR;
inline const std::string kCliPath = THZMOL_CLI_PATH;

inline const std::vector<thzmol::SpectralLine>& builtin_catalog() {
    static const auto lines =
        thzmol::load_line_catalog(kDataDir + "/lines_builtin.txt", thzmol::CatalogFormat::BuiltinTable);
    return lines;
}

inline thzmol::AtmosphereState standard_sea_level() { return thzmol::AtmosphereState(1.0, 290.0, 7.5); }

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Three lines with deliberately different broadening, shift and lower-state energy.
inline std::vector<thzmol::SpectralLine> toy_catalog() {
    using thzmol::Species;
    return {
        {Species::h2o(), 1, 18.5778, 1.2e-19, 0.095, 0.45, 0.75, 136.76, -0.002},
        {Species::o2(), 1, 3.9611, 3.3e-26, 0.055, 0.055, 0.70, 16.39, 0.0},
        {Species::h2o(), 1, 25.0861, 7.0e-21, 0.085, 0.40, 0.64, 446.51, 0.001},
    };
}

/// Line-by-line oracle written from the textbook definitions, in long double and
/// with its own constants: alpha = sum N S(T) phi_VVW, then 10 log10(e) * 1e5 to dB/km.
inline long double oracle_k_db_km(const std::vector<thzmol::SpectralLine>& lines, double p_atm, double t_k,
                                  double rho_gm3, double x_o2, double f_hz, double cutoff_hz = 750e9) {
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double c_cm = 2.99792458e10L;
    const long double kb = 1.380649e-23L;
    const long double h = 6.62607015e-34L;
    const long double c2 = h * c_cm / kb;
    const long double na = 6.02214076e23L;
    const long double r = 8.314462618L;
    const long double m_w = 18.01528e-3L;
    const long double t0 = 296.0L;

    const long double p_self = rho_gm3 * 1e-3L / m_w * r * t_k / 101325.0L;
    const long double n_h2o = rho_gm3 / 18.01528L * na / 1e6L;
    const long double n_o2 = x_o2 * (p_atm - p_self) * 101325.0L / (kb * t_k) / 1e6L;
    const long double nu = f_hz / c_cm;
    const long double cut = cutoff_hz / c_cm;

    long double alpha = 0.0L;
    for (const auto& l : lines) {
        const bool water = l.species.kind == thzmol::Species::Kind::H2O;
        const long double n = water ? n_h2o : n_o2;
        const long double m = water ? 1.5L : 1.0L;
        const long double gamma = std::pow(t0 / t_k, (long double)l.temperature_exponent) *
                                  (l.air_halfwidth_ref * (p_atm - p_self) + l.self_halfwidth_ref * p_self);
        const long double nu0 = l.center_wavenumber + l.pressure_shift * p_atm;
        if (std::abs(nu - nu0) > cut) continue;
        const long double s = l.intensity_ref * std::pow(t0 / t_k, m) *
                              std::exp(-c2 * l.lower_state_energy / t_k) / std::exp(-c2 * l.lower_state_energy / t0) *
                              (1.0L - std::exp(-c2 * l.center_wavenumber / t_k)) /
                              (1.0L - std::exp(-c2 * l.center_wavenumber / t0));
        auto lor = [gamma](long double x) { return gamma / (x * x + gamma * gamma); };
        long double shape = (nu / nu0) * (nu / nu0) / pi *
                            ((lor(nu - nu0) - lor(cut)) + (lor(nu + nu0) - lor(2.0L * nu0 + cut)));
        if (shape < 0.0L) shape = 0.0L;
        alpha += n * s * shape;
    }
    return alpha * 10.0L / std::log(10.0L) * 1e5L;
}

/// A HITRAN 160-character record with the standard field widths.
inline std::string hitran_record(int mol, int iso, double nu, double s, double g_air, double g_self, double e_lower,
                                 double n_air, double delta) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%2d%1d%12.6f%10.3E%10.3E%5.3f%5.3f%10.4f%4.2f%8.5f", mol, iso, nu, s, 1.0e-5,
                  g_air, g_self, e_lower, n_air, delta);
    std::string r(buf);
    r.resize(thzmol::kHitranRecordLength, ' ');
    return r;
}

struct CommandOutput {
    int exit_code;
    std::string output;
};

/// Runs the CLI with stdout and stderr merged.
inline CommandOutput run_cli(const std::string& args) {
    const std::string cmd = "'" + kCliPath + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace test
