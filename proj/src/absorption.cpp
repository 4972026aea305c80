#include "thzmol/absorption.hpp"

#include "thzmol/constants.hpp"
#include "thzmol/csv.hpp"
#include "thzmol/errors.hpp"
#include "thzmol/itu_lines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace thzmol {

FrequencyGrid::FrequencyGrid(double f_start_hz, double f_stop_hz, std::size_t n_points)
    : f_start_(f_start_hz), f_stop_(f_stop_hz), n_(n_points) {
    if (!(f_start_hz > 0.0) || !(f_stop_hz > f_start_hz) || !(f_stop_hz <= kMaxFrequencyHz))
        throw DomainError("frequency grid: need 0 < f_start < f_stop <= 10 THz");
    if (n_points < 2) throw DomainError("frequency grid: need at least 2 points");
}

double FrequencyGrid::operator[](std::size_t i) const {
    if (i + 1 == n_) return f_stop_;
    return f_start_ + static_cast<double>(i) * spacing();
}

std::vector<double> FrequencyGrid::points() const {
    std::vector<double> f(n_);
    for (std::size_t i = 0; i < n_; ++i) f[i] = (*this)[i];
    return f;
}

AbsorptionSpectrum::AbsorptionSpectrum(std::vector<double> frequencies_hz, SpeciesMap k_by_species_db_km,
                                       std::string provenance)
    : frequencies_(std::move(frequencies_hz)), by_species_(std::move(k_by_species_db_km)),
      k_total_(frequencies_.size(), 0.0), provenance_(std::move(provenance)) {
    if (frequencies_.empty()) throw DomainError("absorption spectrum: no frequencies");
    for (std::size_t i = 0; i < frequencies_.size(); ++i) {
        if (!(frequencies_[i] > 0.0) || (i > 0 && !(frequencies_[i] > frequencies_[i - 1])))
            throw DomainError("absorption spectrum: frequencies must be positive and strictly increasing");
    }
    for (const auto& [species, k] : by_species_) {
        if (k.size() != frequencies_.size())
            throw DomainError("absorption spectrum: size mismatch for species " + species.name());
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (!(k[i] >= 0.0) || !std::isfinite(k[i]))
                throw DomainError("absorption spectrum: negative or non-finite k for species " + species.name());
            k_total_[i] += k[i];
        }
    }
}

AbsorptionSpectrum AbsorptionSpectrum::from_inverse_cm(std::vector<double> frequencies_hz,
                                                       SpeciesMap alpha_by_species_per_cm,
                                                       std::string provenance) {
    for (auto& [species, alpha] : alpha_by_species_per_cm)
        for (double& a : alpha) a *= kDbKmPerInvCm;
    return AbsorptionSpectrum(std::move(frequencies_hz), std::move(alpha_by_species_per_cm), std::move(provenance));
}

AbsorptionSpectrum AbsorptionSpectrum::synthetic(std::vector<double> frequencies_hz, std::vector<double> k_db_km,
                                                 std::string provenance) {
    SpeciesMap m;
    m.emplace(Species{Species::Kind::Other, 0}, std::move(k_db_km));
    return AbsorptionSpectrum(std::move(frequencies_hz), std::move(m), std::move(provenance));
}

std::vector<double> AbsorptionSpectrum::k_species(const Species& species) const {
    auto it = by_species_.find(species);
    if (it == by_species_.end()) return std::vector<double>(frequencies_.size(), 0.0);
    return it->second;
}

double AbsorptionSpectrum::k_at(double f_hz) const {
    if (!(f_hz >= frequencies_.front() && f_hz <= frequencies_.back()))
        throw RangeError("absorption spectrum: frequency " + format_double(f_hz) + " Hz outside grid");
    auto it = std::lower_bound(frequencies_.begin(), frequencies_.end(), f_hz);
    const auto i = static_cast<std::size_t>(it - frequencies_.begin());
    if (frequencies_[i] == f_hz) return k_total_[i];
    const double t = (f_hz - frequencies_[i - 1]) / (frequencies_[i] - frequencies_[i - 1]);
    return k_total_[i - 1] + t * (k_total_[i] - k_total_[i - 1]);
}

void AbsorptionSpectrum::write_csv(std::ostream& out) const {
    const auto h2o = k_species(Species::h2o());
    const auto o2 = k_species(Species::o2());
    out << "f_hz,k_total_db_km,k_h2o_db_km,k_o2_db_km\n";
    for (std::size_t i = 0; i < frequencies_.size(); ++i) {
        out << format_double(frequencies_[i]) << ',' << format_double(k_total_[i]) << ','
            << format_double(h2o[i]) << ',' << format_double(o2[i]) << '\n';
    }
}

double line_halfwidth(const SpectralLine& line, const AtmosphereState& atm) {
    const double p = atm.pressure_atm();
    const double p_self = atm.vapor_partial_pressure_atm();
    const double scale = std::pow(kConst.T0 / atm.temperature_k(), line.temperature_exponent);
    return scale * (line.air_halfwidth_ref * (p - p_self) + line.self_halfwidth_ref * p_self) / kConst.p0_atm;
}

namespace {

// Partition-function exponent m in Q(T0)/Q(T) = (T0/T)^m.
double partition_exponent(const Species& s) {
    switch (s.kind) {
    case Species::Kind::H2O:
        return 1.5;
    case Species::Kind::O2:
        return 1.0;
    case Species::Kind::Other:
        break;
    }
    return 1.5;
}

}  // namespace

double line_intensity(const SpectralLine& line, double temperature_k) {
    if (!(temperature_k >= kIntensityTmin && temperature_k <= kIntensityTmax))
        throw RangeError("line intensity: temperature " + format_double(temperature_k) + " K outside [150, 350] K");
    const double t0 = kConst.T0;
    if (temperature_k == t0) return line.intensity_ref;
    const double c2 = kConst.c2();
    const double nu = line.center_wavenumber;
    const double q = std::pow(t0 / temperature_k, partition_exponent(line.species));
    const double boltz = std::exp(-c2 * line.lower_state_energy * (1.0 / temperature_k - 1.0 / t0));
    const double stim = -std::expm1(-c2 * nu / temperature_k) / -std::expm1(-c2 * nu / t0);
    return line.intensity_ref * q * boltz * stim;
}

double vvw_line_shape(double nu, double nu0, double gamma, double cutoff) {
    const double dm = nu - nu0;
    if (std::abs(dm) > cutoff) return 0.0;
    const double dp = nu + nu0;
    const double g2 = gamma * gamma;
    auto lorentz = [gamma, g2](double x) { return gamma / (x * x + g2); };
    const double minus = lorentz(dm) - lorentz(cutoff);
    const double plus = lorentz(dp) - lorentz(2.0 * nu0 + cutoff);
    const double r = nu / nu0;
    return std::max(0.0, r * r / std::numbers::pi * (minus + plus));
}

namespace {

constexpr double kGuardHalfwidths = 50.0;

double hz_to_wavenumber(double f_hz) { return f_hz / (kConst.c * 100.0); }

struct PreparedLine {
    std::size_t slot;   // 0 = H2O, 1 = O2
    double nu0;         // shifted centre, 1/cm
    double gamma;       // 1/cm
    double strength;    // N * S(T), 1/cm^2
};

void check_frequencies(std::span<const double> f) {
    if (f.empty()) throw DomainError("absorption: no frequencies");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] > 0.0) || !(f[i] <= FrequencyGrid::kMaxFrequencyHz) || (i > 0 && !(f[i] > f[i - 1])))
            throw DomainError("absorption: frequencies must be strictly increasing in (0, 10 THz]");
    }
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

std::string describe(const AtmosphereState& atm, std::size_t n_lines, AbsorptionMode mode) {
    std::ostringstream s;
    s << (mode == AbsorptionMode::LineByLine ? "line-by-line" : "itu-split") << " lines=" << n_lines
      << " p_atm=" << format_double(atm.pressure_atm()) << " T_k=" << format_double(atm.temperature_k())
      << " rho_gm3=" << format_double(atm.water_vapor_density())
      << " x_o2=" << format_double(atm.oxygen_mixing_ratio());
    return s.str();
}

}  // namespace

AbsorptionSpectrum absorption_coefficient(std::span<const SpectralLine> catalog, const AtmosphereState& atm,
                                          std::span<const double> frequencies_hz,
                                          const AbsorptionOptions& options) {
    check_frequencies(frequencies_hz);
    if (!(options.cutoff_hz > 0.0)) throw DomainError("absorption: cutoff must be positive");
    const bool split = options.mode == AbsorptionMode::ItuSplit;
    if (split && options.itu == nullptr) throw DomainError("absorption: ITU split mode needs ITU line tables");

    const std::size_t n = frequencies_hz.size();
    const auto lbl_begin = split ? static_cast<std::size_t>(std::upper_bound(frequencies_hz.begin(), frequencies_hz.end(),
                                                                             options.itu_split_hz) -
                                                            frequencies_hz.begin())
                                 : std::size_t{0};

    const double n_h2o = atm.h2o_number_density();
    const double n_o2 = atm.o2_number_density();
    const double p = atm.pressure_atm();

    std::vector<PreparedLine> lines;
    lines.reserve(catalog.size());
    bool in_band = false;
    const double band_lo = lbl_begin < n ? hz_to_wavenumber(frequencies_hz[lbl_begin]) : 0.0;
    const double band_hi = hz_to_wavenumber(frequencies_hz.back());
    for (const auto& line : catalog) {
        const double gamma = line_halfwidth(line, atm);
        const double nu0 = line.center_wavenumber + line.pressure_shift * p;
        if (nu0 >= band_lo - kGuardHalfwidths * gamma && nu0 <= band_hi + kGuardHalfwidths * gamma) in_band = true;
        std::size_t slot = 0;
        double density = 0.0;
        if (line.species.kind == Species::Kind::H2O) {
            density = n_h2o;
        } else if (line.species.kind == Species::Kind::O2) {
            slot = 1;
            density = n_o2;
        } else {
            continue;  // no number density model for other species
        }
        if (density == 0.0) continue;
        lines.push_back({slot, nu0, gamma, density * line_intensity(line, atm.temperature_k())});
    }
    if (options.check_band_coverage && lbl_begin < n && !in_band) {
        throw NoLinesInBand("absorption: no catalog line within 50 half widths of [" +
                            format_double(frequencies_hz[lbl_begin]) + ", " + format_double(frequencies_hz.back()) +
                            "] Hz");
    }

    const double cutoff = hz_to_wavenumber(options.cutoff_hz);
    std::vector<double> alpha_h2o(n, 0.0);
    std::vector<double> alpha_o2(n, 0.0);
    std::vector<double> itu_h2o(split ? n : 0, 0.0);
    std::vector<double> itu_o2(split ? n : 0, 0.0);

    parallel_for(n, options.threads, [&](std::size_t i) {
        if (i < lbl_begin) {
            const auto a = itu_line_attenuation(*options.itu, atm, frequencies_hz[i]);
            itu_h2o[i] = a.water_db_km;
            itu_o2[i] = a.oxygen_db_km;
            return;
        }
        const double nu = hz_to_wavenumber(frequencies_hz[i]);
        double sum[2] = {0.0, 0.0};
        for (const auto& l : lines) {
            if (std::abs(nu - l.nu0) > cutoff) continue;
            sum[l.slot] += l.strength * vvw_line_shape(nu, l.nu0, l.gamma, cutoff);
        }
        alpha_h2o[i] = sum[0];
        alpha_o2[i] = sum[1];
    });

    std::vector<double> f(frequencies_hz.begin(), frequencies_hz.end());
    const auto provenance = describe(atm, catalog.size(), options.mode);
    if (!split) {
        AbsorptionSpectrum::SpeciesMap m;
        m.emplace(Species::h2o(), std::move(alpha_h2o));
        m.emplace(Species::o2(), std::move(alpha_o2));
        return AbsorptionSpectrum::from_inverse_cm(std::move(f), std::move(m), provenance);
    }
    // ITU formula already yields dB/km; line-by-line points convert here.
    for (std::size_t i = lbl_begin; i < n; ++i) {
        itu_h2o[i] = alpha_h2o[i] * kDbKmPerInvCm;
        itu_o2[i] = alpha_o2[i] * kDbKmPerInvCm;
    }
    AbsorptionSpectrum::SpeciesMap m;
    m.emplace(Species::h2o(), std::move(itu_h2o));
    m.emplace(Species::o2(), std::move(itu_o2));
    return AbsorptionSpectrum(std::move(f), std::move(m), provenance);
}

AbsorptionSpectrum absorption_coefficient(std::span<const SpectralLine> catalog, const AtmosphereState& atm,
                                          const FrequencyGrid& grid, const AbsorptionOptions& options) {
    const auto f = grid.points();
    return absorption_coefficient(catalog, atm, std::span<const double>(f), options);
}

double absorption_loss_db(double k_db_km, double distance_km) {
    if (!(k_db_km >= 0.0) || !(distance_km >= 0.0))
        throw DomainError("absorption loss: k and d must be non-negative");
    return k_db_km * distance_km;
}

double transmittance(double loss_db) {
    if (!(loss_db >= 0.0)) throw DomainError("transmittance: loss must be non-negative");
    return std::pow(10.0, -loss_db / 10.0);
}

}  // namespace thzmol
