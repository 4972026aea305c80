#pragma once

#include "thzmol/catalog.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace thzmol {

struct ItuLineTables;

/// Uniform frequency grid inside (0, 10 THz].
class FrequencyGrid {
public:
    static constexpr double kMaxFrequencyHz = 10e12;

    /// Throws DomainError unless 0 < f_start < f_stop <= 10 THz and n_points >= 2.
    FrequencyGrid(double f_start_hz, double f_stop_hz, std::size_t n_points);

    double f_start() const { return f_start_; }
    double f_stop() const { return f_stop_; }
    std::size_t size() const { return n_; }
    double spacing() const { return (f_stop_ - f_start_) / static_cast<double>(n_ - 1); }
    /// Point i; the last point is f_stop exactly.
    double operator[](std::size_t i) const;
    std::vector<double> points() const;

    bool operator==(const FrequencyGrid&) const = default;

private:
    double f_start_;
    double f_stop_;
    std::size_t n_;
};

/// k(f) in dB/km with its per-species split.
///
/// Frequencies are strictly increasing but need not be uniform, so hand-built
/// spectra (two-frequency toys, synthetic peaks) share the same type.
class AbsorptionSpectrum {
public:
    using SpeciesMap = std::map<Species, std::vector<double>>;

    /// Takes per-species coefficients already in dB/km. k_total is their pointwise sum,
    /// accumulated in species order. Throws DomainError on size mismatch, unsorted
    /// frequencies or negative values.
    AbsorptionSpectrum(std::vector<double> frequencies_hz, SpeciesMap k_by_species_db_km,
                       std::string provenance = {});

    /// Power absorption coefficients in 1/cm, converted to dB/km here and nowhere else.
    static AbsorptionSpectrum from_inverse_cm(std::vector<double> frequencies_hz,
                                              SpeciesMap alpha_by_species_per_cm,
                                              std::string provenance = {});

    /// Single-component spectrum from a given k_total (filed under species code 0).
    static AbsorptionSpectrum synthetic(std::vector<double> frequencies_hz, std::vector<double> k_db_km,
                                        std::string provenance = "synthetic");

    const std::vector<double>& frequencies() const { return frequencies_; }
    const std::vector<double>& k_total() const { return k_total_; }
    const SpeciesMap& k_by_species() const { return by_species_; }
    /// Zeros when the species is absent.
    std::vector<double> k_species(const Species& species) const;
    const std::string& provenance() const { return provenance_; }
    std::size_t size() const { return frequencies_.size(); }

    /// Linear interpolation of k_total; RangeError outside [front, back].
    double k_at(double f_hz) const;

    /// CSV `f_hz,k_total_db_km,k_h2o_db_km,k_o2_db_km`.
    void write_csv(std::ostream& out) const;

private:
    std::vector<double> frequencies_;
    SpeciesMap by_species_;
    std::vector<double> k_total_;
    std::string provenance_;
};

enum class AbsorptionMode {
    LineByLine,
    /// ITU-R P.676 line formula up to `itu_split_hz`, line-by-line above.
    ItuSplit,
};

struct AbsorptionOptions {
    AbsorptionMode mode = AbsorptionMode::LineByLine;
    const ItuLineTables* itu = nullptr;  // required for ItuSplit
    double itu_split_hz = 1e12;
    double cutoff_hz = 750e9;            // VVW far-wing cutoff from line centre
    unsigned threads = 1;                // 0 = hardware concurrency
    /// Require a catalog line within 50 half widths of the evaluated band.
    bool check_band_coverage = true;
};

/// Pressure- and temperature-broadened Lorentz half width, 1/cm.
double line_halfwidth(const SpectralLine& line, const AtmosphereState& atm);

/// Line intensity at T (150..350 K), cm^-1/(molecule cm^-2). Throws RangeError.
double line_intensity(const SpectralLine& line, double temperature_k);

inline constexpr double kIntensityTmin = 150.0;
inline constexpr double kIntensityTmax = 350.0;

/// Van Vleck-Weisskopf shape with cutoff subtraction, in cm (1/cm^-1).
/// All arguments in 1/cm.
double vvw_line_shape(double nu, double nu0, double gamma, double cutoff);

/// Line-by-line absorption spectrum. Throws NoLinesInBand when no catalog line lies
/// within 50 half widths of the evaluated band.
AbsorptionSpectrum absorption_coefficient(std::span<const SpectralLine> catalog,
                                          const AtmosphereState& atm, const FrequencyGrid& grid,
                                          const AbsorptionOptions& options = {});

/// Same engine on arbitrary strictly increasing frequencies.
AbsorptionSpectrum absorption_coefficient(std::span<const SpectralLine> catalog,
                                          const AtmosphereState& atm,
                                          std::span<const double> frequencies_hz,
                                          const AbsorptionOptions& options = {});

/// k * d, dB. Throws DomainError on negative inputs.
double absorption_loss_db(double k_db_km, double distance_km);

/// 10^(-loss/10). Throws DomainError for negative loss.
double transmittance(double loss_db);

}  // namespace thzmol
