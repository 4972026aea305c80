#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thzmol {

/// Absorbing species. HITRAN molecule codes: 1 = H2O, 7 = O2.
struct Species {
    enum class Kind : std::uint8_t { H2O, O2, Other };

    Kind kind = Kind::Other;
    int code = 0;

    static constexpr Species h2o() { return {Kind::H2O, 1}; }
    static constexpr Species o2() { return {Kind::O2, 7}; }
    static Species from_hitran_code(int code);
    /// Accepts "H2O", "O2" or a positive integer code.
    static Species from_name(const std::string& name);

    std::string name() const;

    auto operator<=>(const Species&) const = default;
};

/// One catalog absorption line, HITRAN conventions (296 K reference, 1/cm units).
struct SpectralLine {
    Species species;
    int isotopologue = 1;
    double center_wavenumber = 0.0;    // 1/cm
    double intensity_ref = 0.0;        // cm^-1/(molecule cm^-2)
    double air_halfwidth_ref = 0.0;    // 1/cm per atm
    double self_halfwidth_ref = 0.0;   // 1/cm per atm
    double temperature_exponent = 0.0;
    double lower_state_energy = 0.0;   // 1/cm
    double pressure_shift = 0.0;       // 1/cm per atm

    double center_frequency_hz() const;

    bool operator==(const SpectralLine&) const = default;
};

/// Closed frequency interval used to filter catalogs.
struct FrequencyBand {
    double low_hz;
    double high_hz;

    bool contains(double f_hz) const { return f_hz >= low_hz && f_hz <= high_hz; }
};

enum class CatalogFormat { HitranPar, BuiltinTable };

inline constexpr std::size_t kHitranRecordLength = 160;

/// Parses a line catalog. Records outside `band` are dropped; the result is sorted
/// by center wavenumber (stable). Throws ParseError on malformed records and
/// NoLinesInBand if nothing survives the filter.
std::vector<SpectralLine> parse_line_catalog(std::istream& in, CatalogFormat format,
                                             std::optional<FrequencyBand> band = std::nullopt);

std::vector<SpectralLine> load_line_catalog(const std::string& path, CatalogFormat format,
                                            std::optional<FrequencyBand> band = std::nullopt);

/// Writes lines in the builtin columnar format with round-trip exact numbers.
void write_builtin_table(std::ostream& out, std::span<const SpectralLine> lines);

/// Saturation water-vapour density over liquid water, g/m^3 (Magnus form, 180..330 K).
double saturation_vapor_density(double temperature_k);

inline constexpr double kSaturationTmin = 180.0;
inline constexpr double kSaturationTmax = 330.0;

/// Pressure, temperature and composition at one point of the medium.
class AtmosphereState {
public:
    static constexpr double kDefaultOxygenMixing = 0.209;

    /// Throws DomainError if a field is out of range or the vapour density exceeds
    /// saturation (unless `allow_supersaturation`).
    AtmosphereState(double pressure_atm, double temperature_k, double water_vapor_density_gm3,
                    double oxygen_mixing_ratio = kDefaultOxygenMixing,
                    bool allow_supersaturation = false);

    /// Saturated air at the given temperature, as over an open sea surface.
    static AtmosphereState sea_surface(double temperature_k, double pressure_atm = 1.0);

    double pressure_atm() const { return pressure_atm_; }
    double temperature_k() const { return temperature_k_; }
    double water_vapor_density() const { return water_vapor_density_; }
    double oxygen_mixing_ratio() const { return oxygen_mixing_ratio_; }
    bool allows_supersaturation() const { return allow_supersaturation_; }

    /// Water-vapour partial pressure in atm (ideal gas).
    double vapor_partial_pressure_atm() const;
    /// Number densities in molecules/cm^3.
    double h2o_number_density() const;
    double o2_number_density() const;

    bool operator==(const AtmosphereState&) const = default;

private:
    struct Unchecked {};
    AtmosphereState(Unchecked, double p, double t, double rho, double x_o2, bool allow);
    friend class AltitudeProfile;

    double pressure_atm_;
    double temperature_k_;
    double water_vapor_density_;
    double oxygen_mixing_ratio_;
    bool allow_supersaturation_;
};

/// Atmosphere sampled against altitude.
///
/// Interpolation is piecewise linear in log(pressure) and temperature, and
/// log-linear in vapour density (linear when either neighbour is dry).
class AltitudeProfile {
public:
    struct Sample {
        double altitude_km;
        AtmosphereState state;
    };

    /// Throws DomainError unless altitudes are strictly increasing and every sample at or
    /// above 10 km carries at most 1% of the lowest sample's vapour density.
    explicit AltitudeProfile(std::vector<Sample> samples);

    /// Throws RangeError outside [min_altitude, max_altitude].
    AtmosphereState at(double altitude_km) const;

    double min_altitude() const { return samples_.front().altitude_km; }
    double max_altitude() const { return samples_.back().altitude_km; }
    const std::vector<Sample>& samples() const { return samples_; }

private:
    std::vector<Sample> samples_;
};

inline AtmosphereState atmosphere_at(const AltitudeProfile& profile, double altitude_km) {
    return profile.at(altitude_km);
}

/// Parameters of the analytic reference troposphere/stratosphere.
struct StandardProfileParams {
    double sea_level_pressure_atm = 1.0;
    double sea_level_temperature_k = 290.0;
    double sea_level_vapor_density = 7.5;   // g/m^3
    double pressure_scale_height_km = 7.7;
    double vapor_scale_height_km = 2.0;
    double lapse_rate_k_per_km = 6.5;
    double tropopause_km = 11.0;
    double vapor_taper_start_km = 10.0;
    double vapor_taper_end_km = 12.0;
    double top_km = 30.0;
    double step_km = 0.25;
};

/// Exponential pressure, exponential vapour up to the taper, linear lapse to the
/// tropopause and isothermal above.
AltitudeProfile standard_profile(const StandardProfileParams& params = {});

/// Constant-state profile over [bottom_km, top_km].
AltitudeProfile homogeneous_profile(const AtmosphereState& state, double bottom_km, double top_km);

}  // namespace thzmol
