#include "thzmol/catalog.hpp"

#include "thzmol/constants.hpp"
#include "thzmol/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace thzmol {

Species Species::from_hitran_code(int code) {
    switch (code) {
    case 1:
        return h2o();
    case 7:
        return o2();
    default:
        return {Kind::Other, code};
    }
}

Species Species::from_name(const std::string& name) {
    if (name == "H2O") return h2o();
    if (name == "O2") return o2();
    int code = 0;
    const auto* end = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(name.data(), end, code);
    if (ec != std::errc{} || ptr != end || code <= 0)
        throw DomainError("unknown species '" + name + "'");
    return from_hitran_code(code);
}

std::string Species::name() const {
    switch (kind) {
    case Kind::H2O:
        return "H2O";
    case Kind::O2:
        return "O2";
    case Kind::Other:
        break;
    }
    return std::to_string(code);
}

double SpectralLine::center_frequency_hz() const { return center_wavenumber * kConst.c * 100.0; }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

struct Field {
    const char* name;
    std::size_t offset;
    std::size_t width;
};

// HITRAN 2004 160-character layout.
constexpr Field kMolecule{"molecule", 0, 2};
constexpr Field kIsotopologue{"isotopologue", 2, 1};
constexpr Field kWavenumber{"wavenumber", 3, 12};
constexpr Field kIntensity{"intensity", 15, 10};
constexpr Field kEinsteinA{"einstein_a", 25, 10};
constexpr Field kAirWidth{"air_halfwidth", 35, 5};
constexpr Field kSelfWidth{"self_halfwidth", 40, 5};
constexpr Field kLowerEnergy{"lower_state_energy", 45, 10};
constexpr Field kTempExponent{"temperature_exponent", 55, 4};
constexpr Field kPressureShift{"pressure_shift", 59, 8};

[[noreturn]] void bad_field(std::size_t index, const Field& f, std::string_view text) {
    std::ostringstream msg;
    msg << "record " << index << ": cannot parse field '" << f.name << "' at offset " << f.offset
        << ": '" << text << "'";
    throw ParseError(ParseError::Kind::BadField, index, f.name, f.offset, msg.str());
}

double read_double(std::string_view record, std::size_t index, const Field& f) {
    auto text = record.substr(f.offset, f.width);
    double v = 0.0;
    if (!parse_number(text, v)) bad_field(index, f, text);
    return v;
}

int read_isotopologue(std::string_view record, std::size_t index) {
    char c = record[kIsotopologue.offset];
    if (c >= '1' && c <= '9') return c - '0';
    if (c == '0') return 10;
    if (c >= 'A' && c <= 'Z') return 11 + (c - 'A');
    bad_field(index, kIsotopologue, record.substr(kIsotopologue.offset, 1));
}

void check_line(const SpectralLine& line, std::size_t index) {
    auto fail = [&](const char* field) {
        throw ParseError(ParseError::Kind::InvalidValue, index, field, 0,
                         "record " + std::to_string(index) + ": invalid value for '" + field + "'");
    };
    if (!(line.center_wavenumber > 0.0)) fail("wavenumber");
    if (!(line.intensity_ref >= 0.0)) fail("intensity");
    if (!(line.air_halfwidth_ref > 0.0)) fail("air_halfwidth");
    if (!(line.self_halfwidth_ref >= 0.0)) fail("self_halfwidth");
    if (!(line.lower_state_energy >= 0.0)) fail("lower_state_energy");
}

SpectralLine parse_hitran_record(std::string_view record, std::size_t index) {
    if (record.size() != kHitranRecordLength) {
        throw ParseError(ParseError::Kind::WrongLength, index, "", 0,
                         "record " + std::to_string(index) + ": expected " +
                             std::to_string(kHitranRecordLength) + " characters, got " +
                             std::to_string(record.size()));
    }
    int molecule = 0;
    auto mol_text = record.substr(kMolecule.offset, kMolecule.width);
    if (!parse_number(mol_text, molecule) || molecule <= 0) bad_field(index, kMolecule, mol_text);

    SpectralLine line;
    line.species = Species::from_hitran_code(molecule);
    line.isotopologue = read_isotopologue(record, index);
    line.center_wavenumber = read_double(record, index, kWavenumber);
    line.intensity_ref = read_double(record, index, kIntensity);
    read_double(record, index, kEinsteinA);  // validated, not used
    line.air_halfwidth_ref = read_double(record, index, kAirWidth);
    line.self_halfwidth_ref = read_double(record, index, kSelfWidth);
    line.lower_state_energy = read_double(record, index, kLowerEnergy);
    line.temperature_exponent = read_double(record, index, kTempExponent);
    line.pressure_shift = read_double(record, index, kPressureShift);
    check_line(line, index);
    return line;
}

// Builtin columns: species nu_cm S_ref gamma_air gamma_self n_air E_lower delta_air [iso]
constexpr std::size_t kBuiltinColumns = 8;
constexpr const char* kBuiltinNames[] = {"species",    "nu_cm", "S_ref",   "gamma_air", "gamma_self",
                                         "n_air",      "E_lower", "delta_air", "iso"};

SpectralLine parse_builtin_record(std::string_view record, std::size_t index) {
    std::vector<std::string_view> tokens;
    std::vector<std::size_t> offsets;
    std::size_t pos = 0;
    while (pos < record.size()) {
        while (pos < record.size() && std::isspace(static_cast<unsigned char>(record[pos]))) ++pos;
        if (pos >= record.size()) break;
        std::size_t start = pos;
        while (pos < record.size() && !std::isspace(static_cast<unsigned char>(record[pos]))) ++pos;
        tokens.push_back(record.substr(start, pos - start));
        offsets.push_back(start);
    }
    if (tokens.size() != kBuiltinColumns && tokens.size() != kBuiltinColumns + 1) {
        throw ParseError(ParseError::Kind::WrongLength, index, "", 0,
                         "record " + std::to_string(index) + ": expected 8 or 9 columns, got " +
                             std::to_string(tokens.size()));
    }

    auto num = [&](std::size_t col) {
        double v = 0.0;
        if (!parse_number(tokens[col], v)) {
            throw ParseError(ParseError::Kind::BadField, index, kBuiltinNames[col], offsets[col],
                             "record " + std::to_string(index) + ": cannot parse field '" +
                                 kBuiltinNames[col] + "' at offset " + std::to_string(offsets[col]));
        }
        return v;
    };

    SpectralLine line;
    try {
        line.species = Species::from_name(std::string(tokens[0]));
    } catch (const DomainError&) {
        throw ParseError(ParseError::Kind::BadField, index, "species", offsets[0],
                         "record " + std::to_string(index) + ": unknown species '" +
                             std::string(tokens[0]) + "'");
    }
    line.center_wavenumber = num(1);
    line.intensity_ref = num(2);
    line.air_halfwidth_ref = num(3);
    line.self_halfwidth_ref = num(4);
    line.temperature_exponent = num(5);
    line.lower_state_energy = num(6);
    line.pressure_shift = num(7);
    if (tokens.size() == kBuiltinColumns + 1) {
        int iso = 0;
        if (!parse_number(tokens[8], iso) || iso <= 0) {
            throw ParseError(ParseError::Kind::BadField, index, "iso", offsets[8],
                             "record " + std::to_string(index) + ": cannot parse field 'iso'");
        }
        line.isotopologue = iso;
    }
    check_line(line, index);
    return line;
}

}  // namespace

std::vector<SpectralLine> parse_line_catalog(std::istream& in, CatalogFormat format,
                                             std::optional<FrequencyBand> band) {
    std::vector<SpectralLine> lines;
    std::string record;
    std::size_t index = 0;
    std::size_t parsed = 0;
    while (std::getline(in, record)) {
        if (!record.empty() && record.back() == '\r') record.pop_back();
        if (format == CatalogFormat::BuiltinTable) {
            auto t = trim(record);
            if (t.empty() || t.front() == '#') continue;
        } else if (record.empty()) {
            continue;
        }
        SpectralLine line = format == CatalogFormat::HitranPar ? parse_hitran_record(record, index)
                                                               : parse_builtin_record(record, index);
        ++index;
        ++parsed;
        if (band && !band->contains(line.center_frequency_hz())) continue;
        lines.push_back(line);
    }
    if (lines.empty()) {
        std::ostringstream msg;
        msg << "no lines in band";
        if (band) msg << " [" << band->low_hz << ", " << band->high_hz << "] Hz";
        msg << " (" << parsed << " records read)";
        throw NoLinesInBand(msg.str());
    }
    std::stable_sort(lines.begin(), lines.end(), [](const SpectralLine& a, const SpectralLine& b) {
        return a.center_wavenumber < b.center_wavenumber;
    });
    return lines;
}

std::vector<SpectralLine> load_line_catalog(const std::string& path, CatalogFormat format,
                                            std::optional<FrequencyBand> band) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open line catalog '" + path + "'");
    return parse_line_catalog(in, format, band);
}

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void write_builtin_table(std::ostream& out, std::span<const SpectralLine> lines) {
    out << "# species nu_cm S_ref gamma_air gamma_self n_air E_lower delta_air [iso]\n";
    for (const auto& l : lines) {
        out << l.species.name() << ' ' << shortest(l.center_wavenumber) << ' '
            << shortest(l.intensity_ref) << ' ' << shortest(l.air_halfwidth_ref) << ' '
            << shortest(l.self_halfwidth_ref) << ' ' << shortest(l.temperature_exponent) << ' '
            << shortest(l.lower_state_energy) << ' ' << shortest(l.pressure_shift);
        if (l.isotopologue != 1) out << ' ' << l.isotopologue;
        out << '\n';
    }
}

double saturation_vapor_density(double temperature_k) {
    if (!(temperature_k >= kSaturationTmin && temperature_k <= kSaturationTmax)) {
        throw RangeError("saturation_vapor_density: temperature " + std::to_string(temperature_k) +
                         " K outside [180, 330] K");
    }
    // Magnus over water (Alduchov & Eskridge coefficients), hPa.
    const double t_c = temperature_k - 273.15;
    const double e_hpa = 6.1094 * std::exp(17.625 * t_c / (t_c + 243.04));
    const double rho_kg = e_hpa * 100.0 * kConst.water_molar_mass / (kConst.gas_constant * temperature_k);
    return rho_kg * 1e3;
}

AtmosphereState::AtmosphereState(double pressure_atm, double temperature_k,
                                 double water_vapor_density_gm3, double oxygen_mixing_ratio,
                                 bool allow_supersaturation)
    : pressure_atm_(pressure_atm), temperature_k_(temperature_k),
      water_vapor_density_(water_vapor_density_gm3), oxygen_mixing_ratio_(oxygen_mixing_ratio),
      allow_supersaturation_(allow_supersaturation) {
    if (!(pressure_atm > 0.0) || !std::isfinite(pressure_atm))
        throw DomainError("atmosphere: pressure must be positive");
    if (!(temperature_k > 0.0) || !std::isfinite(temperature_k))
        throw DomainError("atmosphere: temperature must be positive");
    if (!(water_vapor_density_gm3 >= 0.0) || !std::isfinite(water_vapor_density_gm3))
        throw DomainError("atmosphere: water vapour density must be non-negative");
    if (!(oxygen_mixing_ratio >= 0.0 && oxygen_mixing_ratio <= 1.0))
        throw DomainError("atmosphere: oxygen mixing ratio must lie in [0, 1]");
    if (!allow_supersaturation && temperature_k >= kSaturationTmin && temperature_k <= kSaturationTmax) {
        const double sat = saturation_vapor_density(temperature_k);
        if (water_vapor_density_gm3 > sat) {
            throw DomainError("atmosphere: vapour density " + std::to_string(water_vapor_density_gm3) +
                              " g/m^3 exceeds saturation " + std::to_string(sat) + " g/m^3");
        }
    }
    if (vapor_partial_pressure_atm() >= pressure_atm)
        throw DomainError("atmosphere: vapour partial pressure exceeds total pressure");
}

AtmosphereState::AtmosphereState(Unchecked, double p, double t, double rho, double x_o2, bool allow)
    : pressure_atm_(p), temperature_k_(t), water_vapor_density_(rho), oxygen_mixing_ratio_(x_o2),
      allow_supersaturation_(allow) {}

AtmosphereState AtmosphereState::sea_surface(double temperature_k, double pressure_atm) {
    return AtmosphereState(pressure_atm, temperature_k, saturation_vapor_density(temperature_k));
}

double AtmosphereState::vapor_partial_pressure_atm() const {
    const double pa = water_vapor_density_ * 1e-3 / kConst.water_molar_mass * kConst.gas_constant *
                      temperature_k_;
    return pa / kConst.pascal_per_atm;
}

double AtmosphereState::h2o_number_density() const {
    return water_vapor_density_ * 1e-3 / kConst.water_molar_mass * kConst.avogadro * 1e-6;
}

double AtmosphereState::o2_number_density() const {
    const double dry_pa = (pressure_atm_ - vapor_partial_pressure_atm()) * kConst.pascal_per_atm;
    return oxygen_mixing_ratio_ * dry_pa / (kConst.k_B * temperature_k_) * 1e-6;
}

AltitudeProfile::AltitudeProfile(std::vector<Sample> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DomainError("altitude profile: no samples");
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (!(samples_[i].altitude_km > samples_[i - 1].altitude_km))
            throw DomainError("altitude profile: altitudes must be strictly increasing");
    }
    const double base_vapor = samples_.front().state.water_vapor_density();
    for (const auto& s : samples_) {
        if (s.altitude_km >= 10.0 && s.state.water_vapor_density() > 0.01 * base_vapor) {
            throw DomainError("altitude profile: vapour density at " + std::to_string(s.altitude_km) +
                              " km exceeds 1% of the lowest sample");
        }
    }
}

AtmosphereState AltitudeProfile::at(double altitude_km) const {
    if (!(altitude_km >= min_altitude() && altitude_km <= max_altitude())) {
        throw RangeError("altitude " + std::to_string(altitude_km) + " km outside profile range [" +
                         std::to_string(min_altitude()) + ", " + std::to_string(max_altitude()) +
                         "] km");
    }
    auto it = std::lower_bound(samples_.begin(), samples_.end(), altitude_km,
                               [](const Sample& s, double a) { return s.altitude_km < a; });
    if (it->altitude_km == altitude_km) return it->state;

    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (altitude_km - lo.altitude_km) / (hi.altitude_km - lo.altitude_km);
    auto lerp = [t](double a, double b) { return a + t * (b - a); };
    auto loglerp = [t](double a, double b) { return std::exp(std::log(a) + t * (std::log(b) - std::log(a))); };

    const auto& a = lo.state;
    const auto& b = hi.state;
    const double p = loglerp(a.pressure_atm(), b.pressure_atm());
    const double temp = lerp(a.temperature_k(), b.temperature_k());
    const double rho = (a.water_vapor_density() > 0.0 && b.water_vapor_density() > 0.0)
                           ? loglerp(a.water_vapor_density(), b.water_vapor_density())
                           : lerp(a.water_vapor_density(), b.water_vapor_density());
    const double x_o2 = lerp(a.oxygen_mixing_ratio(), b.oxygen_mixing_ratio());
    return AtmosphereState(AtmosphereState::Unchecked{}, p, temp, rho, x_o2,
                           a.allows_supersaturation() || b.allows_supersaturation());
}

AltitudeProfile standard_profile(const StandardProfileParams& pp) {
    if (!(pp.step_km > 0.0) || !(pp.top_km > 0.0))
        throw DomainError("standard profile: step and top must be positive");
    const double vapor_at_taper = pp.sea_level_vapor_density * std::exp(-pp.vapor_taper_start_km / pp.vapor_scale_height_km);
    std::vector<AltitudeProfile::Sample> samples;
    const auto n = static_cast<std::size_t>(std::llround(pp.top_km / pp.step_km));
    for (std::size_t i = 0; i <= n; ++i) {
        const double a = static_cast<double>(i) * pp.step_km;
        const double p = pp.sea_level_pressure_atm * std::exp(-a / pp.pressure_scale_height_km);
        const double t = pp.sea_level_temperature_k - pp.lapse_rate_k_per_km * std::min(a, pp.tropopause_km);
        double rho = 0.0;
        if (a <= pp.vapor_taper_start_km) {
            rho = pp.sea_level_vapor_density * std::exp(-a / pp.vapor_scale_height_km);
        } else if (a < pp.vapor_taper_end_km) {
            rho = vapor_at_taper * (pp.vapor_taper_end_km - a) / (pp.vapor_taper_end_km - pp.vapor_taper_start_km);
        }
        samples.push_back({a, AtmosphereState(p, t, rho)});
    }
    return AltitudeProfile(std::move(samples));
}

AltitudeProfile homogeneous_profile(const AtmosphereState& state, double bottom_km, double top_km) {
    return AltitudeProfile({{bottom_km, state}, {top_km, state}});
}

}  // namespace thzmol
