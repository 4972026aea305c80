#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace thzmol {

struct ClearSky {
    bool operator==(const ClearSky&) const = default;
};
struct Rain {
    double rate_mm_h;
    bool operator==(const Rain&) const = default;
};
struct Fog {
    double visibility_m;
    bool operator==(const Fog&) const = default;
};
struct Sand {
    double density_g_m3;
    bool operator==(const Sand&) const = default;
};

using WeatherCondition = std::variant<ClearSky, Rain, Fog, Sand>;

/// "clear", "rain:<mm/h>", "fog:<visibility m>" or "sand:<g/m^3>". Throws DomainError.
WeatherCondition parse_weather_condition(const std::string& text);
std::string weather_condition_name(const WeatherCondition& condition);

/// Coefficient sets behind the weather attenuation models.
///
/// Rain: specific attenuation k(f) * R^alpha(f), with (k, alpha) tabulated against
/// frequency and interpolated linearly in log f.
/// Fog: Rayleigh regime, K_l(f, T) * M where M is the liquid water content implied by
/// the visibility, M = (vis_coeff / V_km)^(1 / vis_exponent), and K_l follows the
/// double-Debye permittivity of water.
/// Sand: linear in particle density with a tabulated coefficient c(f).
struct WeatherModel {
    struct RainPoint {
        double f_hz;
        double k;
        double alpha;
    };
    struct SandPoint {
        double f_hz;
        double db_km_per_g_m3;
    };

    std::vector<RainPoint> rain;
    double fog_temperature_k = 283.15;
    double fog_visibility_coeff = 0.024;
    double fog_visibility_exponent = 0.65;
    std::vector<SandPoint> sand;
};

/// Reads the JSON weather coefficient file (see data/weather.json).
WeatherModel parse_weather_model(std::istream& in);
WeatherModel load_weather_model(const std::string& path);

/// Specific attenuation in dB/km; identically zero for a clear sky.
double weather_attenuation_db_km(const WeatherModel& model, const WeatherCondition& condition,
                                 double f_hz);

/// Specific attenuation of liquid water per unit content, (dB/km)/(g/m^3).
double fog_specific_coefficient(double f_hz, double temperature_k);

}  // namespace thzmol
