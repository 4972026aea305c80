#include "thzmol/weather.hpp"

#include "thzmol/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace thzmol {

namespace {

double parse_positive(std::string_view text, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(v >= 0.0) || !std::isfinite(v))
        throw DomainError("weather condition: bad " + what + " '" + std::string(text) + "'");
    return v;
}

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Piecewise-linear interpolation in log f, clamped to the table ends.
template <typename Point, typename Get>
double interp_log_f(const std::vector<Point>& table, double f_hz, Get get) {
    if (table.empty()) throw DomainError("weather model: empty coefficient table");
    if (f_hz <= table.front().f_hz) return get(table.front());
    if (f_hz >= table.back().f_hz) return get(table.back());
    auto it = std::upper_bound(table.begin(), table.end(), f_hz,
                               [](double f, const Point& p) { return f < p.f_hz; });
    const Point& hi = *it;
    const Point& lo = *(it - 1);
    const double t = std::log(f_hz / lo.f_hz) / std::log(hi.f_hz / lo.f_hz);
    return get(lo) + t * (get(hi) - get(lo));
}

template <typename Point>
void check_table(std::vector<Point>& table, const char* name) {
    if (table.empty()) throw DomainError(std::string("weather model: '") + name + "' table is empty");
    std::sort(table.begin(), table.end(), [](const Point& a, const Point& b) { return a.f_hz < b.f_hz; });
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].f_hz > 0.0)) throw DomainError(std::string("weather model: '") + name + "' frequency must be positive");
        if (i > 0 && table[i].f_hz == table[i - 1].f_hz)
            throw DomainError(std::string("weather model: duplicate frequency in '") + name + "'");
    }
}

}  // namespace

WeatherCondition parse_weather_condition(const std::string& text) {
    if (text == "clear") return ClearSky{};
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("unknown weather condition '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const std::string_view value(text.data() + colon + 1, text.size() - colon - 1);
    if (kind == "rain") return Rain{parse_positive(value, "rain rate")};
    if (kind == "fog") {
        const double v = parse_positive(value, "visibility");
        if (!(v > 0.0)) throw DomainError("weather condition: fog visibility must be positive");
        return Fog{v};
    }
    if (kind == "sand") return Sand{parse_positive(value, "sand density")};
    throw DomainError("unknown weather condition '" + text + "'");
}

std::string weather_condition_name(const WeatherCondition& condition) {
    struct Namer {
        std::string operator()(const ClearSky&) const { return "clear"; }
        std::string operator()(const Rain& r) const { return "rain:" + fmt(r.rate_mm_h); }
        std::string operator()(const Fog& f) const { return "fog:" + fmt(f.visibility_m); }
        std::string operator()(const Sand& s) const { return "sand:" + fmt(s.density_g_m3); }
    };
    return std::visit(Namer{}, condition);
}

WeatherModel parse_weather_model(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("weather model: ") + e.what());
    }
    WeatherModel m;
    try {
        for (const auto& row : j.at("rain").at("table"))
            m.rain.push_back({row.at("f_ghz").get<double>() * 1e9, row.at("k").get<double>(),
                              row.at("alpha").get<double>()});
        const auto& fog = j.at("fog");
        m.fog_temperature_k = fog.value("temperature_k", m.fog_temperature_k);
        m.fog_visibility_coeff = fog.value("visibility_coeff", m.fog_visibility_coeff);
        m.fog_visibility_exponent = fog.value("visibility_exponent", m.fog_visibility_exponent);
        for (const auto& row : j.at("sand").at("table"))
            m.sand.push_back({row.at("f_ghz").get<double>() * 1e9, row.at("db_km_per_g_m3").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("weather model: ") + e.what());
    }
    check_table(m.rain, "rain");
    check_table(m.sand, "sand");
    for (const auto& p : m.rain)
        if (!(p.k >= 0.0) || !(p.alpha > 0.0)) throw DomainError("weather model: rain coefficients must be non-negative");
    for (const auto& p : m.sand)
        if (!(p.db_km_per_g_m3 >= 0.0)) throw DomainError("weather model: sand coefficients must be non-negative");
    if (!(m.fog_temperature_k > 0.0) || !(m.fog_visibility_coeff > 0.0) || !(m.fog_visibility_exponent > 0.0))
        throw DomainError("weather model: fog parameters must be positive");
    return m;
}

WeatherModel load_weather_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weather model '" + path + "'");
    return parse_weather_model(in);
}

double fog_specific_coefficient(double f_hz, double temperature_k) {
    if (!(f_hz > 0.0) || !(temperature_k > 0.0)) throw DomainError("fog coefficient: nonpositive input");
    const double f = f_hz * 1e-9;
    const double theta = 300.0 / temperature_k;
    const double eps0 = 77.66 + 103.3 * (theta - 1.0);
    const double eps1 = 0.0671 * eps0;
    const double eps2 = 3.52;
    const double fp = 20.20 - 146.0 * (theta - 1.0) + 316.0 * (theta - 1.0) * (theta - 1.0);
    const double fs = 39.8 * fp;
    const double eps_im = f * (eps0 - eps1) / (fp * (1.0 + (f / fp) * (f / fp))) +
                          f * (eps1 - eps2) / (fs * (1.0 + (f / fs) * (f / fs)));
    const double eps_re = (eps0 - eps1) / (1.0 + (f / fp) * (f / fp)) +
                          (eps1 - eps2) / (1.0 + (f / fs) * (f / fs)) + eps2;
    const double eta = (2.0 + eps_re) / eps_im;
    return 0.819 * f / (eps_im * (1.0 + eta * eta));
}

double weather_attenuation_db_km(const WeatherModel& model, const WeatherCondition& condition, double f_hz) {
    if (!(f_hz > 0.0)) throw DomainError("weather attenuation: frequency must be positive");
    struct Eval {
        const WeatherModel& m;
        double f;
        double operator()(const ClearSky&) const { return 0.0; }
        double operator()(const Rain& r) const {
            if (r.rate_mm_h == 0.0) return 0.0;
            const double k = interp_log_f(m.rain, f, [](const auto& p) { return p.k; });
            const double a = interp_log_f(m.rain, f, [](const auto& p) { return p.alpha; });
            return k * std::pow(r.rate_mm_h, a);
        }
        double operator()(const Fog& fog) const {
            const double v_km = fog.visibility_m * 1e-3;
            const double lwc = std::pow(m.fog_visibility_coeff / v_km, 1.0 / m.fog_visibility_exponent);
            return fog_specific_coefficient(f, m.fog_temperature_k) * lwc;
        }
        double operator()(const Sand& s) const {
            return s.density_g_m3 * interp_log_f(m.sand, f, [](const auto& p) { return p.db_km_per_g_m3; });
        }
    };
    return std::visit(Eval{model, f_hz}, condition);
}

}  // namespace thzmol
