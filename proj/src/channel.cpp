#include "thzmol/channel.hpp"

#include "thzmol/constants.hpp"
#include "thzmol/csv.hpp"
#include "thzmol/errors.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace thzmol {

double spreading_loss_db(double f_hz, double distance_m) {
    if (!(f_hz > 0.0) || !(distance_m > 0.0)) throw DomainError("spreading loss: f and d must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * f_hz * distance_m / kConst.c);
}

void LinkGeometry::validate() const {
    if (!(distance_m > 0.0)) throw DomainError("link geometry: distance must be positive");
    if (!(bandwidth_hz > 0.0)) throw DomainError("link geometry: bandwidth must be positive");
    if (!(carrier_hz > 0.0)) throw DomainError("link geometry: carrier must be positive");
    if (!(tx_power_w >= 0.0)) throw DomainError("link geometry: transmit power must be non-negative");
}

const char* LinkBudget::csv_header() {
    return "spreading_loss_db,absorption_loss_db,weather_loss_db,received_power_w,thermal_noise_w,"
           "absorption_noise_w,snr,capacity_bps,spectral_efficiency";
}

void LinkBudget::write_csv_row(std::ostream& out) const {
    out << format_double(spreading_loss_db) << ',' << format_double(absorption_loss_db) << ','
        << format_double(weather_loss_db) << ',' << format_double(received_power_w) << ','
        << format_double(thermal_noise_w) << ',' << format_double(absorption_noise_w) << ','
        << format_double(snr) << ',' << format_double(capacity_bps) << ','
        << format_double(spectral_efficiency) << '\n';
}

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

double ideal_received_power(const LinkGeometry& g) {
    const double ls = spreading_loss_db(g.carrier_hz, g.distance_m);
    return g.tx_power_w * db_to_linear(g.gain_tx_db) * db_to_linear(g.gain_rx_db) / db_to_linear(ls);
}

double thermal_noise_power(double t_env_k, double bandwidth_hz) {
    if (!(t_env_k >= 0.0) || !(bandwidth_hz > 0.0)) throw DomainError("thermal noise: bad temperature or bandwidth");
    return kConst.k_B * t_env_k * bandwidth_hz;
}

double absorption_noise_power(double tx_power_w, const LinkGeometry& geometry, double k_db_km,
                              double bandwidth_hz, double t_env_k) {
    if (!(k_db_km >= 0.0)) throw DomainError("absorption noise: k must be non-negative");
    LinkGeometry g = geometry;
    g.tx_power_w = tx_power_w;
    g.validate();
    const double emissivity = 1.0 - transmittance(absorption_loss_db(k_db_km, g.distance_m * 1e-3));
    return emissivity * ideal_received_power(g) + emissivity * thermal_noise_power(t_env_k, bandwidth_hz);
}

double capacity(double snr, double bandwidth_hz) {
    if (!(snr >= 0.0)) throw DomainError("capacity: snr must be non-negative");
    return bandwidth_hz * std::log2(1.0 + snr);
}

LinkBudget link_budget(const LinkGeometry& g, double k_db_km, double t_env_k, const WeatherModel* weather) {
    g.validate();
    LinkBudget b{};
    b.spreading_loss_db = spreading_loss_db(g.carrier_hz, g.distance_m);
    b.absorption_loss_db = absorption_loss_db(k_db_km, g.distance_m * 1e-3);
    b.weather_loss_db = 0.0;
    if (!std::holds_alternative<ClearSky>(g.weather)) {
        if (weather == nullptr) throw DomainError("link budget: weather condition given without a weather model");
        b.weather_loss_db = weather_attenuation_db_km(*weather, g.weather, g.carrier_hz) * g.distance_m * 1e-3;
    }
    const double total_db = b.spreading_loss_db + b.absorption_loss_db + b.weather_loss_db;
    b.received_power_w =
        g.tx_power_w * db_to_linear(g.gain_tx_db) * db_to_linear(g.gain_rx_db) / db_to_linear(total_db);
    b.thermal_noise_w = thermal_noise_power(t_env_k, g.bandwidth_hz);
    b.absorption_noise_w = absorption_noise_power(g.tx_power_w, g, k_db_km, g.bandwidth_hz, t_env_k);
    b.snr = b.received_power_w / (b.thermal_noise_w + b.absorption_noise_w);
    b.spectral_efficiency = std::log2(1.0 + b.snr);
    b.capacity_bps = capacity(b.snr, g.bandwidth_hz);
    return b;
}

SpectrumEngine make_line_by_line_engine(std::vector<SpectralLine> catalog, AbsorptionOptions options) {
    options.check_band_coverage = false;
    return [catalog = std::move(catalog), options](const AtmosphereState& atm, double f_hz) {
        const double f[1] = {f_hz};
        return absorption_coefficient(catalog, atm, std::span<const double>(f), options).k_total()[0];
    };
}

double slant_absorption_db(const AltitudeProfile& profile, const LinkGeometry& g, const SpectrumEngine& engine,
                           std::size_t n_segments) {
    if (n_segments < 1) throw DomainError("slant path: need at least one segment");
    g.validate();
    const double segment_km = g.distance_m * 1e-3 / static_cast<double>(n_segments);
    double total = 0.0;
    for (std::size_t i = 0; i < n_segments; ++i) {
        const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(n_segments);
        const double h = g.tx_altitude_km + frac * (g.rx_altitude_km - g.tx_altitude_km);
        total += absorption_loss_db(engine(profile.at(h), g.carrier_hz), segment_km);
    }
    return total;
}

std::complex<double> TransferFunction::at_index(std::size_t i) const {
    return std::polar(magnitude.at(i), -2.0 * std::numbers::pi * frequencies_hz.at(i) * delay_s);
}

TransferFunction channel_transfer_function(const AbsorptionSpectrum& spectrum, double distance_m,
                                           bool include_spreading) {
    if (!(distance_m >= 0.0)) throw DomainError("transfer function: distance must be non-negative");
    TransferFunction h;
    h.frequencies_hz = spectrum.frequencies();
    h.magnitude.resize(spectrum.size());
    h.delay_s = distance_m / kConst.c;
    const auto& k = spectrum.k_total();
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        double loss = absorption_loss_db(k[i], distance_m * 1e-3);
        if (include_spreading && distance_m > 0.0) loss += spreading_loss_db(h.frequencies_hz[i], distance_m);
        h.magnitude[i] = std::min(1.0, std::pow(10.0, -loss / 20.0));
    }
    return h;
}

}  // namespace thzmol
