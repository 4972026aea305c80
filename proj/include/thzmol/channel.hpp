#pragma once

#include "thzmol/absorption.hpp"
#include "thzmol/catalog.hpp"
#include "thzmol/weather.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace thzmol {

/// Friis free-space loss 20 log10(4 pi f d / c). Throws DomainError for f <= 0 or d <= 0.
double spreading_loss_db(double f_hz, double distance_m);

struct LinkGeometry {
    double distance_m = 1.0;
    double tx_altitude_km = 0.0;
    double rx_altitude_km = 0.0;
    double gain_tx_db = 0.0;
    double gain_rx_db = 0.0;
    double carrier_hz = 300e9;
    double bandwidth_hz = 10e9;
    double tx_power_w = 1e-3;
    WeatherCondition weather = ClearSky{};

    /// Throws DomainError on nonpositive distance, bandwidth, carrier or power.
    void validate() const;
};

struct LinkBudget {
    double spreading_loss_db;
    double absorption_loss_db;
    double weather_loss_db;
    double received_power_w;
    double thermal_noise_w;
    double absorption_noise_w;
    double snr;
    double capacity_bps;
    double spectral_efficiency;  // bit/s/Hz

    static const char* csv_header();
    void write_csv_row(std::ostream& out) const;
};

/// Received power with spreading and gains only.
double ideal_received_power(const LinkGeometry& geometry);

/// eps * P_rx_ideal + k_B T eps B with eps = 1 - 10^(-k d / 10).
double absorption_noise_power(double tx_power_w, const LinkGeometry& geometry, double k_db_km,
                              double bandwidth_hz, double t_env_k);

double thermal_noise_power(double t_env_k, double bandwidth_hz);

/// B log2(1 + snr). Throws DomainError for snr < 0.
double capacity(double snr, double bandwidth_hz);

/// Narrowband budget at the carrier. Weather loss comes from `weather` when the
/// geometry carries a non-clear condition (DomainError if the model is missing).
/// Absorption noise follows molecular absorption only.
LinkBudget link_budget(const LinkGeometry& geometry, double k_db_km, double t_env_k,
                       const WeatherModel* weather = nullptr);

/// k(f) in dB/km for a given state.
using SpectrumEngine = std::function<double(const AtmosphereState&, double f_hz)>;

/// Line-by-line engine over a fixed catalog.
SpectrumEngine make_line_by_line_engine(std::vector<SpectralLine> catalog, AbsorptionOptions options = {});

/// Riemann sum of k over n equal segments between the geometry's end altitudes,
/// each segment evaluated at its midpoint state.
double slant_absorption_db(const AltitudeProfile& profile, const LinkGeometry& geometry,
                           const SpectrumEngine& engine, std::size_t n_segments);

/// H(f) = magnitude(f) exp(-j 2 pi f delay).
struct TransferFunction {
    std::vector<double> frequencies_hz;
    std::vector<double> magnitude;
    double delay_s = 0.0;

    std::complex<double> at_index(std::size_t i) const;
};

/// Magnitude 10^(-(L_spread + k d)/20), capped at 1, delay d / c. With
/// `include_spreading` false only absorption enters the magnitude.
TransferFunction channel_transfer_function(const AbsorptionSpectrum& spectrum, double distance_m,
                                           bool include_spreading = true);

/// Complex baseband pulse around `carrier_hz`.
struct Pulse {
    double sample_period_s = 0.0;
    double carrier_hz = 0.0;
    std::vector<std::complex<double>> samples;

    /// sum |x|^2 dt.
    double energy() const;
};

/// Gaussian envelope centred in the window, |x|^2 having standard deviation sigma_s.
/// n_samples must be a power of two.
Pulse gaussian_pulse(double carrier_hz, double sigma_s, double sample_period_s, std::size_t n_samples);

/// Energy from the spectrum (Parseval), sum |X|^2 df.
double spectral_energy(const Pulse& pulse);

/// Multiplies the pulse spectrum by H in the frame moving with the bulk delay.
///
/// The pulse is zero padded 4x before transforming and cropped back after. H is
/// interpolated linearly in magnitude; bins outside the H grid see zero gain, and
/// GridMismatch is thrown when they hold more than 1e-9 of the input energy.
/// GridMismatch is also thrown when the broadened pulse leaks more than 1e-9 of its
/// energy outside the original window. H identically one returns the input unchanged.
Pulse propagate_pulse(const Pulse& pulse, const TransferFunction& h);

/// Square root of the second central moment of |x|^2 in time.
double rms_width(const Pulse& pulse);

/// CSV `t_s,re,im`.
void write_pulse_csv(std::ostream& out, const Pulse& pulse);

}  // namespace thzmol
