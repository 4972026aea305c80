#pragma once

#include "thzmol/absorption.hpp"
#include "thzmol/channel.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thzmol {

enum class Scheme { Baseline, Tan, Apm, Ran };

std::string scheme_name(Scheme s);
/// "baseline", "tan", "apm" or "ran"; DomainError otherwise.
Scheme parse_scheme(const std::string& name);

/// Transmitter, legitimate user (LU) at d_B and eavesdropper at d_E on one LoS axis.
/// The eavesdropper uses the LU's antenna gain.
struct SecurityScenario {
    double d_b_m = 10.0;
    double d_e_m = 10.0;
    double tx_power_w = 1e-3;
    double gain_tx_db = 0.0;
    double gain_rx_db = 0.0;
    double bandwidth_hz = 10e9;
    double carrier_hz = 300e9;
    double noise_temperature_k = 290.0;
    double snr_min = 1.0;
    double snr_covert = 0.0;
    double an_power_w = 0.0;      // receiver-side AN (RAN)
    double tan_fraction = 0.0;    // share of tx power spent on AN (TAN)

    void validate() const;
};

struct SecrecyResult {
    double c_b = 0.0;             // bit/s/Hz
    double c_e = 0.0;
    double secrecy_rate = 0.0;
    bool covert = false;
    double chosen_frequency_hz = 0.0;
    bool feasible = true;
    double snr_b = 0.0;
    double snr_e = 0.0;
    /// RAN only: fraction of the eavesdropper's information envelope hit by AN.
    double an_overlap = 0.0;

    bool operator==(const SecrecyResult&) const = default;
};

/// max(0, c_b - c_e). DomainError on negative inputs.
double secrecy_rate(double c_b, double c_e);

/// No countermeasure, carrier f_c.
SecrecyResult baseline_secrecy(const SecurityScenario& scenario, const AbsorptionSpectrum& spectrum);

/// Transmit-side AN: both receivers see SINR = (1 - a) S / (N + a S).
SecrecyResult tan_secrecy(const SecurityScenario& scenario, const AbsorptionSpectrum& spectrum);

/// Carrier chosen over the spectrum grid to maximise secrecy among frequencies where
/// the LU reaches snr_min. Ties go to the lowest frequency. `feasible` is false and
/// the rate zero when no frequency is reliable.
SecrecyResult apm_select_frequency(const AbsorptionSpectrum& spectrum, const SecurityScenario& scenario);

/// Pulse band used to measure temporal broadening around one carrier.
struct PulseBand {
    AbsorptionSpectrum spectrum;  // fine grid around the carrier
    double carrier_hz;
    double sigma_s;               // |x|^2 standard deviation at the transmitter
    double sample_period_s;
    std::size_t n_samples;

    /// Rectangular-equivalent width sqrt(12) * rms after `distance_m`.
    double envelope_width_s(double distance_m) const;
    /// Fraction of pulse energy surviving absorption over `distance_m`.
    double energy_transmission(double distance_m) const;
};

/// Pulse band over [max(1 GHz, f_c - 8 sigma_f), f_c + 8 sigma_f], sigma_f = 1 / (4 pi sigma_t).
PulseBand make_pulse_band(std::span<const SpectralLine> catalog, const AtmosphereState& atm, double carrier_hz,
                          double sigma_s, double sample_period_s, std::size_t n_samples,
                          std::size_t n_grid = 8192);

/// Timing model of the receiver-AN scheme.
///
/// The LU transmits AN in its own slot, offset from the information slot by
/// delta = W_I(d_B)/2 + W_SI/2 + guard, where W_SI is the AN width over the
/// self-interference loop. Separation needs W_I(d_B) + W_SI + 2 guard <= T_s.
/// At the eavesdropper the information envelope has width W_I(d_E); the AN envelope
/// is centred at delta (and delta - T_s) with width W_A(|d_E - d_B|).
struct RanConfig {
    PulseBand info;
    PulseBand an;
    double guard_s;
    double symbol_period_s;
    double self_loop_m = 1e-3;
    double an_gain_tx_db = 0.0;
    double an_gain_rx_db = 0.0;
};

SecrecyResult ran_secrecy(const SecurityScenario& scenario, const AbsorptionSpectrum& spectrum,
                          const RanConfig& ran);

struct SweepRow {
    Scheme scheme;
    double d_e_m;
    SecrecyResult result;
};

/// One row per (d_E, scheme), d_E-major. RAN rows need `ran`.
std::vector<SweepRow> sweep_eavesdropper(const SecurityScenario& base, std::span<const double> d_e_values,
                                         std::span<const Scheme> schemes, const AbsorptionSpectrum& spectrum,
                                         const RanConfig* ran = nullptr, unsigned threads = 1);

/// CSV `scheme,d_e_m,c_b,c_e,secrecy_bps_hz,covert,chosen_f_hz`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace thzmol
