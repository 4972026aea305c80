#include "thzmol/security.hpp"

#include "thzmol/constants.hpp"
#include "thzmol/csv.hpp"
#include "thzmol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

namespace thzmol {

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::Baseline:
        return "baseline";
    case Scheme::Tan:
        return "tan";
    case Scheme::Apm:
        return "apm";
    case Scheme::Ran:
        return "ran";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    for (Scheme s : {Scheme::Baseline, Scheme::Tan, Scheme::Apm, Scheme::Ran})
        if (scheme_name(s) == name) return s;
    throw DomainError("unknown scheme '" + name + "'");
}

void SecurityScenario::validate() const {
    if (!(d_b_m > 0.0) || !(d_e_m > 0.0)) throw DomainError("security scenario: distances must be positive");
    if (!(an_power_w >= 0.0)) throw DomainError("security scenario: AN power must be non-negative");
    if (!(snr_covert >= 0.0) || !(snr_min > snr_covert))
        throw DomainError("security scenario: need snr_min > snr_covert >= 0");
    if (!(tan_fraction >= 0.0 && tan_fraction < 1.0))
        throw DomainError("security scenario: TAN fraction must lie in [0, 1)");
    if (!(tx_power_w > 0.0) || !(bandwidth_hz > 0.0) || !(carrier_hz > 0.0) || !(noise_temperature_k > 0.0))
        throw DomainError("security scenario: power, bandwidth, carrier and noise temperature must be positive");
}

double secrecy_rate(double c_b, double c_e) {
    if (!(c_b >= 0.0) || !(c_e >= 0.0)) throw DomainError("secrecy rate: capacities must be non-negative");
    return std::max(0.0, c_b - c_e);
}

namespace {

LinkBudget budget(const SecurityScenario& s, double distance_m, double f_hz, double k_db_km) {
    LinkGeometry g;
    g.distance_m = distance_m;
    g.gain_tx_db = s.gain_tx_db;
    g.gain_rx_db = s.gain_rx_db;
    g.carrier_hz = f_hz;
    g.bandwidth_hz = s.bandwidth_hz;
    g.tx_power_w = s.tx_power_w;
    return link_budget(g, k_db_km, s.noise_temperature_k);
}

SecrecyResult from_snrs(const SecurityScenario& s, double snr_b, double snr_e, double f_hz) {
    SecrecyResult r;
    r.snr_b = snr_b;
    r.snr_e = snr_e;
    r.c_b = std::log2(1.0 + snr_b);
    r.c_e = std::log2(1.0 + snr_e);
    r.secrecy_rate = secrecy_rate(r.c_b, r.c_e);
    r.covert = snr_e <= s.snr_covert;
    r.chosen_frequency_hz = f_hz;
    return r;
}

SecrecyResult evaluate_at(const SecurityScenario& s, double f_hz, double k_db_km) {
    const auto b = budget(s, s.d_b_m, f_hz, k_db_km);
    const auto e = budget(s, s.d_e_m, f_hz, k_db_km);
    return from_snrs(s, b.snr, e.snr, f_hz);
}

}  // namespace

SecrecyResult baseline_secrecy(const SecurityScenario& s, const AbsorptionSpectrum& spectrum) {
    s.validate();
    return evaluate_at(s, s.carrier_hz, spectrum.k_at(s.carrier_hz));
}

SecrecyResult tan_secrecy(const SecurityScenario& s, const AbsorptionSpectrum& spectrum) {
    s.validate();
    const double k = spectrum.k_at(s.carrier_hz);
    if (s.tan_fraction == 0.0) return evaluate_at(s, s.carrier_hz, k);
    const double a = s.tan_fraction;
    auto sinr = [&](double d) {
        const auto b = budget(s, d, s.carrier_hz, k);
        const double noise = b.thermal_noise_w + b.absorption_noise_w;
        return (1.0 - a) * b.received_power_w / (noise + a * b.received_power_w);
    };
    return from_snrs(s, sinr(s.d_b_m), sinr(s.d_e_m), s.carrier_hz);
}

SecrecyResult apm_select_frequency(const AbsorptionSpectrum& spectrum, const SecurityScenario& s) {
    s.validate();
    const auto& f = spectrum.frequencies();
    const auto& k = spectrum.k_total();
    std::optional<SecrecyResult> best;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto r = evaluate_at(s, f[i], k[i]);
        if (r.snr_b < s.snr_min) continue;
        if (!best || r.secrecy_rate > best->secrecy_rate) best = r;
    }
    if (!best) {
        SecrecyResult none;
        none.feasible = false;
        return none;
    }
    return *best;
}

double PulseBand::envelope_width_s(double distance_m) const {
    const auto p = gaussian_pulse(carrier_hz, sigma_s, sample_period_s, n_samples);
    if (distance_m == 0.0) return std::sqrt(12.0) * rms_width(p);
    const auto h = channel_transfer_function(spectrum, distance_m, false);
    return std::sqrt(12.0) * rms_width(propagate_pulse(p, h));
}

double PulseBand::energy_transmission(double distance_m) const {
    const auto p = gaussian_pulse(carrier_hz, sigma_s, sample_period_s, n_samples);
    if (distance_m == 0.0) return 1.0;
    const auto h = channel_transfer_function(spectrum, distance_m, false);
    return propagate_pulse(p, h).energy() / p.energy();
}

PulseBand make_pulse_band(std::span<const SpectralLine> catalog, const AtmosphereState& atm, double carrier_hz,
                          double sigma_s, double sample_period_s, std::size_t n_samples, std::size_t n_grid) {
    if (!(sigma_s > 0.0)) throw DomainError("pulse band: sigma must be positive");
    const double sigma_f = 1.0 / (4.0 * std::numbers::pi * sigma_s);
    // Clamped at 1 GHz; propagate_pulse rejects pulses with real energy below it.
    const double lo = std::max(1e9, carrier_hz - 8.0 * sigma_f);
    const FrequencyGrid grid(lo, carrier_hz + 8.0 * sigma_f, n_grid);
    AbsorptionOptions opts;
    opts.check_band_coverage = false;
    return {absorption_coefficient(catalog, atm, grid, opts), carrier_hz, sigma_s, sample_period_s, n_samples};
}

namespace {

double overlap(double a_lo, double a_hi, double b_lo, double b_hi) {
    return std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
}

}  // namespace

SecrecyResult ran_secrecy(const SecurityScenario& s, const AbsorptionSpectrum& spectrum, const RanConfig& ran) {
    auto result = baseline_secrecy(s, spectrum);
    if (s.an_power_w == 0.0) return result;
    if (!(ran.guard_s >= 0.0) || !(ran.symbol_period_s > 0.0) || !(ran.self_loop_m > 0.0))
        throw DomainError("RAN: guard, symbol period and self-loop distance must be positive");

    const double w_info_b = ran.info.envelope_width_s(s.d_b_m);
    const double w_si = ran.an.envelope_width_s(ran.self_loop_m);
    if (w_info_b + w_si + 2.0 * ran.guard_s > ran.symbol_period_s) {
        result.feasible = false;
        result.secrecy_rate = 0.0;
        return result;
    }
    const double delta = 0.5 * w_info_b + 0.5 * w_si + ran.guard_s;

    const double x = std::max(std::abs(s.d_e_m - s.d_b_m), ran.self_loop_m);
    const double w_info_e = ran.info.envelope_width_s(s.d_e_m);
    const double w_an = ran.an.envelope_width_s(x);
    double covered = 0.0;
    for (double centre : {delta, delta - ran.symbol_period_s})
        covered += overlap(-0.5 * w_info_e, 0.5 * w_info_e, centre - 0.5 * w_an, centre + 0.5 * w_an);
    const double rho = std::min(1.0, covered / w_info_e);
    result.an_overlap = rho;
    if (rho == 0.0) return result;

    const double an_rx = s.an_power_w * std::pow(10.0, (ran.an_gain_tx_db + ran.an_gain_rx_db) / 10.0) /
                         std::pow(10.0, spreading_loss_db(ran.an.carrier_hz, x) / 10.0) *
                         ran.an.energy_transmission(x);
    const auto e = budget(s, s.d_e_m, s.carrier_hz, spectrum.k_at(s.carrier_hz));
    const double sinr_e = e.received_power_w / (e.thermal_noise_w + e.absorption_noise_w + rho * an_rx);
    auto r = from_snrs(s, result.snr_b, sinr_e, s.carrier_hz);
    r.an_overlap = rho;
    return r;
}

std::vector<SweepRow> sweep_eavesdropper(const SecurityScenario& base, std::span<const double> d_e_values,
                                         std::span<const Scheme> schemes, const AbsorptionSpectrum& spectrum,
                                         const RanConfig* ran, unsigned threads) {
    for (double d : d_e_values)
        if (!(d > 0.0)) throw DomainError("sweep: eavesdropper distances must be positive");
    for (Scheme sc : schemes)
        if (sc == Scheme::Ran && ran == nullptr) throw DomainError("sweep: RAN requested without a RAN configuration");

    std::vector<SweepRow> rows;
    for (double d : d_e_values)
        for (Scheme sc : schemes) rows.push_back({sc, d, {}});

    auto run = [&](std::size_t i) {
        SecurityScenario s = base;
        s.d_e_m = rows[i].d_e_m;
        switch (rows[i].scheme) {
        case Scheme::Baseline:
            rows[i].result = baseline_secrecy(s, spectrum);
            break;
        case Scheme::Tan:
            rows[i].result = tan_secrecy(s, spectrum);
            break;
        case Scheme::Apm:
            rows[i].result = apm_select_frequency(spectrum, s);
            break;
        case Scheme::Ran:
            rows[i].result = ran_secrecy(s, spectrum, *ran);
            break;
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || rows.size() < 2) {
        for (std::size_t i = 0; i < rows.size(); ++i) run(i);
        return rows;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < rows.size(); i += threads) run(i);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "scheme,d_e_m,c_b,c_e,secrecy_bps_hz,covert,chosen_f_hz\n";
    for (const auto& r : rows) {
        out << scheme_name(r.scheme) << ',' << format_double(r.d_e_m) << ',' << format_double(r.result.c_b) << ','
            << format_double(r.result.c_e) << ',' << format_double(r.result.secrecy_rate) << ','
            << (r.result.covert ? "true" : "false") << ',' << format_double(r.result.chosen_frequency_hz) << '\n';
    }
}

}  // namespace thzmol
