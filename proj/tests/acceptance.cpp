// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include "support.hpp"

#include "../src/cli/commands.hpp"
#include "../src/cli/config.hpp"

#include "thzmol/absorption.hpp"
#include "thzmol/channel.hpp"
#include "thzmol/nano.hpp"
#include "thzmol/security.hpp"
#include "thzmol/windows.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

using namespace thzmol;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome altitude_ordering() {
    const auto t0 = Clock::now();
    const auto profile = standard_profile();
    const FrequencyGrid grid(1e11, 2e12, 10000);
    std::vector<AbsorptionSpectrum> s;
    for (double h : {0.0, 10.0, 20.0}) s.push_back(absorption_coefficient(test::builtin_catalog(), atmosphere_at(profile, h), grid));
    const double elapsed = seconds_since(t0);
    bool ok = elapsed < 30.0;
    double min_ratio = INFINITY;
    for (double f : {0.35e12, 0.41e12, 0.67e12, 0.85e12, 1.5e12}) {
        const double k0 = s[0].k_at(f), k10 = s[1].k_at(f), k20 = s[2].k_at(f);
        ok = ok && k0 > k10 && k10 > k20 && k0 / k10 >= 1e2;
        min_ratio = std::min(min_ratio, k0 / k10);
    }
    std::ostringstream d;
    d << "min k0/k10 " << min_ratio << ", 3x10^4 points in " << elapsed << " s";
    return {ok, d.str()};
}

Outcome water_dominance() {
    const auto s = absorption_coefficient(test::builtin_catalog(), test::standard_sea_level(), FrequencyGrid(1e11, 2e12, 10000));
    const auto h2o = s.k_species(Species::h2o());
    const auto o2 = s.k_species(Species::o2());
    const double ratio = *std::max_element(h2o.begin(), h2o.end()) / *std::max_element(o2.begin(), o2.end());
    std::ostringstream d;
    d << "max k_H2O / max k_O2 = " << ratio;
    return {ratio >= 1e4, d.str()};
}

Outcome product_law() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double k = test::log_uniform(rng, 1e-3, 1e4);
        const double d1 = test::log_uniform(rng, 1e-4, 10.0);
        const double d2 = test::log_uniform(rng, 1e-4, 10.0);
        const double sum = absorption_loss_db(k, d1 + d2);
        worst = std::max(worst, test::rel_diff(sum, absorption_loss_db(k, d1) + absorption_loss_db(k, d2)));
        const double t = transmittance(sum);
        const double tt = transmittance(absorption_loss_db(k, d1)) * transmittance(absorption_loss_db(k, d2));
        if (t > 1e-280) worst = std::max(worst, test::rel_diff(t, tt));
    }
    std::ostringstream d;
    d << "worst relative error " << worst;
    return {worst <= 1e-9, d.str()};
}

Outcome friis() {
    const double l = spreading_loss_db(300e9, 10.0);
    std::ostringstream d;
    d.precision(6);
    d << "L(300 GHz, 10 m) = " << std::fixed << l << " dB";
    return {std::abs(l - 101.99) <= 0.01, d.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream l(line);
        for (std::string c; std::getline(l, c, ',');) cells.push_back(c);
        rows.push_back(std::move(cells));
    }
    return rows;
}

Outcome secrecy_structure() {
    const auto t0 = Clock::now();
    const auto cfg = cli::resolve_config(nullptr, ".", {});
    const auto out = cli::run_command("secrecy-sweep", cfg);
    const double elapsed = seconds_since(t0);
    const auto rows = parse_csv(out.at("secrecy_sweep.csv"));

    std::map<std::string, std::map<double, double>> rate;
    for (std::size_t i = 1; i < rows.size(); ++i) rate[rows[i][0]][std::stod(rows[i][1])] = std::stod(rows[i][4]);

    bool a = rate["ran"].at(10.0) == 0.0;
    bool b = true;
    bool c = true;
    for (int d = 2; d <= 9; ++d) {
        a = a && rate["ran"].at(d) > 0.0;
        b = b && rate["apm"].at(d) == 0.0;
        c = c && rate["tan"].at(d) == 0.0;
    }
    for (int d = 15; d <= 50; d += 5) b = b && rate["apm"].at(d) > 0.0;
    double peak = 0.0;
    for (const auto& [d, r] : rate["ran"]) peak = std::max(peak, r);
    const bool bracket = peak >= 1.9 && peak <= 5.7;

    std::ostringstream detail;
    detail << "RAN " << (a ? "ok" : "bad") << ", APM " << (b ? "ok" : "bad") << ", TAN " << (c ? "ok" : "bad")
           << ", RAN peak " << peak << " bit/s/Hz, " << elapsed << " s";
    return {a && b && c && bracket && elapsed < 60.0, detail.str()};
}

Outcome tsook() {
    const double symmetric = optimize_source({2e-20, 1e-20, 0.0});
    bool ok = std::abs(symmetric - 0.5) <= 0.01;
    for (double ns : {0.1e-20, 0.5e-20, 1e-20, 2e-20, 5e-20}) ok = ok && optimize_source({2e-20, 1e-20, ns}) < 0.5;
    const TsOokRegime calibrated{2e-20, 1e-20, 1e-20, 100.0};
    const double p = optimize_source(calibrated);
    ok = ok && std::abs(p - 0.45) <= 0.05;
    const auto curve = capacity_curve(calibrated, 10001);
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].capacity_bit > curve[best].capacity_bit) best = i;
    const double gap = std::abs(curve[best].p_one - p);
    ok = ok && gap <= 1e-3;
    std::ostringstream d;
    d << "p*(N_s=0) = " << symmetric << ", p*(calibrated) = " << p << ", brute-force gap " << gap;
    return {ok, d.str()};
}

Outcome windows_subset() {
    const auto s = absorption_coefficient(test::builtin_catalog(), test::standard_sea_level(), FrequencyGrid(1e11, 2e12, 10000));
    std::vector<std::vector<SpectralWindow>> w;
    for (double d : {1.0, 10.0, 100.0, 1000.0}) w.push_back(find_windows(s, d));
    auto covered = [](const std::vector<SpectralWindow>& ws, double f) {
        for (const auto& x : ws)
            if (f >= x.f_low_hz && f <= x.f_high_hz) return true;
        return false;
    };
    std::size_t violations = 0;
    for (double f : s.frequencies())
        for (std::size_t i = 1; i < w.size(); ++i)
            if (covered(w[i], f) && !covered(w[i - 1], f)) ++violations;
    std::ostringstream d;
    d << "window counts";
    for (const auto& x : w) d << ' ' << x.size();
    d << ", violations " << violations;
    return {violations == 0, d.str()};
}

Outcome temporal_broadening() {
    const auto band = make_pulse_band(test::builtin_catalog(), test::standard_sea_level(), 8.8e11, 2e-12, 5e-14, 32768);
    const auto p = gaussian_pulse(band.carrier_hz, band.sigma_s, band.sample_period_s, band.n_samples);
    const auto& f = band.spectrum.frequencies();
    const auto zero = AbsorptionSpectrum::synthetic(f, std::vector<double>(f.size(), 0.0));
    const double w0 = rms_width(p);
    bool increasing = true;
    double previous = 0.0;
    double drift = 0.0;
    for (double d : {1.0, 5.0, 10.0, 20.0, 50.0}) {
        const double w = rms_width(propagate_pulse(p, channel_transfer_function(band.spectrum, d, false)));
        increasing = increasing && w > previous;
        previous = w;
        drift = std::max(drift, std::abs(rms_width(propagate_pulse(p, channel_transfer_function(zero, d, false))) / w0 - 1.0));
    }
    const double parseval = test::rel_diff(p.energy(), spectral_energy(p));
    std::ostringstream d;
    d << "width at 50 m " << previous / w0 << "x, flat-band drift " << drift << ", Parseval " << parseval;
    return {increasing && drift < 1e-3 && parseval <= 1e-9, d.str()};
}

Outcome toy_oracle() {
    const auto lines = test::toy_catalog();
    const auto atm = test::standard_sea_level();
    std::mt19937_64 rng(1009);
    std::vector<double> f;
    for (int i = 0; i < 10; ++i) f.push_back(test::uniform(rng, 1e11, 2e12));
    std::sort(f.begin(), f.end());
    AbsorptionOptions opt;
    opt.check_band_coverage = false;
    const auto s = absorption_coefficient(lines, atm, f, opt);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, test::rel_diff(s.k_total()[i],
                                               static_cast<double>(test::oracle_k_db_km(
                                                   lines, atm.pressure_atm(), atm.temperature_k(), atm.water_vapor_density(),
                                                   atm.oxygen_mixing_ratio(), f[i]))));
    std::ostringstream d;
    d << "worst relative error " << worst;
    return {worst <= 1e-9, d.str()};
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "thzmol_acceptance";
    fs::remove_all(dir);
    std::string first;
    bool ok = true;
    for (int run = 0; run < 2; ++run) {
        const auto r = test::run_cli("secrecy-sweep --no-cache --out '" + (dir / std::to_string(run)).string() + "'");
        ok = ok && r.exit_code == 0;
        std::ifstream in(dir / std::to_string(run) / "secrecy_sweep.csv", std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        if (run == 0)
            first = s.str();
        else
            ok = ok && !first.empty() && s.str() == first;
    }
    fs::remove_all(dir);
    return {ok, ok ? "identical bytes" : "runs differ or failed"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"altitude ordering", altitude_ordering},
        {"water vapour dominance", water_dominance},
        {"product law", product_law},
        {"Friis spot value", friis},
        {"secrecy sweep structure", secrecy_structure},
        {"TS-OOK source optimum", tsook},
        {"window subset", windows_subset},
        {"temporal broadening", temporal_broadening},
        {"toy catalog oracle", toy_oracle},
        {"secrecy sweep determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    return failures;
}
