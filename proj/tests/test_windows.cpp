#include "support.hpp"

#include "thzmol/windows.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace thzmol;

namespace {

AbsorptionSpectrum two_peaks(std::size_t n = 1001) {
    const auto f = FrequencyGrid(1e12, 2e12, n).points();
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = (f[i] - 1.3e12) / 20e9;
        const double b = (f[i] - 1.7e12) / 35e9;
        k[i] = 1.0 + 400.0 * std::exp(-a * a) + 900.0 * std::exp(-b * b);
    }
    return AbsorptionSpectrum::synthetic(f, k);
}

/// Passing runs by direct scan: (first index, last index) of every run of length >= 2.
std::vector<std::pair<std::size_t, std::size_t>> scan_runs(const AbsorptionSpectrum& s, double d_m, double threshold) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    const auto& k = s.k_total();
    std::size_t i = 0;
    while (i < k.size()) {
        if (k[i] * d_m * 1e-3 > threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < k.size() && k[j + 1] * d_m * 1e-3 <= threshold) ++j;
        if (j > i) runs.emplace_back(i, j);
        i = j + 1;
    }
    return runs;
}

bool covered(const std::vector<SpectralWindow>& w, double f) {
    for (const auto& x : w)
        if (f >= x.f_low_hz && f <= x.f_high_hz) return true;
    return false;
}

AbsorptionSpectrum random_spectrum(std::mt19937_64& rng) {
    const std::size_t n = 200 + rng() % 800;
    const auto f = FrequencyGrid(1e11, 2e12, n).points();
    std::vector<double> k(n, test::log_uniform(rng, 0.01, 1.0));
    const int peaks = 1 + static_cast<int>(rng() % 8);
    for (int p = 0; p < peaks; ++p) {
        const double c = test::uniform(rng, 1e11, 2e12);
        const double w = test::log_uniform(rng, 1e9, 1e11);
        const double h = test::log_uniform(rng, 1.0, 1e5);
        for (std::size_t i = 0; i < n; ++i) k[i] += h / (1.0 + ((f[i] - c) / w) * ((f[i] - c) / w));
    }
    return AbsorptionSpectrum::synthetic(f, k);
}

}  // namespace

TEST_SUITE("windows") {

TEST_CASE("transparent medium or zero distance give one full window") {
    const auto f = FrequencyGrid(1e11, 2e12, 100).points();
    const auto zero = AbsorptionSpectrum::synthetic(f, std::vector<double>(f.size(), 0.0));
    auto w = find_windows(zero, 1000.0);
    REQUIRE(w.size() == 1);
    CHECK(w[0].f_low_hz == 1e11);
    CHECK(w[0].f_high_hz == 2e12);
    w = find_windows(two_peaks(), 0.0);
    REQUIRE(w.size() == 1);
    CHECK(w[0].bandwidth_hz() == doctest::Approx(1e12));
}

TEST_CASE("two peaks split the band into three windows at the crossings") {
    const auto s = two_peaks();
    const double d = 100.0;
    const double threshold = 10.0;
    const auto w = find_windows(s, d, threshold);
    const auto runs = scan_runs(s, d, threshold);
    REQUIRE(runs.size() == 3);
    REQUIRE(w.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(w[i].f_low_hz == s.frequencies()[runs[i].first]);
        CHECK(w[i].f_high_hz == s.frequencies()[runs[i].second]);
        CHECK(w[i].max_total_loss_db <= threshold);
        CHECK(w[i].distance_m == d);
    }
    for (std::size_t i = 1; i < 3; ++i) CHECK(w[i - 1].f_high_hz < w[i].f_low_hz);
}

TEST_CASE("narrow windows are dropped") {
    const auto s = two_peaks();
    const auto all = find_windows(s, 100.0, 10.0, 0.0);
    const auto wide = find_windows(s, 100.0, 10.0, 250e9);
    CHECK(wide.size() < all.size());
    for (const auto& w : wide) CHECK(w.bandwidth_hz() >= 250e9);
}

TEST_CASE("every grid point inside a window passes the threshold") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_spectrum(rng);
        const double d = test::log_uniform(rng, 1.0, 1e4);
        const double thr = test::uniform(rng, 1.0, 30.0);
        const auto w = find_windows(s, d, thr, 0.0);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (covered(w, s.frequencies()[i])) CHECK(s.k_total()[i] * d * 1e-3 <= thr);
        CHECK(w == find_windows(s, d, thr, 0.0));
    }
}

TEST_CASE("windows shrink with distance and grow with threshold") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_spectrum(rng);
        const double d1 = test::log_uniform(rng, 1.0, 1e3);
        const double d2 = d1 * test::uniform(rng, 1.0, 20.0);
        const double thr = test::uniform(rng, 1.0, 30.0);
        const auto near = find_windows(s, d1, thr);
        const auto far = find_windows(s, d2, thr);
        for (double f : s.frequencies())
            if (covered(far, f)) CHECK(covered(near, f));
        CHECK(total_bandwidth_hz(far) <= total_bandwidth_hz(near));
        CHECK(total_bandwidth_hz(find_windows(s, d1, 2.0 * thr)) >= total_bandwidth_hz(near));
    }
}

TEST_CASE("adaptive band") {
    const auto s = two_peaks();
    // Only the middle window is wider than 300 GHz.
    const auto single = adaptive_band(s, 100.0, 300e9, 10.0);
    REQUIRE(single.has_value());
    CHECK(single->f_low_hz > 1.3e12);
    CHECK(single->f_high_hz < 1.7e12);
    CHECK_FALSE(adaptive_band(s, 100.0, 2e12, 10.0).has_value());

    const auto w = find_windows(s, 100.0, 10.0);
    const auto best = adaptive_band(s, 100.0, 1e9, 10.0);
    REQUIRE(best.has_value());
    for (const auto& x : w) CHECK(best->mean_k_db_km <= x.mean_k_db_km);
}

TEST_CASE("adaptive band mean absorption does not rise with distance") {
    const auto s = absorption_coefficient(test::builtin_catalog(), test::standard_sea_level(), FrequencyGrid(1e11, 2e12, 10000));
    std::optional<SpectralWindow> previous;
    for (double d : {1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0}) {
        const auto w = adaptive_band(s, d, 10e9);
        if (!w) continue;
        if (previous) CHECK(w->mean_k_db_km <= previous->mean_k_db_km * (1.0 + 1e-9));
        previous = w;
    }
    CHECK(previous.has_value());
}

TEST_CASE("windows CSV") {
    std::ostringstream s;
    write_windows_csv(s, find_windows(two_peaks(), 100.0, 10.0));
    const std::string text = s.str();
    CHECK(text.rfind("f_low_hz,f_high_hz,distance_m,threshold_db\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

}
