#include "support.hpp"

#include "thzmol/absorption.hpp"
#include "thzmol/errors.hpp"
#include "thzmol/itu_lines.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace thzmol;

TEST_SUITE("absorption") {

TEST_CASE("frequency grid") {
    const FrequencyGrid g(1e11, 2e12, 10);
    CHECK(g.size() == 10);
    CHECK(g[0] == 1e11);
    CHECK(g[9] == 2e12);
    const auto p = g.points();
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
    CHECK_THROWS_AS(FrequencyGrid(0.0, 1e12, 10), DomainError);
    CHECK_THROWS_AS(FrequencyGrid(2e12, 1e12, 10), DomainError);
    CHECK_THROWS_AS(FrequencyGrid(1e11, 11e12, 10), DomainError);
    CHECK_THROWS_AS(FrequencyGrid(1e11, 1e12, 1), DomainError);
}

TEST_CASE("halfwidth identities") {
    SpectralLine l = test::toy_catalog()[0];
    const AtmosphereState ref(1.0, kConst.T0, 0.0);
    CHECK(line_halfwidth(l, ref) == doctest::Approx(l.air_halfwidth_ref).epsilon(1e-15));
    const AtmosphereState twice(2.0, kConst.T0, 0.0);
    CHECK(line_halfwidth(l, twice) == doctest::Approx(2.0 * l.air_halfwidth_ref).epsilon(1e-15));
    l.temperature_exponent = 0.7;
    const AtmosphereState cold(1.0, kConst.T0 / 2.0, 0.0);
    CHECK(line_halfwidth(l, cold) / l.air_halfwidth_ref == doctest::Approx(1.6245047927).epsilon(1e-9));
}

TEST_CASE("intensity temperature scaling") {
    SpectralLine l = test::toy_catalog()[0];
    CHECK(line_intensity(l, kConst.T0) == l.intensity_ref);
    l.lower_state_energy = 0.0;
    l.center_wavenumber = 1e5;
    CHECK(line_intensity(l, kConst.T0) == l.intensity_ref);

    l = test::toy_catalog()[0];
    l.lower_state_energy = 500.0;
    const double c2 = 1.438776877;  // cm K
    const double t = 250.0;
    const double expected = std::pow(296.0 / t, 1.5) * std::exp(-c2 * 500.0 * (1.0 / t - 1.0 / 296.0)) *
                            (1.0 - std::exp(-c2 * l.center_wavenumber / t)) /
                            (1.0 - std::exp(-c2 * l.center_wavenumber / 296.0));
    CHECK(line_intensity(l, t) / l.intensity_ref == doctest::Approx(expected).epsilon(1e-9));
    CHECK_THROWS_AS(line_intensity(l, 149.0), RangeError);
    CHECK_THROWS_AS(line_intensity(l, 351.0), RangeError);
}

TEST_CASE("no absorbers gives zero spectrum") {
    const AtmosphereState dry(1.0, 290.0, 0.0, 0.0);
    const auto s = absorption_coefficient(test::builtin_catalog(), dry, FrequencyGrid(1e11, 2e12, 1000));
    for (double k : s.k_total()) CHECK(k == 0.0);
}

TEST_CASE("toy catalog matches the hand-coded line sum") {
    std::mt19937_64 rng(2024);
    const auto lines = test::toy_catalog();
    for (int trial = 0; trial < 5; ++trial) {
        const double p = test::uniform(rng, 0.3, 1.2);
        const double t = test::uniform(rng, 220.0, 310.0);
        const double rho = test::uniform(rng, 0.0, 0.9 * saturation_vapor_density(t));
        const double x = test::uniform(rng, 0.0, 0.25);
        std::vector<double> f(10);
        for (double& fi : f) fi = test::uniform(rng, 1e11, 2e12);
        std::sort(f.begin(), f.end());
        const auto s = absorption_coefficient(lines, AtmosphereState(p, t, rho, x), std::span<const double>(f));
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double oracle = static_cast<double>(test::oracle_k_db_km(lines, p, t, rho, x, f[i]));
            CHECK(test::rel_diff(s.k_total()[i], oracle) <= 1e-9);
        }
    }
}

TEST_CASE("species sum and non-negativity") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = test::uniform(rng, 200.0, 320.0);
        const AtmosphereState atm(test::uniform(rng, 0.05, 1.1), t, test::uniform(rng, 0.0, saturation_vapor_density(t)));
        const auto s = absorption_coefficient(test::builtin_catalog(), atm, FrequencyGrid(1e11, 2e12, 400));
        const auto h2o = s.k_species(Species::h2o());
        const auto o2 = s.k_species(Species::o2());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s.k_total()[i] >= 0.0);
            CHECK(test::rel_diff(s.k_total()[i], h2o[i] + o2[i]) <= 1e-9);
        }
    }
}

TEST_CASE("linear in number density at fixed broadening") {
    // Equal air and self widths keep the half width independent of the vapour amount,
    // so only the number densities change.
    auto lines = test::toy_catalog();
    for (auto& l : test::builtin_catalog()) lines.push_back(l);
    for (auto& l : lines) l.self_halfwidth_ref = l.air_halfwidth_ref;
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const double rho = test::uniform(rng, 0.1, 6.0);
        const FrequencyGrid g(1e11, 2e12, 600);
        const auto one = absorption_coefficient(lines, AtmosphereState(1.0, 290.0, rho, 0.0), g);
        const auto two = absorption_coefficient(lines, AtmosphereState(1.0, 290.0, 2.0 * rho, 0.0), g);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(test::rel_diff(two.k_total()[i], 2.0 * one.k_total()[i]) <= 1e-6);

        const double x = test::uniform(rng, 0.01, 0.1);
        const auto o1 = absorption_coefficient(lines, AtmosphereState(1.0, 290.0, 0.0, x), g);
        const auto o2 = absorption_coefficient(lines, AtmosphereState(1.0, 290.0, 0.0, 2.0 * x), g);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(test::rel_diff(o2.k_total()[i], 2.0 * o1.k_total()[i]) <= 1e-6);
    }
}

TEST_CASE("grid refinement leaves shared points unchanged") {
    const auto atm = test::standard_sea_level();
    const FrequencyGrid coarse(1e11, 2e12, 1001);
    const FrequencyGrid fine(1e11, 2e12, 2001);
    const auto a = absorption_coefficient(test::builtin_catalog(), atm, coarse);
    const auto b = absorption_coefficient(test::builtin_catalog(), atm, fine);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        REQUIRE(test::rel_diff(a.frequencies()[i], b.frequencies()[2 * i]) < 1e-15);
        CHECK(test::rel_diff(a.k_total()[i], b.k_total()[2 * i]) < 1e-9);
    }
}

TEST_CASE("threaded evaluation is bitwise identical to serial") {
    const auto atm = test::standard_sea_level();
    const FrequencyGrid g(1e11, 2e12, 3001);
    AbsorptionOptions serial;
    const auto a = absorption_coefficient(test::builtin_catalog(), atm, g, serial);
    for (unsigned threads : {2u, 3u, 8u, 0u}) {
        AbsorptionOptions o;
        o.threads = threads;
        const auto b = absorption_coefficient(test::builtin_catalog(), atm, g, o);
        CHECK(a.k_total() == b.k_total());
        CHECK(a.k_by_species() == b.k_by_species());
    }
}

TEST_CASE("water vapour dominates at sea level") {
    const auto s = absorption_coefficient(test::builtin_catalog(), test::standard_sea_level(), FrequencyGrid(1e11, 2e12, 10000));
    const auto h2o = s.k_species(Species::h2o());
    const auto o2 = s.k_species(Species::o2());
    CHECK(*std::max_element(h2o.begin(), h2o.end()) / *std::max_element(o2.begin(), o2.end()) >= 1e4);
}

TEST_CASE("absorption falls with altitude at window frequencies") {
    const auto profile = standard_profile();
    std::vector<double> f{0.35e12, 0.41e12, 0.67e12, 0.85e12, 1.5e12};
    std::vector<double> k[3];
    int i = 0;
    for (double alt : {0.0, 10.0, 20.0})
        k[i++] = absorption_coefficient(test::builtin_catalog(), profile.at(alt), std::span<const double>(f)).k_total();
    for (std::size_t j = 0; j < f.size(); ++j) {
        CHECK(k[0][j] > k[1][j]);
        CHECK(k[1][j] > k[2][j]);
    }
}

TEST_CASE("guard band check") {
    const std::vector<SpectralLine> one{test::toy_catalog()[1]};  // 118.75 GHz
    const AtmosphereState atm(1.0, 290.0, 0.0);
    CHECK_THROWS_AS(absorption_coefficient(one, atm, FrequencyGrid(5e12, 6e12, 10)), NoLinesInBand);
    AbsorptionOptions o;
    o.check_band_coverage = false;
    const auto s = absorption_coefficient(one, atm, FrequencyGrid(5e12, 6e12, 10), o);
    for (double k : s.k_total()) CHECK(k == 0.0);
}

TEST_CASE("VVW shape is non-negative, peaked and cut off") {
    const double nu0 = 18.5;
    const double gamma = 0.1;
    const double cut = 25.0;
    CHECK(vvw_line_shape(nu0 + cut + 0.1, nu0, gamma, cut) == 0.0);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) CHECK(vvw_line_shape(test::uniform(rng, 0.1, 60.0), nu0, gamma, cut) >= 0.0);
    CHECK(vvw_line_shape(nu0, nu0, gamma, cut) > vvw_line_shape(nu0 + 1.0, nu0, gamma, cut));
}

TEST_CASE("spectrum container") {
    const auto s = AbsorptionSpectrum::synthetic({1e11, 2e11, 3e11}, {0.0, 10.0, 20.0});
    CHECK(s.k_at(1.5e11) == doctest::Approx(5.0));
    CHECK(s.k_at(3e11) == 20.0);
    CHECK_THROWS_AS(s.k_at(0.5e11), RangeError);
    CHECK_THROWS_AS(AbsorptionSpectrum::synthetic({1e11, 2e11}, {1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(AbsorptionSpectrum::synthetic({2e11, 1e11}, {1.0, 1.0}), DomainError);
    std::ostringstream csv;
    s.write_csv(csv);
    CHECK(csv.str().rfind("f_hz,k_total_db_km,k_h2o_db_km,k_o2_db_km\n1.00000000e+11,", 0) == 0);

    AbsorptionSpectrum::SpeciesMap alpha;
    alpha.emplace(Species::h2o(), std::vector<double>{1e-5});
    const auto conv = AbsorptionSpectrum::from_inverse_cm({1e12}, alpha);
    CHECK(conv.k_total()[0] == doctest::Approx(10.0 / std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("product law and transmittance") {
    CHECK(absorption_loss_db(100.0, 0.2) == doctest::Approx(20.0));
    CHECK(absorption_loss_db(5.0, 0.0) == 0.0);
    CHECK_THROWS_AS(absorption_loss_db(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(absorption_loss_db(1.0, -1.0), DomainError);
    CHECK(transmittance(0.0) == 1.0);
    CHECK(transmittance(10.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(transmittance(3.0) == doctest::Approx(0.501187234).epsilon(1e-9));
    CHECK_THROWS_AS(transmittance(-1.0), DomainError);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double k = test::log_uniform(rng, 1e-3, 1e4);
        const double d1 = test::uniform(rng, 0.0, 2.0);
        const double d2 = test::uniform(rng, 0.0, 2.0);
        CHECK(test::rel_diff(absorption_loss_db(k, d1 + d2), absorption_loss_db(k, d1) + absorption_loss_db(k, d2)) <= 1e-9);
        CHECK(test::rel_diff(transmittance(absorption_loss_db(k, d1 + d2)),
                             transmittance(absorption_loss_db(k, d1)) * transmittance(absorption_loss_db(k, d2))) <= 1e-9);
    }
}

TEST_CASE("ITU split mode") {
    const auto itu = load_itu_tables(test::kDataDir + "/itu_p676_lines.txt");
    CHECK(itu.oxygen.size() == 44);
    CHECK(itu.water.size() == 34);  // the 1780 GHz continuum pseudo-line is left out
    const auto atm = test::standard_sea_level();
    const FrequencyGrid g(1e11, 2e12, 1901);
    AbsorptionOptions o;
    o.mode = AbsorptionMode::ItuSplit;
    o.itu = &itu;
    const auto split = absorption_coefficient(test::builtin_catalog(), atm, g, o);
    const auto lbl = absorption_coefficient(test::builtin_catalog(), atm, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 1e12) {
            CHECK(split.k_total()[i] == lbl.k_total()[i]);
        } else {
            CHECK(split.k_total()[i] >= 0.0);
        }
    }
    // The two sources agree on the strong 557 GHz and 183 GHz water lines.
    for (double f : {183.31e9, 556.94e9}) {
        const double a = split.k_at(f);
        const double b = lbl.k_at(f);
        CHECK(test::rel_diff(a, b) < 0.1);
    }
    AbsorptionOptions missing;
    missing.mode = AbsorptionMode::ItuSplit;
    CHECK_THROWS_AS(absorption_coefficient(test::builtin_catalog(), atm, g, missing), DomainError);
}

}
