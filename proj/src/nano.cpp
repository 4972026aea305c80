#include "thzmol/nano.hpp"

#include "thzmol/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thzmol {

void TsOokRegime::validate() const {
    if (!(e1 > 0.0)) throw DomainError("TS-OOK: pulse energy must be positive");
    if (!(n_t > 0.0)) throw DomainError("TS-OOK: thermal noise must be positive");
    if (!(n_s >= 0.0)) throw DomainError("TS-OOK: self-induced noise must be non-negative");
    if (!(beta >= 1.0)) throw DomainError("TS-OOK: spreading factor must be at least 1");
}

double symbol_snr(const TsOokRegime& r, int symbol) {
    r.validate();
    if (symbol == 0) return 0.0;
    if (symbol == 1) return r.e1 / (r.n_t + r.n_s);
    throw DomainError("TS-OOK: symbol must be 0 or 1");
}

namespace {

double log_gauss(double y, double mean, double var) {
    const double d = y - mean;
    return -0.5 * d * d / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
}

}  // namespace

double ts_ook_capacity(const TsOokRegime& r, double p_one) {
    r.validate();
    if (!(p_one >= 0.0 && p_one <= 1.0)) throw DomainError("TS-OOK: p_one must lie in [0, 1]");
    if (p_one == 0.0 || p_one == 1.0) return 0.0;

    // Normalised output u = y / sqrt(N_t): u|0 ~ N(0, 1), u|1 ~ N(mu, v).
    const double mu = std::sqrt(r.e1 / r.n_t);
    const double v = (r.n_t + r.n_s) / r.n_t;
    const double p0 = 1.0 - p_one;
    const double lp0 = std::log(p0);
    const double lp1 = std::log(p_one);

    auto integrand = [&](double u) {
        const double l0 = log_gauss(u, 0.0, 1.0);
        const double l1 = log_gauss(u, mu, v);
        const double a = lp0 + l0;
        const double b = lp1 + l1;
        const double m = std::max(a, b);
        const double ly = m + std::log(std::exp(a - m) + std::exp(b - m));
        double acc = 0.0;
        if (a > -700.0) acc += std::exp(a) * (l0 - ly);
        if (b > -700.0) acc += std::exp(b) * (l1 - ly);
        return acc;
    };

    // Integrate over both Gaussians' +-12 sigma spans, split at the means.
    const double sd1 = std::sqrt(v);
    const double lo = std::min(-12.0, mu - 12.0 * sd1);
    const double hi = std::max(12.0, mu + 12.0 * sd1);
    std::vector<double> cuts{lo, 0.0, mu, hi};
    std::sort(cuts.begin(), cuts.end());
    double nats = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        nats += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 15,
                                                                               1e-12);
    }
    return std::max(0.0, nats / std::numbers::ln2);
}

double optimize_source(const TsOokRegime& r) {
    r.validate();
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0;
    double b = 1.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ts_ook_capacity(r, c);
    double fd = ts_ook_capacity(r, d);
    while (b - a > kSourceTolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ts_ook_capacity(r, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ts_ook_capacity(r, d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<CapacityPoint> capacity_curve(const TsOokRegime& r, std::size_t n_points) {
    if (n_points < 2) throw DomainError("TS-OOK: need at least two curve points");
    std::vector<CapacityPoint> out;
    out.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double p = i + 1 == n_points ? 1.0 : static_cast<double>(i) / static_cast<double>(n_points - 1);
        out.push_back({p, ts_ook_capacity(r, p)});
    }
    return out;
}

}  // namespace thzmol
