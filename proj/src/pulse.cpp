#include "thzmol/channel.hpp"

#include "thzmol/csv.hpp"
#include "thzmol/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <ostream>

namespace thzmol {

namespace {

// Planner calls are not thread safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Fft {
public:
    Fft(std::size_t n, int sign) : n_(n) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, sign, FFTW_ESTIMATE);
    }
    ~Fft() {
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan_);
        }
        fftw_free(buf_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_); }
    void run() { fftw_execute(plan_); }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    fftw_complex* buf_;
    fftw_plan plan_;
};

void check_pulse(const Pulse& p) {
    if (!(p.sample_period_s > 0.0)) throw DomainError("pulse: sample period must be positive");
    if (p.samples.empty() || !std::has_single_bit(p.samples.size()))
        throw DomainError("pulse: length must be a power of two");
}

// Baseband frequency of FFT bin k.
double bin_frequency(std::size_t k, std::size_t n, double dt) {
    const auto sk = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return sk / (static_cast<double>(n) * dt);
}

constexpr std::size_t kPadFactor = 4;
constexpr double kLeakTolerance = 1e-9;

}  // namespace

double Pulse::energy() const {
    double e = 0.0;
    for (const auto& x : samples) e += std::norm(x);
    return e * sample_period_s;
}

Pulse gaussian_pulse(double carrier_hz, double sigma_s, double sample_period_s, std::size_t n_samples) {
    if (!(sigma_s > 0.0)) throw DomainError("gaussian pulse: sigma must be positive");
    Pulse p{sample_period_s, carrier_hz, std::vector<std::complex<double>>(n_samples)};
    check_pulse(p);
    const double tc = 0.5 * static_cast<double>(n_samples) * sample_period_s;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) * sample_period_s - tc;
        p.samples[i] = std::exp(-t * t / (4.0 * sigma_s * sigma_s));
    }
    return p;
}

double spectral_energy(const Pulse& pulse) {
    check_pulse(pulse);
    const std::size_t n = pulse.samples.size();
    Fft fwd(n, FFTW_FORWARD);
    std::copy(pulse.samples.begin(), pulse.samples.end(), fwd.data());
    fwd.run();
    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k) e += std::norm(fwd.data()[k]);
    return e * pulse.sample_period_s / static_cast<double>(n);
}

Pulse propagate_pulse(const Pulse& pulse, const TransferFunction& h) {
    check_pulse(pulse);
    if (h.frequencies_hz.size() < 2 || h.frequencies_hz.size() != h.magnitude.size())
        throw GridMismatch("propagate pulse: transfer function needs at least two matching samples");
    if (std::all_of(h.magnitude.begin(), h.magnitude.end(), [](double m) { return m == 1.0; })) return pulse;

    const std::size_t n = pulse.samples.size();
    const std::size_t np = n * kPadFactor;
    const std::size_t offset = (np - n) / 2;
    const double dt = pulse.sample_period_s;

    Fft fwd(np, FFTW_FORWARD);
    std::fill(fwd.data(), fwd.data() + np, std::complex<double>{});
    std::copy(pulse.samples.begin(), pulse.samples.end(), fwd.data() + offset);
    fwd.run();

    const auto& fh = h.frequencies_hz;
    double total = 0.0;
    double outside = 0.0;
    Fft inv(np, FFTW_BACKWARD);
    for (std::size_t k = 0; k < np; ++k) {
        const std::complex<double> x = fwd.data()[k];
        const double f = pulse.carrier_hz + bin_frequency(k, np, dt);
        const double e = std::norm(x);
        total += e;
        double gain = 0.0;
        if (f >= fh.front() && f <= fh.back()) {
            auto it = std::lower_bound(fh.begin(), fh.end(), f);
            const auto i = static_cast<std::size_t>(it - fh.begin());
            if (fh[i] == f) {
                gain = h.magnitude[i];
            } else {
                const double t = (f - fh[i - 1]) / (fh[i] - fh[i - 1]);
                gain = h.magnitude[i - 1] + t * (h.magnitude[i] - h.magnitude[i - 1]);
            }
        } else {
            outside += e;
        }
        inv.data()[k] = x * gain;
    }
    if (total > 0.0 && outside > kLeakTolerance * total) {
        throw GridMismatch("propagate pulse: bandwidth overflow, " + format_double(outside / total) +
                           " of the pulse energy lies outside the transfer-function grid");
    }
    inv.run();

    Pulse out{dt, pulse.carrier_hz, std::vector<std::complex<double>>(n)};
    const double scale = 1.0 / static_cast<double>(np);
    double kept = 0.0;
    double all = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const auto v = inv.data()[i] * scale;
        const double e = std::norm(v);
        all += e;
        if (i >= offset && i < offset + n) {
            out.samples[i - offset] = v;
            kept += e;
        }
    }
    if (all > 0.0 && all - kept > kLeakTolerance * all)
        throw GridMismatch("propagate pulse: broadened pulse exceeds the time window");
    return out;
}

double rms_width(const Pulse& pulse) {
    double w = 0.0;
    double m1 = 0.0;
    for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
        const double e = std::norm(pulse.samples[i]);
        w += e;
        m1 += e * static_cast<double>(i);
    }
    if (!(w > 0.0)) throw DomainError("rms width: pulse has no energy");
    const double mean = m1 / w;
    double m2 = 0.0;
    for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
        const double d = static_cast<double>(i) - mean;
        m2 += std::norm(pulse.samples[i]) * d * d;
    }
    return std::sqrt(m2 / w) * pulse.sample_period_s;
}

void write_pulse_csv(std::ostream& out, const Pulse& pulse) {
    out << "t_s,re,im\n";
    for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
        out << format_double(static_cast<double>(i) * pulse.sample_period_s) << ','
            << format_double(pulse.samples[i].real()) << ',' << format_double(pulse.samples[i].imag()) << '\n';
    }
}

}  // namespace thzmol
