#include "thzmol/windows.hpp"

#include "thzmol/csv.hpp"
#include "thzmol/errors.hpp"

#include <algorithm>
#include <ostream>

namespace thzmol {

std::vector<SpectralWindow> find_windows(const AbsorptionSpectrum& spectrum, double distance_m,
                                         double threshold_db, double min_bandwidth_hz) {
    if (!(threshold_db > 0.0)) throw DomainError("find windows: threshold must be positive");
    if (!(distance_m >= 0.0)) throw DomainError("find windows: distance must be non-negative");
    const auto& f = spectrum.frequencies();
    const auto& k = spectrum.k_total();
    const double d_km = distance_m * 1e-3;

    std::vector<SpectralWindow> out;
    std::size_t i = 0;
    while (i < f.size()) {
        if (absorption_loss_db(k[i], d_km) > threshold_db) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        double worst = 0.0;
        double sum_k = 0.0;
        while (i < f.size()) {
            const double loss = absorption_loss_db(k[i], d_km);
            if (loss > threshold_db) break;
            worst = std::max(worst, loss);
            sum_k += k[i];
            ++i;
        }
        const std::size_t last = i - 1;
        if (last == start) continue;
        const double bw = f[last] - f[start];
        if (bw < min_bandwidth_hz) continue;
        out.push_back({f[start], f[last], worst, distance_m, threshold_db,
                       sum_k / static_cast<double>(last - start + 1)});
    }
    return out;
}

std::optional<SpectralWindow> adaptive_band(const AbsorptionSpectrum& spectrum, double distance_m,
                                            double required_bandwidth_hz, double threshold_db,
                                            double min_bandwidth_hz) {
    if (!(required_bandwidth_hz > 0.0)) throw DomainError("adaptive band: required bandwidth must be positive");
    std::optional<SpectralWindow> best;
    for (const auto& w : find_windows(spectrum, distance_m, threshold_db, min_bandwidth_hz)) {
        if (w.bandwidth_hz() < required_bandwidth_hz) continue;
        if (!best || w.mean_k_db_km < best->mean_k_db_km) best = w;
    }
    return best;
}

double total_bandwidth_hz(std::span<const SpectralWindow> windows) {
    double sum = 0.0;
    for (const auto& w : windows) sum += w.bandwidth_hz();
    return sum;
}

void write_windows_csv(std::ostream& out, std::span<const SpectralWindow> windows, bool header) {
    if (header) out << "f_low_hz,f_high_hz,distance_m,threshold_db\n";
    for (const auto& w : windows) {
        out << format_double(w.f_low_hz) << ',' << format_double(w.f_high_hz) << ','
            << format_double(w.distance_m) << ',' << format_double(w.threshold_db) << '\n';
    }
}

}  // namespace thzmol
