#pragma once

#include "thzmol/absorption.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace thzmol {

struct SpectralWindow {
    double f_low_hz;
    double f_high_hz;
    double max_total_loss_db;   // largest k d inside the window
    double distance_m;
    double threshold_db;
    double mean_k_db_km;

    double bandwidth_hz() const { return f_high_hz - f_low_hz; }
    bool operator==(const SpectralWindow&) const = default;
};

inline constexpr double kDefaultWindowThresholdDb = 10.0;
inline constexpr double kDefaultMinWindowBandwidthHz = 1e9;

/// Maximal runs of grid points with k d <= threshold, sorted by frequency.
///
/// Edges sit on the outermost passing grid points. Single-point runs carry no
/// bandwidth and are discarded, as are runs narrower than `min_bandwidth_hz`.
std::vector<SpectralWindow> find_windows(const AbsorptionSpectrum& spectrum, double distance_m,
                                         double threshold_db = kDefaultWindowThresholdDb,
                                         double min_bandwidth_hz = kDefaultMinWindowBandwidthHz);

/// Window with the lowest mean k among those at least `required_bandwidth_hz` wide;
/// ties go to the lower frequency.
std::optional<SpectralWindow> adaptive_band(const AbsorptionSpectrum& spectrum, double distance_m,
                                            double required_bandwidth_hz,
                                            double threshold_db = kDefaultWindowThresholdDb,
                                            double min_bandwidth_hz = kDefaultMinWindowBandwidthHz);

/// Sum of window bandwidths.
double total_bandwidth_hz(std::span<const SpectralWindow> windows);

/// CSV `f_low_hz,f_high_hz,distance_m,threshold_db`.
void write_windows_csv(std::ostream& out, std::span<const SpectralWindow> windows, bool header = true);

}  // namespace thzmol
