#pragma once

#include <vector>

namespace thzmol {

/// Energy-detector abstraction of TS-OOK: Y|0 ~ N(0, N_t), Y|1 ~ N(sqrt(E1), N_t + N_s).
struct TsOokRegime {
    double e1;          // received pulse energy, J
    double n_t;         // thermal noise variance, J
    double n_s = 0.0;   // pulse-induced absorption noise variance, J
    double beta = 1.0;  // symbol period over pulse width

    /// Throws DomainError unless e1 > 0, n_t > 0, n_s >= 0, beta >= 1.
    void validate() const;
};

/// snr(1) = E1 / (N_t + N_s); snr(0) = 0.
double symbol_snr(const TsOokRegime& regime, int symbol);

inline constexpr double kCapacityTolerance = 1e-6;   // bit
inline constexpr double kSourceTolerance = 1e-4;     // on p_one

/// I(X;Y) in bit per symbol with P(X=1) = p_one, by adaptive Gauss-Kronrod quadrature.
double ts_ook_capacity(const TsOokRegime& regime, double p_one);

/// Golden-section maximiser of ts_ook_capacity over [0, 1].
double optimize_source(const TsOokRegime& regime);

struct CapacityPoint {
    double p_one;
    double capacity_bit;
};

/// Capacity on n evenly spaced p_one values in [0, 1].
std::vector<CapacityPoint> capacity_curve(const TsOokRegime& regime, std::size_t n_points = 101);

}  // namespace thzmol
