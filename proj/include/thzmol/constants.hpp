#pragma once

namespace thzmol {

/// Physical constants shared by every engine. One instance, fixed at compile time.
struct PhysicalConstants {
    double c = 299792458.0;          // m/s
    double h = 6.62607015e-34;       // J s
    double k_B = 1.380649e-23;       // J/K
    double T0 = 296.0;               // K, catalog reference temperature
    double p0_atm = 1.0;             // atm, catalog reference pressure

    double avogadro = 6.02214076e23;       // 1/mol
    double gas_constant = 8.314462618;     // J/(mol K)
    double water_molar_mass = 18.01528e-3; // kg/mol
    double pascal_per_atm = 101325.0;

    /// Second radiation constant h c / k_B in cm K.
    constexpr double c2() const { return h * c / k_B * 100.0; }
};

inline constexpr PhysicalConstants kConst{};

/// dB/km per unit of power absorption coefficient in 1/cm.
inline constexpr double kDbKmPerInvCm = 4.342944819032518e5;

}  // namespace thzmol
