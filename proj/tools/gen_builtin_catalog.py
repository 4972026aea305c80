#!/usr/bin/env python3
"""Regenerate data/lines_builtin.txt.

Lines below 1.1 THz are converted from the ITU-R P.676 Annex 1 line
coefficients (water vapour b1..b6, oxygen a1..a4) into per-molecule
HITRAN-style parameters at 296 K. Lines above 1 THz are approximate
values for the strongest rotational H2O transitions; they are a
calibration set, not a spectroscopic reference.

Usage: gen_builtin_catalog.py > data/lines_builtin.txt
       gen_builtin_catalog.py --itu > data/itu_p676_lines.txt
"""
import math
import sys

C2 = 1.4387769          # cm K
T_ITU = 300.0
T_REF = 296.0
GHZ_PER_INV_CM = 29.9792458
HPA_PER_ATM = 1013.25
# ITU N'' strength (kHz) = ITU_TO_HITRAN * N[cm^-3] * S[cm/molecule] / f0[GHz]
ITU_TO_HITRAN = 4.342944819e5 * GHZ_PER_INV_CM / (math.pi * 0.1820)
KB = 1.380649e-23

# f0 [GHz], b1 [kHz/hPa], b2, b3 [1e-4 GHz/hPa], b4, b5, b6
WATER = [
    (22.235080, 0.1079, 2.144, 26.38, 0.76, 5.087, 1.00),
    (67.803960, 0.0011, 8.732, 28.58, 0.69, 4.930, 0.82),
    (119.995940, 0.0007, 8.353, 29.48, 0.70, 4.780, 0.79),
    (183.310087, 2.273, 0.668, 29.06, 0.77, 5.022, 0.85),
    (321.225630, 0.0470, 6.179, 24.04, 0.67, 4.398, 0.54),
    (325.152888, 1.514, 1.541, 28.23, 0.64, 4.893, 0.74),
    (336.227764, 0.0010, 9.825, 26.93, 0.69, 4.740, 0.61),
    (380.197353, 11.67, 1.048, 28.11, 0.54, 5.063, 0.89),
    (390.134508, 0.0045, 7.347, 21.52, 0.63, 4.810, 0.55),
    (437.346667, 0.0632, 5.048, 18.45, 0.60, 4.230, 0.48),
    (439.150807, 0.9098, 3.595, 20.07, 0.63, 4.483, 0.52),
    (443.018343, 0.1920, 5.048, 15.55, 0.60, 5.083, 0.50),
    (448.001085, 10.41, 1.405, 25.64, 0.66, 5.028, 0.67),
    (470.888999, 0.3254, 3.597, 21.34, 0.66, 4.506, 0.65),
    (474.689092, 1.260, 2.379, 23.20, 0.65, 4.804, 0.64),
    (488.490108, 0.2529, 2.852, 25.86, 0.69, 5.201, 0.72),
    (503.568532, 0.0372, 6.731, 16.12, 0.61, 3.980, 0.43),
    (504.482692, 0.0124, 6.731, 16.12, 0.61, 4.010, 0.45),
    (547.676440, 0.9785, 0.158, 26.00, 0.70, 4.500, 1.00),
    (552.020960, 0.1840, 0.158, 26.00, 0.70, 4.500, 1.00),
    (556.935985, 497.0, 0.159, 30.86, 0.69, 4.552, 1.00),
    (620.700807, 5.015, 2.391, 24.38, 0.71, 4.856, 0.68),
    (645.766085, 0.0067, 8.633, 18.00, 0.60, 4.000, 0.50),
    (658.005280, 0.2732, 7.816, 32.10, 0.69, 4.140, 1.00),
    (752.033113, 243.4, 0.396, 30.86, 0.68, 4.352, 0.84),
    (841.051732, 0.0134, 8.113, 15.90, 0.33, 5.760, 0.45),
    (859.965698, 0.1325, 7.989, 30.60, 0.68, 4.090, 0.84),
    (899.303175, 0.0547, 7.845, 29.85, 0.68, 4.530, 0.90),
    (902.611085, 0.0386, 8.360, 28.65, 0.70, 5.100, 0.95),
    (906.205957, 0.1836, 5.039, 24.08, 0.70, 4.700, 0.53),
    (916.171582, 8.400, 1.369, 26.73, 0.70, 5.150, 0.78),
    (923.112692, 0.0079, 8.039, 29.00, 0.70, 5.000, 0.80),
    (970.315022, 9.009, 1.700, 25.50, 0.64, 4.940, 0.67),
    (987.926764, 134.6, 0.878, 29.85, 0.68, 4.550, 0.90),
]

# f0 [GHz], a1 [kHz/hPa], a2, a3 [1e-4 GHz/hPa], a4
OXYGEN = [
    (50.474214, 0.975, 9.651, 6.690, 0.0),
    (50.987745, 2.529, 8.653, 7.170, 0.0),
    (51.503360, 6.193, 7.709, 7.640, 0.0),
    (52.021429, 14.320, 6.819, 8.110, 0.0),
    (52.542418, 31.240, 5.983, 8.580, 0.0),
    (53.066934, 64.290, 5.201, 9.060, 0.0),
    (53.595775, 124.600, 4.474, 9.550, 0.0),
    (54.130025, 227.300, 3.800, 9.960, 0.0),
    (54.671180, 389.700, 3.182, 10.370, 0.0),
    (55.221384, 627.100, 2.618, 10.890, 0.0),
    (55.783815, 945.300, 2.109, 11.340, 0.0),
    (56.264774, 543.400, 0.014, 17.030, 0.0),
    (56.363399, 1331.800, 1.654, 11.890, 0.0),
    (56.968211, 1746.600, 1.255, 12.230, 0.0),
    (57.612486, 2120.100, 0.910, 12.620, 0.0),
    (58.323877, 2363.700, 0.621, 12.950, 0.0),
    (58.446588, 1442.100, 0.083, 14.910, 0.0),
    (59.164204, 2379.900, 0.387, 13.530, 0.0),
    (59.590983, 2090.700, 0.207, 14.080, 0.0),
    (60.306056, 2103.400, 0.207, 14.150, 0.0),
    (60.434778, 2438.000, 0.386, 13.390, 0.0),
    (61.150562, 2479.500, 0.621, 12.920, 0.0),
    (61.800158, 2275.900, 0.910, 12.630, 0.0),
    (62.411220, 1915.400, 1.255, 12.170, 0.0),
    (62.486253, 1503.000, 0.083, 14.680, 0.0),
    (62.997984, 1490.200, 1.654, 11.740, 0.0),
    (63.568526, 1078.000, 2.108, 11.340, 0.0),
    (64.127775, 728.700, 2.617, 10.880, 0.0),
    (64.678910, 461.300, 3.181, 10.380, 0.0),
    (65.224078, 274.000, 3.800, 9.960, 0.0),
    (65.764779, 153.000, 4.473, 9.550, 0.0),
    (66.302096, 80.400, 5.200, 9.060, 0.0),
    (66.836834, 39.800, 5.982, 8.580, 0.0),
    (67.369601, 18.560, 6.818, 8.110, 0.0),
    (67.900868, 8.172, 7.708, 7.640, 0.0),
    (68.431006, 3.397, 8.652, 7.170, 0.0),
    (68.960312, 1.334, 9.650, 6.690, 0.0),
    (118.750334, 940.300, 0.010, 16.640, 0.0),
    (368.498246, 67.400, 0.048, 16.400, 0.0),
    (424.763020, 637.700, 0.044, 16.400, 0.0),
    (487.249273, 237.400, 0.049, 16.000, 0.0),
    (715.392902, 98.100, 0.145, 16.000, 0.0),
    (773.839490, 572.300, 0.141, 16.200, 0.0),
    (834.145546, 183.100, 0.145, 14.700, 0.0),
]

# Strong H2O rotational lines above 1 THz:
# f0 [GHz], S296 [cm/molecule], gamma_air, gamma_self [cm^-1/atm], n_air, E'' [cm^-1]
WATER_HIGH = [
    (1097.365, 2.3e-20, 0.092, 0.46, 0.70, 136.76),
    (1113.343, 4.5e-20, 0.103, 0.50, 0.73, 0.00),
    (1153.127, 1.1e-20, 0.093, 0.46, 0.70, 142.28),
    (1162.912, 3.0e-20, 0.088, 0.44, 0.68, 173.37),
    (1207.639, 6.0e-21, 0.085, 0.42, 0.66, 300.36),
    (1228.789, 2.7e-20, 0.094, 0.47, 0.70, 95.18),
    (1410.618, 2.5e-21, 0.080, 0.40, 0.62, 446.51),
    (1602.219, 9.0e-21, 0.085, 0.43, 0.66, 221.00),
    (1661.008, 3.3e-20, 0.090, 0.45, 0.68, 79.50),
    (1669.905, 1.6e-19, 0.100, 0.50, 0.75, 23.79),
    (1716.770, 6.5e-20, 0.097, 0.48, 0.74, 79.50),
    (1762.043, 1.4e-20, 0.090, 0.45, 0.70, 95.18),
    (1794.789, 6.0e-21, 0.085, 0.42, 0.65, 212.16),
    (1797.159, 1.8e-20, 0.088, 0.45, 0.68, 136.76),
    (1867.749, 1.0e-20, 0.085, 0.42, 0.66, 285.42),
    (1893.687, 6.0e-21, 0.083, 0.42, 0.65, 300.36),
    (1919.359, 2.2e-20, 0.088, 0.45, 0.68, 142.28),
    (2040.477, 1.2e-19, 0.098, 0.49, 0.74, 42.37),
    (2074.432, 3.5e-20, 0.095, 0.47, 0.72, 70.09),
    (2164.132, 3.8e-20, 0.092, 0.46, 0.70, 134.90),
    (2196.346, 4.5e-20, 0.092, 0.46, 0.70, 136.16),
    (2221.750, 1.3e-19, 0.098, 0.48, 0.74, 42.37),
    (2264.149, 4.0e-20, 0.092, 0.46, 0.70, 136.76),
]


def intensity_ratio(nu, e_lower, t, t0, m):
    """S(t)/S(t0) under the power-law partition approximation."""
    q = (t0 / t) ** m
    boltz = math.exp(-C2 * e_lower / t) / math.exp(-C2 * e_lower / t0)
    stim = (1 - math.exp(-C2 * nu / t)) / (1 - math.exp(-C2 * nu / t0))
    return q * boltz * stim


def n_per_hpa(t):
    return 100.0 / (KB * t) * 1e-6


def emit_itu_table():
    print("# ITU-R P.676 Annex 1 line coefficients used by the split (ITU) mode.")
    print("# Regenerate with tools/gen_builtin_catalog.py --itu.")
    print("#")
    print("# columns: kind f0_ghz c1 c2 c3 c4 c5 c6")
    print("#   W  water vapour: b1 [kHz/hPa] b2 b3 [1e-4 GHz/hPa] b4 b5 b6")
    print("#   O  oxygen:       a1 [kHz/hPa] a2 a3 [1e-4 GHz/hPa] a4 a5 a6 (a5, a6 unused)")
    for f0, a1, a2, a3, a4 in OXYGEN:
        print(f"O {f0:11.6f} {a1:9.3f} {a2:6.3f} {a3:7.3f} {a4:4.1f} 0 0")
    for f0, b1, b2, b3, b4, b5, b6 in WATER:
        print(f"W {f0:11.6f} {b1:9.4f} {b2:6.3f} {b3:7.2f} {b4:4.2f} {b5:6.3f} {b6:4.2f}")


if "--itu" in sys.argv[1:]:
    emit_itu_table()
    sys.exit(0)

rows = []
for f0, b1, b2, b3, b4, b5, _b6 in WATER:
    nu = f0 / GHZ_PER_INV_CM
    s300 = 0.1 * b1 * f0 / (ITU_TO_HITRAN * n_per_hpa(T_ITU))
    e_lower = b2 * T_ITU / C2
    s296 = s300 / intensity_ratio(nu, e_lower, T_ITU, T_REF, 1.5)
    g_air = b3 * 1e-4 * HPA_PER_ATM / GHZ_PER_INV_CM * (T_ITU / T_REF) ** b4
    rows.append(("H2O", nu, s296, g_air, g_air * b5, b4, e_lower, 0.0))

for f0, a1, a2, a3, a4 in OXYGEN:
    nu = f0 / GHZ_PER_INV_CM
    n_o2 = 0.209 * n_per_hpa(T_ITU)
    s300 = 1e-7 * a1 * f0 / (ITU_TO_HITRAN * n_o2)
    e_lower = a2 * T_ITU / C2
    s296 = s300 / intensity_ratio(nu, e_lower, T_ITU, T_REF, 1.0)
    n = 0.8 - a4
    g_air = a3 * 1e-4 * HPA_PER_ATM / GHZ_PER_INV_CM * (T_ITU / T_REF) ** n
    rows.append(("O2", nu, s296, g_air, 1.1 * g_air, n, e_lower, 0.0))

for f0, s, g_air, g_self, n, e_lower in WATER_HIGH:
    rows.append(("H2O", f0 / GHZ_PER_INV_CM, s, g_air, g_self, n, e_lower, 0.0))

rows.sort(key=lambda r: r[1])

print("# Built-in THz line table: strongest H2O and O2 lines, ~0.02-2.3 THz.")
print("# Lines below 1 THz are converted from ITU-R P.676 Annex 1 coefficients;")
print("# lines above 1 THz are approximate strong H2O rotational transitions.")
print("# Regenerate with tools/gen_builtin_catalog.py.")
print("#")
print("# columns: species nu_cm S_ref gamma_air gamma_self n_air E_lower delta_air")
print("#   nu_cm      line centre [cm^-1]")
print("#   S_ref      intensity at 296 K [cm^-1/(molecule cm^-2)]")
print("#   gamma_*    Lorentz HWHM at 296 K [cm^-1/atm]")
print("#   n_air      temperature exponent of gamma")
print("#   E_lower    lower-state energy [cm^-1]")
print("#   delta_air  pressure shift [cm^-1/atm]")
for sp, nu, s, ga, gs, n, el, da in rows:
    print(f"{sp:<4} {nu:12.6f} {s:.4e} {ga:.5f} {gs:.5f} {n:.3f} {el:10.4f} {da:.6f}")
