#pragma once

#include "thzmol/catalog.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace thzmol {

/// ITU-R P.676 Annex 1 spectroscopic coefficients.
struct ItuLineTables {
    struct OxygenLine {
        double f0_ghz;
        double a1, a2, a3, a4, a5, a6;
    };
    struct WaterLine {
        double f0_ghz;
        double b1, b2, b3, b4, b5, b6;
    };
    std::vector<OxygenLine> oxygen;
    std::vector<WaterLine> water;
};

/// Reads `data/itu_p676_lines.txt`: `#` comments, rows `W|O f0_ghz c1 .. c6`.
ItuLineTables parse_itu_tables(std::istream& in);
ItuLineTables load_itu_tables(const std::string& path);

struct ItuAttenuation {
    double oxygen_db_km;
    double water_db_km;
};

/// Line-sum specific attenuation, gamma = 0.1820 f sum(S_i F_i), without line
/// mixing and without the dry continuum.
ItuAttenuation itu_line_attenuation(const ItuLineTables& tables, const AtmosphereState& atm, double f_hz);

}  // namespace thzmol
