#include "thzmol/itu_lines.hpp"

#include "thzmol/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace thzmol {

ItuLineTables parse_itu_tables(std::istream& in) {
    ItuLineTables t;
    std::string record;
    std::size_t index = 0;
    while (std::getline(in, record)) {
        const auto first = record.find_first_not_of(" \t\r");
        if (first == std::string::npos || record[first] == '#') continue;
        std::istringstream row(record);
        std::string kind;
        double v[7];
        row >> kind;
        for (double& x : v) row >> x;
        if (!row || (kind != "W" && kind != "O")) {
            throw ParseError(ParseError::Kind::BadField, index, "kind", first,
                             "ITU table record " + std::to_string(index) + ": expected 'W|O f0 c1..c6'");
        }
        if (kind == "W")
            t.water.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
        else
            t.oxygen.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
        ++index;
    }
    if (t.water.empty() || t.oxygen.empty()) throw NoLinesInBand("ITU table: missing water or oxygen lines");
    return t;
}

ItuLineTables load_itu_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ITU line table '" + path + "'");
    return parse_itu_tables(in);
}

ItuAttenuation itu_line_attenuation(const ItuLineTables& tables, const AtmosphereState& atm, double f_hz) {
    const double f = f_hz * 1e-9;
    const double theta = 300.0 / atm.temperature_k();
    const double e = atm.vapor_partial_pressure_atm() * 1013.25;       // hPa
    const double p = atm.pressure_atm() * 1013.25 - e;                 // dry, hPa
    const double x_scale = atm.oxygen_mixing_ratio() / AtmosphereState::kDefaultOxygenMixing;

    auto shape = [f](double fi, double df) {
        return f / fi * (df / ((fi - f) * (fi - f) + df * df) + df / ((fi + f) * (fi + f) + df * df));
    };

    double sum_o = 0.0;
    for (const auto& l : tables.oxygen) {
        const double s = l.a1 * 1e-7 * p * theta * theta * theta * std::exp(l.a2 * (1.0 - theta));
        double df = l.a3 * 1e-4 * (p * std::pow(theta, 0.8 - l.a4) + 1.1 * e * theta);
        df = std::sqrt(df * df + 2.25e-6);
        sum_o += s * shape(l.f0_ghz, df);
    }
    double sum_w = 0.0;
    for (const auto& l : tables.water) {
        const double s = l.b1 * 1e-1 * e * std::pow(theta, 3.5) * std::exp(l.b2 * (1.0 - theta));
        double df = l.b3 * 1e-4 * (p * std::pow(theta, l.b4) + l.b5 * e * std::pow(theta, l.b6));
        df = 0.535 * df + std::sqrt(0.217 * df * df + 2.1316e-12 * l.f0_ghz * l.f0_ghz / theta);
        sum_w += s * shape(l.f0_ghz, df);
    }
    // The oxygen strengths assume the standard 0.209 mixing ratio.
    return {0.1820 * f * sum_o * x_scale, 0.1820 * f * sum_w};
}

}  // namespace thzmol
