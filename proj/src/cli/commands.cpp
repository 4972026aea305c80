#include "commands.hpp"

#include "svg.hpp"

#include "thzmol/absorption.hpp"
#include "thzmol/catalog.hpp"
#include "thzmol/channel.hpp"
#include "thzmol/csv.hpp"
#include "thzmol/errors.hpp"
#include "thzmol/itu_lines.hpp"
#include "thzmol/nano.hpp"
#include "thzmol/security.hpp"
#include "thzmol/weather.hpp"
#include "thzmol/windows.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace thzmol::cli {

namespace fs = std::filesystem;

namespace {

std::string short_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Catalog, ITU tables and engine options shared by the spectrum commands.
struct Engine {
    std::vector<SpectralLine> catalog;
    std::unique_ptr<ItuLineTables> itu;
    AbsorptionOptions options;

    explicit Engine(const RunConfig& c) : catalog(load_line_catalog(c.catalog_path, c.catalog_format)) {
        options.cutoff_hz = c.cutoff_hz;
        options.threads = c.threads;
        if (c.absorption_mode == "itu-split") {
            itu = std::make_unique<ItuLineTables>(load_itu_tables(c.itu_tables_path));
            options.mode = AbsorptionMode::ItuSplit;
            options.itu = itu.get();
        }
    }

    AbsorptionSpectrum spectrum(const AtmosphereState& atm, const FrequencyGrid& grid) const {
        return absorption_coefficient(catalog, atm, grid, options);
    }
};

FrequencyGrid make_grid(const GridSpec& g) { return FrequencyGrid(g.f_start_hz, g.f_stop_hz, g.n_points); }

std::string altitude_label(double a) { return short_number(a) + "km"; }

std::vector<AbsorptionSpectrum> altitude_spectra(const RunConfig& c) {
    const Engine engine(c);
    const auto profile = standard_profile(c.profile);
    const auto grid = make_grid(c.grid);
    std::vector<AbsorptionSpectrum> out;
    for (double a : c.altitudes_km) out.push_back(engine.spectrum(profile.at(a), grid));
    return out;
}

std::string spectra_svg(const RunConfig& c, const std::vector<AbsorptionSpectrum>& spectra, const std::string& title) {
    std::vector<Series> series;
    for (std::size_t i = 0; i < spectra.size(); ++i)
        series.push_back({short_number(c.altitudes_km[i]) + " km", spectra[i].frequencies(), spectra[i].k_total()});
    return render_line_plot({title, "frequency [THz]", "k [dB/km]", true, 1e-12}, series);
}

OutputSet cmd_k_spectrum(const RunConfig& c) {
    const auto spectra = altitude_spectra(c);
    OutputSet out;
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        std::ostringstream s;
        spectra[i].write_csv(s);
        out["k_spectrum_" + altitude_label(c.altitudes_km[i]) + ".csv"] = s.str();
    }
    if (c.svg) out["k_spectrum.svg"] = spectra_svg(c, spectra, "Molecular absorption coefficient");
    return out;
}

OutputSet cmd_altitude_sweep(const RunConfig& c) {
    const auto spectra = altitude_spectra(c);
    std::ostringstream s;
    s << "f_hz";
    for (double a : c.altitudes_km) s << ",k_" << altitude_label(a);
    s << '\n';
    const auto& f = spectra.front().frequencies();
    for (std::size_t i = 0; i < f.size(); ++i) {
        s << format_double(f[i]);
        for (const auto& sp : spectra) s << ',' << format_double(sp.k_total()[i]);
        s << '\n';
    }
    OutputSet out{{"altitude_sweep.csv", s.str()}};
    if (c.svg) out["altitude_sweep.svg"] = spectra_svg(c, spectra, "Absorption versus altitude");
    return out;
}

OutputSet cmd_loss(const RunConfig& c) {
    const auto& j = c.json;
    const Engine engine(c);
    const auto profile = standard_profile(c.profile);
    const auto spectrum_engine = make_line_by_line_engine(engine.catalog, engine.options);
    const auto n_segments = field_count(j, "loss.n_segments");
    if (n_segments < 1) throw UsageError("config: field 'loss.n_segments' must be at least 1");

    LinkGeometry g;
    g.carrier_hz = field_positive(j, "loss.carrier_hz");
    g.tx_altitude_km = field_double(j, "loss.tx_altitude_km");
    g.rx_altitude_km = field_double(j, "loss.rx_altitude_km");
    g.gain_tx_db = field_double(j, "loss.gain_tx_db");
    g.gain_rx_db = field_double(j, "loss.gain_rx_db");
    g.bandwidth_hz = field_positive(j, "loss.bandwidth_hz");
    g.tx_power_w = field_positive(j, "loss.tx_power_w");
    try {
        g.weather = parse_weather_condition(field_string(j, "loss.weather"));
    } catch (const DomainError& e) {
        throw UsageError("config: field 'loss.weather': " + std::string(e.what()));
    }
    std::unique_ptr<WeatherModel> weather;
    if (!std::holds_alternative<ClearSky>(g.weather))
        weather = std::make_unique<WeatherModel>(load_weather_model(c.weather_path));
    const double t_env = profile.at(g.tx_altitude_km).temperature_k();

    std::ostringstream s;
    s << "distance_m,f_hz," << LinkBudget::csv_header() << '\n';
    for (double d : field_doubles(j, "loss.distances_m")) {
        if (!(d > 0.0)) throw UsageError("config: field 'loss.distances_m' must hold positive distances");
        g.distance_m = d;
        const double loss_db = slant_absorption_db(profile, g, spectrum_engine, n_segments);
        const auto b = link_budget(g, loss_db / (d * 1e-3), t_env, weather.get());
        s << format_double(d) << ',' << format_double(g.carrier_hz) << ',';
        b.write_csv_row(s);
    }
    return {{"loss.csv", s.str()}};
}

OutputSet cmd_windows(const RunConfig& c) {
    const auto& j = c.json;
    const Engine engine(c);
    const auto profile = standard_profile(c.profile);
    const auto spectrum = engine.spectrum(profile.at(field_double(j, "windows.altitude_km")), make_grid(c.grid));
    const double threshold = field_positive(j, "windows.threshold_db");
    const double min_bw = field_double(j, "windows.min_bandwidth_hz");
    std::ostringstream s;
    bool header = true;
    for (double d : field_doubles(j, "windows.distances_m")) {
        if (!(d >= 0.0)) throw UsageError("config: field 'windows.distances_m' must hold non-negative distances");
        write_windows_csv(s, find_windows(spectrum, d, threshold, min_bw), header);
        header = false;
    }
    return {{"windows.csv", s.str()}};
}

OutputSet cmd_weather(const RunConfig& c) {
    const auto model = load_weather_model(c.weather_path);
    const auto f = make_grid(c.grid).points();
    std::vector<WeatherCondition> conditions;
    for (const auto& name : c.weather_conditions) conditions.push_back(parse_weather_condition(name));

    std::ostringstream s;
    s << "f_hz";
    for (const auto& name : c.weather_conditions) s << ',' << name;
    s << '\n';
    std::vector<Series> series;
    for (const auto& name : c.weather_conditions) series.push_back({name, f, {}});
    for (double fi : f) {
        s << format_double(fi);
        for (std::size_t k = 0; k < conditions.size(); ++k) {
            const double a = weather_attenuation_db_km(model, conditions[k], fi);
            s << ',' << format_double(a);
            series[k].y.push_back(a);
        }
        s << '\n';
    }
    OutputSet out{{"weather.csv", s.str()}};
    if (c.svg)
        out["weather.svg"] = render_line_plot({"Weather attenuation", "frequency [THz]", "attenuation [dB/km]", false, 1e-12}, series);
    return out;
}

SecurityScenario scenario_from(const nlohmann::json& j) {
    SecurityScenario s;
    s.d_b_m = field_positive(j, "security.d_b_m");
    s.tx_power_w = field_positive(j, "security.tx_power_w");
    s.gain_tx_db = field_double(j, "security.gain_tx_db");
    s.gain_rx_db = field_double(j, "security.gain_rx_db");
    s.bandwidth_hz = field_positive(j, "security.bandwidth_hz");
    s.carrier_hz = field_positive(j, "security.carrier_hz");
    s.noise_temperature_k = field_positive(j, "security.noise_temperature_k");
    s.snr_min = field_positive(j, "security.snr_min");
    s.snr_covert = field_double(j, "security.snr_covert");
    s.an_power_w = field_double(j, "security.an_power_w");
    s.tan_fraction = field_double(j, "security.tan_fraction");
    s.d_e_m = s.d_b_m;
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("config: section 'security': ") + e.what());
    }
    return s;
}

AtmosphereState atmosphere_from(const nlohmann::json& j) {
    return AtmosphereState(field_positive(j, "atmosphere.pressure_atm"), field_positive(j, "atmosphere.temperature_k"),
                           field_double(j, "atmosphere.water_vapor_density_gm3"),
                           field_double(j, "atmosphere.oxygen_mixing_ratio"));
}

OutputSet cmd_secrecy_sweep(const RunConfig& c) {
    const auto& j = c.json;
    const Engine engine(c);
    const auto atm = atmosphere_from(j);
    const auto base = scenario_from(j);
    const FrequencyGrid grid(field_positive(j, "security.grid.f_start_hz"), field_positive(j, "security.grid.f_stop_hz"),
                             field_count(j, "security.grid.n_points"));
    const auto spectrum = engine.spectrum(atm, grid);

    std::vector<Scheme> schemes;
    for (const auto& name : field_strings(j, "security.schemes")) {
        try {
            schemes.push_back(parse_scheme(name));
        } catch (const DomainError& e) {
            throw UsageError("config: field 'security.schemes': " + std::string(e.what()));
        }
    }
    const auto d_e = field_doubles(j, "security.d_e_m");

    std::unique_ptr<RanConfig> ran;
    if (std::find(schemes.begin(), schemes.end(), Scheme::Ran) != schemes.end()) {
        const double dt = field_positive(j, "ran.sample_period_s");
        const auto n = field_count(j, "ran.n_samples");
        const auto n_grid = field_count(j, "ran.n_grid");
        ran = std::make_unique<RanConfig>(RanConfig{
            make_pulse_band(engine.catalog, atm, base.carrier_hz, field_positive(j, "ran.info_sigma_s"), dt, n, n_grid),
            make_pulse_band(engine.catalog, atm, field_positive(j, "ran.an_carrier_hz"), field_positive(j, "ran.an_sigma_s"),
                            dt, n, n_grid),
            field_double(j, "ran.guard_s"), field_positive(j, "ran.symbol_period_s"), field_positive(j, "ran.self_loop_m"),
            field_double(j, "ran.an_gain_tx_db"), field_double(j, "ran.an_gain_rx_db")});
    }

    const auto rows = sweep_eavesdropper(base, d_e, schemes, spectrum, ran.get(), c.threads);
    for (const auto& r : rows) {
        if (r.scheme == Scheme::Ran && !r.result.feasible)
            throw std::runtime_error("RAN time separation infeasible: information and self-interference widths exceed "
                                     "the symbol period " + format_double(field_double(j, "ran.symbol_period_s")) + " s");
    }
    std::ostringstream s;
    write_sweep_csv(s, rows);
    OutputSet out{{"secrecy_sweep.csv", s.str()}};
    if (c.svg) {
        std::vector<Series> series;
        for (Scheme sc : schemes) {
            Series ser{scheme_name(sc), {}, {}};
            for (const auto& r : rows)
                if (r.scheme == sc) {
                    ser.x.push_back(r.d_e_m);
                    ser.y.push_back(r.result.secrecy_rate);
                }
            series.push_back(std::move(ser));
        }
        out["secrecy_sweep.svg"] =
            render_line_plot({"Secrecy rate versus eavesdropper distance", "d_E [m]", "secrecy rate [bit/s/Hz]", false, 1.0}, series);
    }
    return out;
}

OutputSet cmd_tsook(const RunConfig& c) {
    const auto& j = c.json;
    TsOokRegime r{field_positive(j, "tsook.e1_j"), field_positive(j, "tsook.n_t_j"), field_double(j, "tsook.n_s_j"),
                  field_positive(j, "tsook.beta")};
    try {
        r.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("config: section 'tsook': ") + e.what());
    }
    const auto curve = capacity_curve(r, field_count(j, "tsook.n_points"));
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].capacity_bit > curve[best].capacity_bit) best = i;

    std::ostringstream s;
    s << "p_one,capacity_bit,optimum\n";
    for (std::size_t i = 0; i < curve.size(); ++i)
        s << format_double(curve[i].p_one) << ',' << format_double(curve[i].capacity_bit) << ',' << (i == best ? "*" : "")
          << '\n';
    OutputSet out{{"tsook.csv", s.str()}};
    if (c.svg) {
        Series ser{"I(X;Y)", {}, {}};
        for (const auto& p : curve) {
            ser.x.push_back(p.p_one);
            ser.y.push_back(p.capacity_bit);
        }
        out["tsook.svg"] = render_line_plot({"TS-OOK mutual information", "P(X=1)", "bit/symbol", false, 1.0}, {ser});
    }
    return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"k-spectrum", "loss", "windows", "weather",
                                                "altitude-sweep", "secrecy-sweep", "tsook"};
    return names;
}

OutputSet run_command(const std::string& command, const RunConfig& config) {
    if (command == "k-spectrum") return cmd_k_spectrum(config);
    if (command == "loss") return cmd_loss(config);
    if (command == "windows") return cmd_windows(config);
    if (command == "weather") return cmd_weather(config);
    if (command == "altitude-sweep") return cmd_altitude_sweep(config);
    if (command == "secrecy-sweep") return cmd_secrecy_sweep(config);
    if (command == "tsook") return cmd_tsook(config);
    throw UsageError("unknown command '" + command + "'");
}

std::string cache_key(const std::string& command, const RunConfig& config) {
    auto j = config.json;
    j["output"].erase("dir");
    j["output"].erase("cache");
    std::string material = "thzmol-cache-v1\n" + command + "\n" + j.dump() + "\n";
    for (const auto& path : {config.catalog_path, config.itu_tables_path, config.weather_path}) {
        const auto bytes = read_bytes(path);
        material += std::to_string(bytes.size()) + "\n" + bytes;
    }
    return sha256_hex(material);
}

ExecutionReport execute(const std::string& command, const RunConfig& config) {
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    std::ofstream(dir / "resolved_config.json", std::ios::binary) << config.json.dump(2) << '\n';

    ExecutionReport report;
    OutputSet files;
    const OutputCache cache((dir / ".cache").string());
    std::string key;
    if (config.cache) {
        key = cache_key(command, config);
        if (auto hit = cache.lookup(key)) {
            files = std::move(*hit);
            report.cache_hit = true;
        }
    }
    if (!report.cache_hit) {
        files = run_command(command, config);
        if (config.cache) cache.store(key, files);
    }
    for (const auto& [name, contents] : files) {
        std::ofstream(dir / name, std::ios::binary) << contents;
        report.written.push_back((dir / name).string());
    }
    return report;
}

}  // namespace thzmol::cli
