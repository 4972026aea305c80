#include "config.hpp"

#include "thzmol/weather.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

namespace thzmol::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kDataDir = THZMOL_DATA_DIR;

json read_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + what + " '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(what + " '" + path + "': " + e.what());
    }
}

double parse_number(const std::string& text, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw UsageError("bad " + what + " '" + text + "'");
    return v;
}

void reject_unknown(const json& user, const json& defaults, const std::string& prefix) {
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string name = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!defaults.contains(it.key())) throw UsageError("config: unknown field '" + name + "'");
        const auto& d = defaults.at(it.key());
        if (d.is_object()) {
            if (!it.value().is_object()) throw UsageError("config: field '" + name + "' must be an object");
            reject_unknown(it.value(), d, name);
        }
    }
}

void resolve_path(json& j, const std::string& dotted, const std::string& base_dir) {
    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = dotted.find('.', start);
        const auto key = dotted.substr(start, dot - start);
        if (!node->contains(key)) return;
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    if (!node->is_string()) return;
    fs::path p = node->get<std::string>();
    if (p.is_relative() && !base_dir.empty()) *node = (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw UsageError("--grid: expected f_start:f_stop:n, got '" + text + "'");
    GridSpec g{};
    g.f_start_hz = parse_number(text.substr(0, a), "--grid f_start");
    g.f_stop_hz = parse_number(text.substr(a + 1, b - a - 1), "--grid f_stop");
    const double n = parse_number(text.substr(b + 1), "--grid n");
    if (!(n >= 2.0) || n != static_cast<double>(static_cast<std::size_t>(n)))
        throw UsageError("--grid: n must be an integer >= 2");
    g.n_points = static_cast<std::size_t>(n);
    return g;
}

const json& field(const json& root, const std::string& dotted) {
    const json* node = &root;
    std::size_t start = 0;
    while (true) {
        const auto dot = dotted.find('.', start);
        const auto key = dotted.substr(start, dot - start);
        if (!node->is_object() || !node->contains(key)) throw UsageError("config: missing field '" + dotted + "'");
        node = &node->at(key);
        if (dot == std::string::npos) return *node;
        start = dot + 1;
    }
}

double field_double(const json& root, const std::string& dotted) {
    const auto& v = field(root, dotted);
    if (!v.is_number()) throw UsageError("config: field '" + dotted + "' must be a number");
    return v.get<double>();
}

double field_positive(const json& root, const std::string& dotted) {
    const double v = field_double(root, dotted);
    if (!(v > 0.0)) throw UsageError("config: field '" + dotted + "' must be positive");
    return v;
}

std::size_t field_count(const json& root, const std::string& dotted) {
    const auto& v = field(root, dotted);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw UsageError("config: field '" + dotted + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::string field_string(const json& root, const std::string& dotted) {
    const auto& v = field(root, dotted);
    if (!v.is_string()) throw UsageError("config: field '" + dotted + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> field_doubles(const json& root, const std::string& dotted, bool non_empty) {
    const auto& v = field(root, dotted);
    if (!v.is_array()) throw UsageError("config: field '" + dotted + "' must be a list");
    if (non_empty && v.empty()) throw UsageError("config: field '" + dotted + "' must not be empty");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw UsageError("config: field '" + dotted + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<std::string> field_strings(const json& root, const std::string& dotted, bool non_empty) {
    const auto& v = field(root, dotted);
    if (!v.is_array()) throw UsageError("config: field '" + dotted + "' must be a list");
    if (non_empty && v.empty()) throw UsageError("config: field '" + dotted + "' must not be empty");
    std::vector<std::string> out;
    for (const auto& x : v) {
        if (!x.is_string()) throw UsageError("config: field '" + dotted + "' must hold strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

json default_config_json() {
    auto calibration = read_json_file(kDataDir + "/calibration.json", "calibration profile");
    const auto weather = read_json_file(kDataDir + "/weather.json", "weather model");
    const StandardProfileParams p;

    json j;
    j["catalog"] = {{"path", kDataDir + "/lines_builtin.txt"}, {"format", "builtin"}};
    j["absorption"] = {{"mode", "line-by-line"},
                       {"itu_tables", kDataDir + "/itu_p676_lines.txt"},
                       {"cutoff_hz", 750e9},
                       {"threads", 0}};
    j["grid"] = {{"f_start_hz", 1e11}, {"f_stop_hz", 2e12}, {"n_points", 10000}};
    j["profile"] = {{"sea_level_pressure_atm", p.sea_level_pressure_atm},
                    {"sea_level_temperature_k", p.sea_level_temperature_k},
                    {"sea_level_vapor_density", p.sea_level_vapor_density},
                    {"pressure_scale_height_km", p.pressure_scale_height_km},
                    {"vapor_scale_height_km", p.vapor_scale_height_km},
                    {"lapse_rate_k_per_km", p.lapse_rate_k_per_km},
                    {"tropopause_km", p.tropopause_km},
                    {"vapor_taper_start_km", p.vapor_taper_start_km},
                    {"vapor_taper_end_km", p.vapor_taper_end_km},
                    {"top_km", p.top_km},
                    {"step_km", p.step_km}};
    j["altitudes_km"] = {0.0, 10.0, 20.0};
    j["loss"] = {{"distances_m", {1.0, 10.0, 100.0, 1000.0}},
                 {"carrier_hz", 3e11},
                 {"tx_altitude_km", 0.0},
                 {"rx_altitude_km", 0.0},
                 {"gain_tx_db", 20.0},
                 {"gain_rx_db", 20.0},
                 {"bandwidth_hz", 1e10},
                 {"tx_power_w", 1e-3},
                 {"weather", "clear"},
                 {"n_segments", 64}};
    j["windows"] = {{"distances_m", {1.0, 10.0, 100.0, 1000.0}},
                    {"threshold_db", 10.0},
                    {"min_bandwidth_hz", 1e9},
                    {"altitude_km", 0.0}};
    j["weather"] = {{"path", kDataDir + "/weather.json"}, {"conditions", weather.at("scenarios")}};
    j["atmosphere"] = calibration.at("atmosphere");
    j["security"] = calibration.at("security");
    j["ran"] = calibration.at("ran");
    j["tsook"] = calibration.at("tsook");
    j["tsook"]["n_points"] = 101;
    j["output"] = {{"dir", "out"}, {"svg", false}, {"cache", true}};
    return j;
}

RunConfig resolve_config(const json& user, const std::string& base_dir, const Overrides& ov) {
    json merged = default_config_json();
    if (!user.is_null()) {
        if (!user.is_object()) throw UsageError("config: top level must be an object");
        reject_unknown(user, merged, "");
        json resolved_user = user;
        for (const char* key : {"catalog.path", "absorption.itu_tables", "weather.path", "output.dir"})
            resolve_path(resolved_user, key, base_dir);
        merged.merge_patch(resolved_user);
    }
    if (!ov.out_dir.empty()) merged["output"]["dir"] = ov.out_dir;
    if (ov.svg) merged["output"]["svg"] = true;
    if (ov.no_cache) merged["output"]["cache"] = false;
    if (!ov.grid.empty()) {
        const auto g = parse_grid_spec(ov.grid);
        merged["grid"] = {{"f_start_hz", g.f_start_hz}, {"f_stop_hz", g.f_stop_hz}, {"n_points", g.n_points}};
    }

    RunConfig c;
    c.json = merged;
    c.catalog_path = field_string(merged, "catalog.path");
    const auto fmt = field_string(merged, "catalog.format");
    if (fmt == "builtin")
        c.catalog_format = CatalogFormat::BuiltinTable;
    else if (fmt == "hitran")
        c.catalog_format = CatalogFormat::HitranPar;
    else
        throw UsageError("config: field 'catalog.format' must be 'builtin' or 'hitran'");
    c.absorption_mode = field_string(merged, "absorption.mode");
    if (c.absorption_mode != "line-by-line" && c.absorption_mode != "itu-split")
        throw UsageError("config: field 'absorption.mode' must be 'line-by-line' or 'itu-split'");
    c.itu_tables_path = field_string(merged, "absorption.itu_tables");
    c.cutoff_hz = field_positive(merged, "absorption.cutoff_hz");
    c.threads = static_cast<unsigned>(field_count(merged, "absorption.threads"));

    c.grid.f_start_hz = field_positive(merged, "grid.f_start_hz");
    c.grid.f_stop_hz = field_positive(merged, "grid.f_stop_hz");
    c.grid.n_points = field_count(merged, "grid.n_points");

    auto& p = c.profile;
    p.sea_level_pressure_atm = field_positive(merged, "profile.sea_level_pressure_atm");
    p.sea_level_temperature_k = field_positive(merged, "profile.sea_level_temperature_k");
    p.sea_level_vapor_density = field_double(merged, "profile.sea_level_vapor_density");
    p.pressure_scale_height_km = field_positive(merged, "profile.pressure_scale_height_km");
    p.vapor_scale_height_km = field_positive(merged, "profile.vapor_scale_height_km");
    p.lapse_rate_k_per_km = field_double(merged, "profile.lapse_rate_k_per_km");
    p.tropopause_km = field_double(merged, "profile.tropopause_km");
    p.vapor_taper_start_km = field_double(merged, "profile.vapor_taper_start_km");
    p.vapor_taper_end_km = field_double(merged, "profile.vapor_taper_end_km");
    p.top_km = field_positive(merged, "profile.top_km");
    p.step_km = field_positive(merged, "profile.step_km");
    c.altitudes_km = field_doubles(merged, "altitudes_km");

    c.weather_path = field_string(merged, "weather.path");
    c.weather_conditions = field_strings(merged, "weather.conditions");
    for (const auto& name : c.weather_conditions) {
        try {
            parse_weather_condition(name);
        } catch (const std::exception& e) {
            throw UsageError("config: field 'weather.conditions': " + std::string(e.what()));
        }
    }

    c.out_dir = field_string(merged, "output.dir");
    const auto& svg = field(merged, "output.svg");
    const auto& cache = field(merged, "output.cache");
    if (!svg.is_boolean() || !cache.is_boolean())
        throw UsageError("config: fields 'output.svg' and 'output.cache' must be booleans");
    c.svg = svg.get<bool>();
    c.cache = cache.get<bool>();
    return c;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
    if (path.empty()) return resolve_config(json(), "", overrides);
    const auto user = read_json_file(path, "config");
    return resolve_config(user, fs::absolute(path).parent_path().string(), overrides);
}

}  // namespace thzmol::cli
