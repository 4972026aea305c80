#pragma once

#include "thzmol/catalog.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace thzmol::cli {

/// Configuration or flag problem; reported as a usage error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double f_start_hz;
    double f_stop_hz;
    std::size_t n_points;
};

/// "f_start:f_stop:n", frequencies in Hz.
GridSpec parse_grid_spec(const std::string& text);

/// Flag values that win over the config file.
struct Overrides {
    std::string out_dir;
    std::string grid;
    bool svg = false;
    bool no_cache = false;
};

/// Fully resolved run configuration.
///
/// `json` holds every field with defaults materialised; it is what gets echoed and
/// hashed. The typed members are views of the same data.
struct RunConfig {
    nlohmann::json json;

    std::string catalog_path;
    CatalogFormat catalog_format;
    std::string absorption_mode;
    std::string itu_tables_path;
    double cutoff_hz;
    unsigned threads;
    GridSpec grid;
    StandardProfileParams profile;
    std::vector<double> altitudes_km;

    std::string weather_path;
    std::vector<std::string> weather_conditions;

    std::string out_dir;
    bool svg;
    bool cache;
};

/// Built-in defaults, including the checked-in calibration profile.
nlohmann::json default_config_json();

/// Merges `user` (may be null) over the defaults, applies overrides and validates.
/// Relative paths in `user` are resolved against `base_dir`. Throws UsageError naming
/// the offending field.
RunConfig resolve_config(const nlohmann::json& user, const std::string& base_dir, const Overrides& overrides);

/// Reads the JSON config file (empty path = defaults only).
RunConfig load_config(const std::string& path, const Overrides& overrides);

/// Typed access with field-named errors, e.g. field(cfg.json, "security.d_b_m").
const nlohmann::json& field(const nlohmann::json& root, const std::string& dotted);
double field_double(const nlohmann::json& root, const std::string& dotted);
double field_positive(const nlohmann::json& root, const std::string& dotted);
std::size_t field_count(const nlohmann::json& root, const std::string& dotted);
std::string field_string(const nlohmann::json& root, const std::string& dotted);
std::vector<double> field_doubles(const nlohmann::json& root, const std::string& dotted, bool non_empty = true);
std::vector<std::string> field_strings(const nlohmann::json& root, const std::string& dotted, bool non_empty = true);

}  // namespace thzmol::cli
