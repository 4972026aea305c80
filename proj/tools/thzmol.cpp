#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>

namespace {

// Errors are reported on one line so scripts can parse them.
int report(const std::string& command, const std::string& message, int code) {
    std::string line = message;
    std::replace(line.begin(), line.end(), '\n', ' ');
    std::cerr << "error: " << (command.empty() ? "thzmol" : command) << ": " << line << '\n';
    return code;
}

const std::map<std::string, std::string> kDescriptions{
    {"k-spectrum", "absorption coefficient spectra at configured altitudes"},
    {"loss", "link budgets over configured distances"},
    {"windows", "distance-dependent transmission windows"},
    {"weather", "weather attenuation spectra"},
    {"altitude-sweep", "absorption spectra across altitudes in one table"},
    {"secrecy-sweep", "secrecy rate versus eavesdropper distance per scheme"},
    {"tsook", "TS-OOK mutual information versus P(X=1)"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terahertz molecular absorption and link analysis"};
    app.require_subcommand(1);

    std::string config_path;
    thzmol::cli::Overrides overrides;
    for (const auto& name : thzmol::cli::command_names()) {
        auto* sub = app.add_subcommand(name, kDescriptions.at(name));
        sub->add_option("--config", config_path, "JSON config file; unset fields take defaults");
        sub->add_option("--out", overrides.out_dir, "output directory");
        sub->add_flag("--svg", overrides.svg, "also write an SVG plot");
        sub->add_flag("--no-cache", overrides.no_cache, "recompute and skip the result cache");
        sub->add_option("--grid", overrides.grid, "frequency grid f_start:f_stop:n in Hz");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("", e.what(), 2);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const auto config = thzmol::cli::load_config(config_path, overrides);
        const auto result = thzmol::cli::execute(command, config);
        for (const auto& path : result.written) std::cout << path << '\n';
        if (result.cache_hit) std::cout << "(from cache)\n";
    } catch (const thzmol::cli::UsageError& e) {
        return report(command, e.what(), 2);
    } catch (const std::exception& e) {
        return report(command, e.what(), 1);
    }
    return 0;
}
