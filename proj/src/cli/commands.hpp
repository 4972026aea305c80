#pragma once

#include "cache.hpp"
#include "config.hpp"

#include <string>
#include <vector>

namespace thzmol::cli {

const std::vector<std::string>& command_names();

/// Computes a command's output files without touching the cache or the disk.
OutputSet run_command(const std::string& command, const RunConfig& config);

/// SHA-256 over the command, the resolved config (minus output location and cache
/// toggle) and the bytes of every data file the config points at.
std::string cache_key(const std::string& command, const RunConfig& config);

struct ExecutionReport {
    std::vector<std::string> written;
    bool cache_hit = false;
};

/// Runs a command through the cache and writes its files plus `resolved_config.json`
/// into the output directory.
ExecutionReport execute(const std::string& command, const RunConfig& config);

}  // namespace thzmol::cli
