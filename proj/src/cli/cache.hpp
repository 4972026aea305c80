#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace thzmol::cli {

/// Output file name -> contents.
using OutputSet = std::map<std::string, std::string>;

std::string sha256_hex(std::string_view data);

/// Content-addressed store of command outputs under `<root>/<key>/`.
class OutputCache {
public:
    explicit OutputCache(std::string root) : root_(std::move(root)) {}

    std::optional<OutputSet> lookup(const std::string& key) const;
    void store(const std::string& key, const OutputSet& outputs) const;

private:
    std::string root_;
};

}  // namespace thzmol::cli
