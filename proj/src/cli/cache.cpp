#include "cache.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thzmol::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

std::optional<OutputSet> OutputCache::lookup(const std::string& key) const {
    const fs::path dir = fs::path(root_) / key;
    const fs::path manifest = dir / "MANIFEST";
    if (!fs::exists(manifest)) return std::nullopt;
    OutputSet out;
    std::istringstream names(read_file(manifest));
    std::string name;
    while (std::getline(names, name)) {
        if (name.empty()) continue;
        if (!fs::exists(dir / name)) return std::nullopt;
        out[name] = read_file(dir / name);
    }
    return out;
}

void OutputCache::store(const std::string& key, const OutputSet& outputs) const {
    const fs::path dir = fs::path(root_) / key;
    fs::create_directories(dir);
    std::string manifest;
    for (const auto& [name, contents] : outputs) {
        std::ofstream(dir / name, std::ios::binary) << contents;
        manifest += name + "\n";
    }
    // Manifest last: an interrupted store is a miss, not a partial hit.
    std::ofstream(dir / "MANIFEST", std::ios::binary) << manifest;
}

}  // namespace thzmol::cli
