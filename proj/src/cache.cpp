#include "toric/cache.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace toric {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("TORIC_CACHE_DIR"); env && *env) return env;
    return ".toric-cache";
}

Cache::Cache(std::filesystem::path dir, std::string version, std::ostream* warnings)
    : dir_(std::move(dir)), version_(std::move(version)), warnings_(warnings) {}

std::filesystem::path Cache::entry_path(const std::string& key) const { return dir_ / (sha256_hex(key) + ".json"); }

CacheResult Cache::get_or_compute(const std::string& key, const std::function<std::string()>& thunk) {
    using nlohmann::json;
    const auto path = entry_path(key);
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            const json entry = json::parse(buf.str());
            if (entry.at("key").get<std::string>() != key) throw std::runtime_error("key mismatch");
            if (entry.at("version").get<std::string>() == version_)
                return CacheResult{entry.at("payload").get<std::string>(), true};
        } catch (const std::exception& e) {
            if (warnings_) *warnings_ << "warning: corrupt cache entry " << path.string() << " (" << e.what()
                                      << "), recomputing\n";
        }
    }

    CacheResult result{thunk(), false};
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        if (warnings_) *warnings_ << "warning: cache directory " << dir_.string() << " not writable\n";
        return result;
    }
    const json entry{{"key", key}, {"version", version_}, {"payload", result.payload}};
    std::random_device rd;
    const auto tmp = dir_ / (path.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary);
        out << entry.dump();
        if (!out) {
            if (warnings_) *warnings_ << "warning: cannot write cache entry " << tmp.string() << "\n";
            std::filesystem::remove(tmp, ec);
            return result;
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        if (warnings_) *warnings_ << "warning: cannot publish cache entry " << path.string() << "\n";
    }
    return result;
}

}  // namespace toric
