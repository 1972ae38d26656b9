#pragma once

// On-disk result cache. Entries are JSON files named by the SHA-256 of their
// key and written through a temporary file plus rename.

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>

namespace toric {

inline constexpr const char* kToolVersion = "toric-diag 1.0.0";

std::string sha256_hex(const std::string& data);

/// $TORIC_CACHE_DIR, or ".toric-cache".
std::filesystem::path default_cache_dir();

struct CacheResult {
    std::string payload;
    bool hit = false;
};

class Cache {
public:
    explicit Cache(std::filesystem::path dir, std::string version = kToolVersion, std::ostream* warnings = nullptr);

    /// Cached payload when present and of the current version; otherwise runs
    /// the thunk and stores its result. Corrupt entries are recomputed.
    CacheResult get_or_compute(const std::string& key, const std::function<std::string()>& thunk);

    std::filesystem::path entry_path(const std::string& key) const;

private:
    std::filesystem::path dir_;
    std::string version_;
    std::ostream* warnings_;
};

}  // namespace toric
