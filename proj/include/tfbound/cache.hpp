#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tfbound {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Hex content hash of the parts, each length-prefixed so boundaries matter.
std::string cache_key(const std::vector<std::string>& parts);

/// Flat directory of text entries, one file per key. Every file starts with
/// a header line carrying the checksum of the body.
class ResultCache {
public:
    explicit ResultCache(std::string dir);  ///< empty dir disables the cache
    bool enabled() const { return !dir_.empty(); }
    /// Body of the entry, or nothing on a miss. A damaged entry is deleted
    /// and reported with CacheError.
    std::optional<std::string> load(const std::string& key) const;
    void store(const std::string& key, const std::string& body) const;
    std::string path_for(const std::string& key) const;

private:
    std::string dir_;
};

}  // namespace tfbound
