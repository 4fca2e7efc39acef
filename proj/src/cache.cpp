#include "tfbound/cache.hpp"

#include "tfbound/errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tfbound {

namespace fs = std::filesystem;

namespace {
constexpr std::string_view kMagic = "tfbound-cache-v1 ";

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}
}  // namespace

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string cache_key(const std::vector<std::string>& parts) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& p : parts) {
        h = fnv1a(std::to_string(p.size()) + ":", h);
        h = fnv1a(p, h);
    }
    return hex64(h);
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::string ResultCache::path_for(const std::string& key) const { return (fs::path(dir_) / (key + ".cache")).string(); }

std::optional<std::string> ResultCache::load(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    const auto path = path_for(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    in.close();
    const std::string all = ss.str();
    const auto nl = all.find('\n');
    const bool header_ok = nl != std::string::npos && all.compare(0, kMagic.size(), kMagic) == 0;
    if (header_ok) {
        const std::string sum = all.substr(kMagic.size(), nl - kMagic.size());
        std::string body = all.substr(nl + 1);
        if (sum == hex64(fnv1a(body))) return body;
    }
    std::error_code ec;
    fs::remove(path, ec);
    throw CacheError("cache entry " + path + " is corrupt and was removed; rerun the command");
}

void ResultCache::store(const std::string& key, const std::string& body) const {
    if (!enabled()) return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw CacheError("cannot create cache directory " + dir_ + ": " + ec.message());
    const auto path = path_for(key);
    const auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write cache entry " + tmp);
        out << kMagic << hex64(fnv1a(body)) << '\n' << body;
        if (!out) throw CacheError("cannot write cache entry " + tmp);
    }
    fs::rename(tmp, path, ec);
    if (ec) throw CacheError("cannot move cache entry into place: " + ec.message());
}

}  // namespace tfbound
