#pragma once

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace irkit {

// On-disk store of invariant records, one JSON file per key under a two-level
// hex directory. Writers go through a temporary file and a rename, so readers
// never see partial records; unreadable entries count as misses.
class InvariantCache {
public:
    explicit InvariantCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    static std::uint64_t fnv1a(const std::string& s)
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

    std::filesystem::path path_for(const std::string& key) const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
        std::string h(buf);
        return dir_ / h.substr(0, 2) / h.substr(2, 2) / (h + ".json");
    }

    std::optional<nlohmann::json> get(const std::string& key) const
    {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        try {
            auto j = nlohmann::json::parse(in);
            // Hash collisions and foreign files are misses.
            if (!j.is_object() || j.value("key", std::string()) != key || !j.contains("value")) return std::nullopt;
            ++hits_;
            return j.at("value");
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    bool put(const std::string& key, const nlohmann::json& value) const
    {
        std::error_code ec;
        auto p = path_for(key);
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) return false;
        std::ostringstream tag;
        tag << std::this_thread::get_id() << '.' << std::chrono::steady_clock::now().time_since_epoch().count();
        auto tmp = p;
        tmp += ".tmp." + tag.str();
        {
            std::ofstream out(tmp);
            if (!out) return false;
            out << nlohmann::json{{"key", key}, {"value", value}}.dump();
            if (!out) return false;
        }
        std::filesystem::rename(tmp, p, ec);
        if (ec) std::filesystem::remove(tmp, ec);
        return !ec;
    }

    struct Stats {
        std::size_t entries = 0;
        std::uintmax_t bytes = 0;
    };

    Stats stats() const
    {
        Stats s;
        std::error_code ec;
        if (!std::filesystem::exists(dir_, ec)) return s;
        for (auto it = std::filesystem::recursive_directory_iterator(dir_, ec);
             !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
            if (it->is_regular_file(ec) && it->path().extension() == ".json") {
                ++s.entries;
                s.bytes += it->file_size(ec);
            }
        }
        return s;
    }

    // Removes only files this cache could have written.
    std::size_t clear() const
    {
        std::size_t removed = 0;
        std::error_code ec;
        if (!std::filesystem::exists(dir_, ec)) return 0;
        std::vector<std::filesystem::path> files;
        for (auto it = std::filesystem::recursive_directory_iterator(dir_, ec);
             !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec))
            if (it->is_regular_file(ec) && it->path().filename().string().find(".json") != std::string::npos)
                files.push_back(it->path());
        for (const auto& f : files)
            if (std::filesystem::remove(f, ec)) ++removed;
        return removed;
    }

    std::size_t hits() const { return hits_; }

private:
    std::filesystem::path dir_;
    mutable std::atomic<std::size_t> hits_{0};
};

} // namespace irkit
