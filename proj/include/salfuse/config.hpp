#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "salfuse/geometry.hpp"

namespace salfuse {

// Flat key=value file with [section] headers and `#` comments. Keys are
// addressed as "section.key"; entry order is preserved so a parse/serialize
// cycle is lossless.
class Config {
public:
    static Config parse(std::istream& in);
    static Config parse_file(const std::string& path);
    void serialize(std::ostream& out) const;

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated list; empty value -> empty list.
    std::vector<std::string> get_list(const std::string& key) const;
    // `name:value` pairs, comma-separated.
    std::vector<std::pair<std::string, double>> get_weighted_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    bool operator==(const Config&) const = default;

private:
    std::vector<std::pair<std::string, std::string>> entries_;  // ordered
};

// [geometry] section -> SceneGeometry; validates.
SceneGeometry geometry_from_config(const Config& config);

}  // namespace salfuse
