#include "salfuse/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "salfuse/error.hpp"

namespace salfuse {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw Error(Errc::BadInput,
                            "config line " + std::to_string(line_no) + ": unterminated section");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::BadInput,
                        "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw Error(Errc::BadInput, "config line " + std::to_string(line_no) + ": empty key");
        cfg.set(section.empty() ? key : section + "." + key, value);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadInput, "cannot open config: " + path);
    return parse(in);
}

void Config::serialize(std::ostream& out) const {
    std::string section;
    for (const auto& [key, value] : entries_) {
        const std::size_t dot = key.rfind('.');
        const std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
        const std::string leaf = dot == std::string::npos ? key : key.substr(dot + 1);
        if (sec != section) {
            out << '[' << sec << "]\n";
            section = sec;
        }
        out << leaf << " = " << value << '\n';
    }
}

bool Config::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> Config::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return std::nullopt;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

std::string Config::require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw Error(Errc::BadInput, "config: missing required key `" + key + "`");
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    char* end = nullptr;
    const double d = std::strtod(v->c_str(), &end);
    if (end != v->c_str() + v->size())
        throw Error(Errc::BadInput, "config: `" + key + "` is not a number");
    return d;
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    char* end = nullptr;
    const long d = std::strtol(v->c_str(), &end, 10);
    if (end != v->c_str() + v->size())
        throw Error(Errc::BadInput, "config: `" + key + "` is not an integer");
    return static_cast<int>(d);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    char* end = nullptr;
    const unsigned long long d = std::strtoull(v->c_str(), &end, 10);
    if (end != v->c_str() + v->size())
        throw Error(Errc::BadInput, "config: `" + key + "` is not an integer");
    return d;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw Error(Errc::BadInput, "config: `" + key + "` is not a boolean");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    std::vector<std::string> out;
    const auto v = get(key);
    if (!v || v->empty()) return out;
    std::string cur;
    for (char c : *v) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::pair<std::string, double>> Config::get_weighted_list(const std::string& key) const {
    std::vector<std::pair<std::string, double>> out;
    for (const std::string& item : get_list(key)) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw Error(Errc::BadInput, "config: `" + key + "` expects name:value pairs");
        const std::string name = trim(item.substr(0, colon));
        const std::string num = trim(item.substr(colon + 1));
        char* end = nullptr;
        const double d = std::strtod(num.c_str(), &end);
        if (name.empty() || end != num.c_str() + num.size())
            throw Error(Errc::BadInput, "config: `" + key + "` has a malformed pair `" + item + "`");
        out.emplace_back(name, d);
    }
    return out;
}

void Config::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
        if (k == key) {
            v = value;
            return;
        }
    entries_.emplace_back(key, value);
}

SceneGeometry geometry_from_config(const Config& config) {
    SceneGeometry g;
    g.width_px = config.get_int("geometry.width_px", 720);
    g.height_px = config.get_int("geometry.height_px", 576);
    g.width_deg = config.get_double("geometry.width_deg", 28.0);
    g.height_deg = config.get_double("geometry.height_deg", 22.5);
    g.fps = config.get_double("geometry.fps", 25.0);
    g.validate();
    return g;
}

}  // namespace salfuse
