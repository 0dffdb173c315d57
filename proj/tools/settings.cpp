#include "settings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "pexgaf/error.hpp"

namespace pexgaf::cli {

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

} // namespace

Settings::Settings(std::vector<std::pair<std::string, std::string>> defaults)
    : entries_(std::move(defaults)) {}

void Settings::apply(const std::map<std::string, std::string>& values, bool strict) {
    for (const auto& [k, v] : values) {
        bool found = false;
        for (auto& e : entries_) {
            if (e.first == k) {
                e.second = v;
                found = true;
            }
        }
        if (!found && strict) throw ParseError("unknown setting '" + k + "'");
    }
}

bool Settings::has(const std::string& key) const {
    for (const auto& e : entries_) {
        if (e.first == key) return true;
    }
    return false;
}

const std::string& Settings::raw(const std::string& key) const {
    for (const auto& e : entries_) {
        if (e.first == key) return e.second;
    }
    throw ParseError("setting '" + key + "' is not defined for this command");
}

double parse_real(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "e") return std::numbers::e;
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
        throw ParseError("cannot parse " + what + " '" + text + "' as a number");
    }
    return v;
}

double Settings::get_double(const std::string& key) const { return parse_real(raw(key), key); }

std::int64_t Settings::get_int(const std::string& key) const {
    const std::string t = trim(raw(key));
    std::int64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
        throw ParseError("cannot parse " + key + " '" + t + "' as an integer");
    }
    return v;
}

std::uint64_t Settings::get_uint(const std::string& key) const {
    const std::int64_t v = get_int(key);
    if (v < 0) throw ParameterError(key + " must be nonnegative");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> Settings::get_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_real(item, key));
    }
    return out;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    int number = 0;
    while (std::getline(ss, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos) {
            throw ParseError("config line " + std::to_string(number) + ": expected 'key: value'");
        }
        std::string key = trim(t.substr(0, colon));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        out[key] = trim(t.substr(colon + 1));
    }
    return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace pexgaf::cli
