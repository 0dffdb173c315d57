#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pexgaf::cli {

/// Resolved command parameters, kept as strings in a fixed key order.
class Settings {
public:
    Settings() = default;
    explicit Settings(std::vector<std::pair<std::string, std::string>> defaults);

    /// Overrides known keys; unknown keys raise ParseError when `strict`.
    void apply(const std::map<std::string, std::string>& values, bool strict);

    bool has(const std::string& key) const;
    const std::string& raw(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    std::uint64_t get_uint(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Flat "key: value" file; '#' starts a comment line.
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(const std::string& text);

/// Parses a decimal number; "e" is accepted as Euler's number.
double parse_real(const std::string& text, const std::string& what);

} // namespace pexgaf::cli
