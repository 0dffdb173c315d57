#pragma once

#include <string>
#include <utility>
#include <vector>

#include "record.hpp"
#include "settings.hpp"

namespace pexgaf::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Commands: "table", "measure", "varopt", "simulate hole|conditional|dominant",
/// "check density|intensity|stirling|tail|potential".
const std::vector<std::string>& command_names();

/// Every setting a command reads, with its default value.
std::vector<std::pair<std::string, std::string>> default_settings(const std::string& command);

struct CommandOutput {
    RunRecord record;
    std::string csv;  // table only
    bool check_passed = true;
};

/// Runs a command with fully resolved settings. Library errors propagate unchanged.
CommandOutput run_command(const std::string& command, const Settings& settings);

/// p,q,Z_p,regime rows; p = 1 is reported as "singular" with empty q and Z_p.
std::string table_csv(const std::vector<double>& p_list);

} // namespace pexgaf::cli
