#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pexgaf::cli {

/// Ordered key/value tree. A node carries either a scalar value or children.
struct Node {
    std::string key;
    std::string value;
    std::vector<Node> children;
    bool section = false;

    bool operator==(const Node&) const = default;

    Node& add(std::string k, std::string v);
    Node& add_section(std::string k);
    const Node* find(std::string_view k) const;
};

/// Shortest round-trip decimal form, independent of the locale.
std::string format_number(double x);
std::string format_number(std::int64_t x);

/// "value [tag]" leaves; tags are closed_form, optimizer and "mc trials=<n>".
std::string with_provenance(double x, std::string_view tag);
std::string with_provenance(std::int64_t x, std::string_view tag);
std::string mc_tag(std::int64_t trials);

struct RunRecord {
    int schema_version = 1;
    std::string command;
    std::string artifact_version;
    std::string started_at;
    std::string finished_at;
    Node params{"params", "", {}, true};
    Node results{"results", "", {}, true};

    bool operator==(const RunRecord&) const = default;
};

std::string write_record(const RunRecord& record);
/// Serialized results section alone; identical across runs with the same inputs.
std::string results_payload(const RunRecord& record);
/// Throws ParseError on malformed input.
RunRecord parse_record(std::string_view text);

void save_record(const RunRecord& record, const std::string& path);
RunRecord load_record(const std::string& path);

std::string utc_timestamp();

} // namespace pexgaf::cli
