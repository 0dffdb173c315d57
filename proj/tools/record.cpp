#include "record.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace pexgaf::cli {

Node& Node::add(std::string k, std::string v) {
    children.push_back(Node{std::move(k), std::move(v), {}, false});
    return children.back();
}

Node& Node::add_section(std::string k) {
    children.push_back(Node{std::move(k), "", {}, true});
    return children.back();
}

const Node* Node::find(std::string_view k) const {
    for (const auto& c : children) {
        if (c.key == k) return &c;
    }
    return nullptr;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string format_number(std::int64_t x) { return std::to_string(x); }

std::string with_provenance(double x, std::string_view tag) {
    return format_number(x) + " [" + std::string(tag) + "]";
}

std::string with_provenance(std::int64_t x, std::string_view tag) {
    return format_number(x) + " [" + std::string(tag) + "]";
}

std::string mc_tag(std::int64_t trials) { return "mc trials=" + std::to_string(trials); }

namespace {

void write_node(std::ostringstream& os, const Node& n, int depth) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    if (n.section) {
        os << indent << n.key << ":\n";
        for (const auto& c : n.children) write_node(os, c, depth + 1);
    } else {
        os << indent << n.key << ": " << n.value << "\n";
    }
}

struct Line {
    int depth;
    std::string key;
    std::string value;
    bool has_value;
    int number;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (raw.find_first_not_of(' ') == std::string_view::npos) continue;
        std::size_t spaces = raw.find_first_not_of(' ');
        if (spaces % 2 != 0) throw ParseError("line " + std::to_string(number) + ": odd indentation");
        raw.remove_prefix(spaces);
        const auto colon = raw.find(':');
        if (colon == std::string_view::npos || colon == 0) {
            throw ParseError("line " + std::to_string(number) + ": expected 'key: value'");
        }
        Line l{static_cast<int>(spaces / 2), std::string(raw.substr(0, colon)), "", false, number};
        std::string_view rest = raw.substr(colon + 1);
        if (!rest.empty()) {
            if (rest.front() != ' ') throw ParseError("line " + std::to_string(number) + ": missing space after ':'");
            l.value = std::string(rest.substr(1));
            l.has_value = true;
        }
        out.push_back(std::move(l));
    }
    return out;
}

std::size_t read_children(const std::vector<Line>& lines, std::size_t i, int depth, Node& parent) {
    while (i < lines.size() && lines[i].depth >= depth) {
        const Line& l = lines[i];
        if (l.depth > depth) throw ParseError("line " + std::to_string(l.number) + ": unexpected indentation");
        if (l.has_value) {
            parent.add(l.key, l.value);
            ++i;
        } else {
            Node& child = parent.add_section(l.key);
            i = read_children(lines, i + 1, depth + 1, child);
        }
    }
    return i;
}

} // namespace

std::string write_record(const RunRecord& r) {
    std::ostringstream os;
    os << "schema_version: " << r.schema_version << "\n";
    os << "command: " << r.command << "\n";
    os << "artifact_version: " << r.artifact_version << "\n";
    os << "started_at: " << r.started_at << "\n";
    os << "finished_at: " << r.finished_at << "\n";
    write_node(os, r.params, 0);
    write_node(os, r.results, 0);
    return os.str();
}

std::string results_payload(const RunRecord& r) {
    std::ostringstream os;
    write_node(os, r.results, 0);
    return os.str();
}

RunRecord parse_record(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0].key != "schema_version" || lines[0].depth != 0) {
        throw ParseError("record must start with schema_version");
    }
    Node root;
    read_children(lines, 0, 0, root);
    RunRecord r;
    auto scalar = [&](std::string_view k) -> std::string {
        const Node* n = root.find(k);
        if (n == nullptr || n->section) throw ParseError("missing field " + std::string(k));
        return n->value;
    };
    const std::string sv = scalar("schema_version");
    if (sv != "1") throw ParseError("unsupported schema_version " + sv);
    r.schema_version = 1;
    r.command = scalar("command");
    r.artifact_version = scalar("artifact_version");
    r.started_at = scalar("started_at");
    r.finished_at = scalar("finished_at");
    const Node* p = root.find("params");
    const Node* res = root.find("results");
    if (p == nullptr || !p->section || res == nullptr || !res->section) {
        throw ParseError("record needs params and results sections");
    }
    r.params = *p;
    r.results = *res;
    return r;
}

void save_record(const RunRecord& record, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << write_record(record);
    if (!f) throw IoError("write failed for " + path);
}

RunRecord load_record(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_record(ss.str());
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

} // namespace pexgaf::cli
