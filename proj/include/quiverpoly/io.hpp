#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quiverpoly/quiver.hpp"

namespace quiverpoly {

using Json = nlohmann::ordered_json;

/// Text format: one `tail -> head` per line, `#` comments, blank lines
/// ignored, optional `vertices: N` header. Without the header the vertex
/// count is the largest id + 1.
inline Quiver parse_quiver_text(const std::string& text) {
    std::optional<int> declared_vertices;
    std::vector<Arrow> arrows;
    int max_id = -1;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;  // blank
        if (first == "vertices:") {
            int n = 0;
            if (!(fields >> n) || n <= 0) {
                throw ParseError("line " + std::to_string(line_number) + ": bad vertex header");
            }
            declared_vertices = n;
            continue;
        }
        std::string arrow_token, head_token;
        if (!(fields >> arrow_token >> head_token) || arrow_token != "->") {
            throw ParseError("line " + std::to_string(line_number) +
                             ": expected `tail -> head`");
        }
        try {
            Arrow a{std::stoi(first), std::stoi(head_token)};
            if (a.tail < 0 || a.head < 0) throw std::invalid_argument("negative");
            max_id = std::max({max_id, a.tail, a.head});
            arrows.push_back(a);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_number) + ": bad vertex id");
        }
        std::string extra;
        if (fields >> extra) {
            throw ParseError("line " + std::to_string(line_number) + ": trailing tokens");
        }
    }
    int vertex_count = declared_vertices.value_or(max_id + 1);
    if (vertex_count <= 0) throw ParseError("quiver file declares no vertices");
    if (max_id >= vertex_count) {
        throw ParseError("arrow endpoint exceeds declared vertex count");
    }
    return Quiver(vertex_count, std::move(arrows));
}

inline std::string serialize_quiver_text(const Quiver& q) {
    std::ostringstream out;
    out << "vertices: " << q.vertex_count() << "\n";
    for (const Arrow& a : q.arrows()) {
        out << a.tail << " -> " << a.head << "\n";
    }
    return out.str();
}

inline Json quiver_to_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const Arrow& a : q.arrows()) arrows.push_back({a.tail, a.head});
    return Json{{"vertices", q.vertex_count()}, {"arrows", arrows}};
}

inline Quiver parse_quiver_json(const Json& j) {
    if (!j.contains("vertices") || !j.contains("arrows")) {
        throw ParseError("quiver JSON needs `vertices` and `arrows`");
    }
    std::vector<Arrow> arrows;
    for (const auto& pair : j.at("arrows")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("arrow entries are [tail, head]");
        arrows.push_back(Arrow{pair[0].get<int>(), pair[1].get<int>()});
    }
    try {
        return Quiver(j.at("vertices").get<int>(), std::move(arrows));
    } catch (const StructureError& e) {
        throw ParseError(std::string("quiver JSON invalid: ") + e.what());
    }
}

/// Exact rational as a [numerator, denominator] pair.
inline Json rational_to_json(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    return Json::array({num.str(), den.str()});
}

inline Json weight_to_json(const Weight& w) {
    Json out = Json::array();
    for (const Rational& v : w.values()) out.push_back(rational_to_json(v));
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct QuiverSource {
    Quiver quiver;
    std::string label;
    std::optional<std::pair<int, int>> bipartite;  // (p, q) for generated bipartite sources
    std::optional<std::vector<int>> multipartite;
};

inline std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> values;
    std::istringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            values.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw ParseError("bad " + what + " list: " + text);
        }
    }
    if (values.empty()) throw ParseError("empty " + what + " list");
    return values;
}

/// Source spec: `bipartite:p,q`, `multipartite:p1,p2,...`, or a path to a
/// quiver file (JSON when the content starts with `{`, text otherwise).
inline QuiverSource load_quiver_source(const std::string& spec) {
    if (spec.rfind("bipartite:", 0) == 0) {
        std::vector<int> parts = parse_int_list(spec.substr(10), "bipartite");
        if (parts.size() != 2) throw ParseError("bipartite wants exactly two part sizes");
        try {
            return QuiverSource{generate_bipartite(parts[0], parts[1]), spec,
                                std::make_pair(parts[0], parts[1]), std::nullopt};
        } catch (const StructureError& e) {
            throw ParseError(std::string("bad bipartite spec: ") + e.what());
        }
    }
    if (spec.rfind("multipartite:", 0) == 0) {
        std::vector<int> parts = parse_int_list(spec.substr(13), "multipartite");
        try {
            return QuiverSource{generate_multipartite(parts), spec, std::nullopt, parts};
        } catch (const StructureError& e) {
            throw ParseError(std::string("bad multipartite spec: ") + e.what());
        }
    }
    std::string content = read_file(spec);
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        Json j = Json::parse(content, nullptr, false);
        if (j.is_discarded()) throw ParseError("invalid JSON in " + spec);
        return QuiverSource{parse_quiver_json(j), spec, std::nullopt, std::nullopt};
    }
    return QuiverSource{parse_quiver_text(content), spec, std::nullopt, std::nullopt};
}

inline std::string matrix_to_csv(const std::vector<std::vector<int>>& rows) {
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ",";
            out << row[j];
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace quiverpoly
