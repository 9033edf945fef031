#pragma once
// File formats: the instance file (parts with degree intervals), graph
// output as DOT or JSON, and check reports as JSON. Emission is
// deterministic; identical inputs yield byte-identical outputs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partite/core.hpp"

namespace partite {

struct ParseError : Error {
  ParseError(int line_arg, int column_arg, const std::string& msg)
      : Error(std::to_string(line_arg) + ":" + std::to_string(column_arg) +
              ": " + msg),
        line(line_arg),
        column(column_arg) {}
  int line;
  int column;
};

/// Parsed instance file: an optional name and the parts in the caller's
/// original order, every entry normalized to a [lo, hi] pair.
struct InstanceFile {
  std::optional<std::string> name;
  std::vector<std::vector<Interval>> parts;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, size_t offset) {
  int line = 1;
  int column = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline std::string trim(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace detail

/// Parses an instance file. The format is line-oriented: an optional
/// `name: <text>` line followed by `parts:` and a JSON-style array of parts,
/// which may span the rest of the file. Each part is an array of entries; an
/// entry is either a single nonnegative integer (an exact degree) or a
/// [lo, hi] pair.
inline InstanceFile parse_instance(const std::string& text) {
  InstanceFile file;
  size_t cursor = 0;
  while (cursor < text.size()) {
    size_t line_end = text.find('\n', cursor);
    if (line_end == std::string::npos) line_end = text.size();
    std::string line = text.substr(cursor, line_end - cursor);
    std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') {
      cursor = line_end + 1;
      continue;
    }
    if (trimmed.rfind("name:", 0) == 0) {
      if (file.name) {
        auto [l, c] = detail::line_column(text, cursor);
        throw ParseError(l, c, "duplicate name line");
      }
      file.name = detail::trim(trimmed.substr(5));
      cursor = line_end + 1;
      continue;
    }
    if (trimmed.rfind("parts:", 0) == 0) {
      size_t value_offset = cursor + line.find("parts:") + 6;
      std::string payload = text.substr(value_offset);
      nlohmann::json parsed;
      try {
        parsed = nlohmann::json::parse(payload);
      } catch (const nlohmann::json::parse_error& e) {
        size_t absolute = value_offset + (e.byte > 0 ? e.byte - 1 : 0);
        auto [l, c] = detail::line_column(text, absolute);
        throw ParseError(l, c, "invalid parts array");
      }
      auto [l, c] = detail::line_column(text, value_offset);
      if (!parsed.is_array()) throw ParseError(l, c, "parts must be an array");
      for (const auto& part : parsed) {
        if (!part.is_array())
          throw ParseError(l, c, "each part must be an array of entries");
        std::vector<Interval> entries;
        for (const auto& entry : part) {
          if (entry.is_number_integer()) {
            long long v = entry.get<long long>();
            entries.push_back({v, v});
          } else if (entry.is_array() && entry.size() == 2 &&
                     entry[0].is_number_integer() && entry[1].is_number_integer()) {
            entries.push_back({entry[0].get<long long>(), entry[1].get<long long>()});
          } else {
            throw ParseError(l, c,
                             "entries must be integers or [lo, hi] pairs");
          }
        }
        file.parts.push_back(std::move(entries));
      }
      return file;
    }
    auto [l, c] = detail::line_column(text, cursor);
    throw ParseError(l, c, "expected a name: or parts: line");
  }
  throw ParseError(1, 1, "missing parts: line");
}

/// Canonical textual form of an instance file; parsing then serializing any
/// valid file is idempotent.
inline std::string serialize_instance(const InstanceFile& file) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& part : file.parts) {
    nlohmann::json entries = nlohmann::json::array();
    for (const Interval& e : part)
      entries.push_back(nlohmann::json::array({e.lo, e.hi}));
    parts.push_back(std::move(entries));
  }
  std::string out;
  if (file.name) out += "name: " + *file.name + "\n";
  out += "parts: " + parts.dump() + "\n";
  return out;
}

inline PartiteSpec to_spec(const InstanceFile& file) {
  std::vector<IntervalSeq> parts;
  parts.reserve(file.parts.size());
  for (const auto& part : file.parts)
    parts.push_back(IntervalSeq::canonicalize(part));
  return PartiteSpec(std::move(parts));
}

/// Degree sequence of one part; rejects genuine intervals.
inline DegreeSeq to_degree_seq(const InstanceFile& file, size_t part) {
  std::vector<long long> values;
  values.reserve(file.parts.at(part).size());
  for (const Interval& e : file.parts.at(part)) {
    if (e.lo != e.hi)
      throw InfeasibleInput("this check needs exact degrees, found interval [" +
                            std::to_string(e.lo) + ", " + std::to_string(e.hi) +
                            "]");
    values.push_back(e.lo);
  }
  return DegreeSeq::canonicalize(std::move(values));
}

inline nlohmann::json graph_to_json(const MultipartiteGraph& g) {
  nlohmann::json out;
  out["part_sizes"] = g.part_sizes();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges_sorted())
    edges.push_back(nlohmann::json::array(
        {nlohmann::json::array({a.part, a.index}),
         nlohmann::json::array({b.part, b.index})}));
  out["edges"] = std::move(edges);
  return out;
}

inline MultipartiteGraph graph_from_json(const nlohmann::json& j) {
  if (!j.contains("part_sizes") || !j.contains("edges"))
    throw ParseError(1, 1, "graph JSON needs part_sizes and edges");
  MultipartiteGraph g(j.at("part_sizes").get<std::vector<int>>());
  for (const auto& edge : j.at("edges")) {
    VertexRef a{edge.at(0).at(0).get<int>(), edge.at(0).at(1).get<int>()};
    VertexRef b{edge.at(1).at(0).get<int>(), edge.at(1).at(1).get<int>()};
    g.add_edge(a, b);
  }
  return g;
}

/// DOT rendering with one cluster per part; vertices are named
/// p<part>_v<index>, zero-based.
inline std::string graph_to_dot(const MultipartiteGraph& g) {
  std::string out = "graph realization {\n";
  for (int p = 0; p < g.parts(); ++p) {
    out += "  subgraph cluster_p" + std::to_string(p) + " {\n";
    out += "    label=\"p" + std::to_string(p) + "\";\n";
    for (int i = 0; i < g.part_size(p); ++i)
      out += "    p" + std::to_string(p) + "_v" + std::to_string(i) + ";\n";
    out += "  }\n";
  }
  for (const auto& [a, b] : g.edges_sorted())
    out += "  p" + std::to_string(a.part) + "_v" + std::to_string(a.index) +
           " -- p" + std::to_string(b.part) + "_v" + std::to_string(b.index) +
           ";\n";
  out += "}\n";
  return out;
}

namespace detail {

inline std::optional<VertexRef> parse_dot_vertex(const std::string& token) {
  if (token.size() < 4 || token[0] != 'p') return std::nullopt;
  size_t underscore = token.find("_v");
  if (underscore == std::string::npos) return std::nullopt;
  try {
    int part = std::stoi(token.substr(1, underscore - 1));
    int index = std::stoi(token.substr(underscore + 2));
    return VertexRef{part, index};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Parses the DOT dialect emitted by graph_to_dot.
inline MultipartiteGraph graph_from_dot(const std::string& text) {
  std::vector<std::vector<bool>> declared;
  std::vector<std::pair<VertexRef, VertexRef>> edges;

  auto note_vertex = [&declared](VertexRef v) {
    if (v.part < 0 || v.index < 0) throw ParseError(1, 1, "negative vertex id");
    if (static_cast<size_t>(v.part) >= declared.size())
      declared.resize(static_cast<size_t>(v.part) + 1);
    auto& part = declared[static_cast<size_t>(v.part)];
    if (static_cast<size_t>(v.index) >= part.size())
      part.resize(static_cast<size_t>(v.index) + 1, false);
    part[static_cast<size_t>(v.index)] = true;
  };

  size_t cursor = 0;
  int line_no = 0;
  while (cursor < text.size()) {
    size_t line_end = text.find('\n', cursor);
    if (line_end == std::string::npos) line_end = text.size();
    std::string line = detail::trim(text.substr(cursor, line_end - cursor));
    cursor = line_end + 1;
    ++line_no;
    if (line.empty() || line == "}" || line.back() == '{' ||
        line.rfind("label=", 0) == 0)
      continue;
    if (line.back() == ';') line.pop_back();
    size_t sep = line.find(" -- ");
    if (sep == std::string::npos) {
      auto v = detail::parse_dot_vertex(detail::trim(line));
      if (!v) throw ParseError(line_no, 1, "unrecognized DOT line");
      note_vertex(*v);
      continue;
    }
    auto a = detail::parse_dot_vertex(detail::trim(line.substr(0, sep)));
    auto b = detail::parse_dot_vertex(detail::trim(line.substr(sep + 4)));
    if (!a || !b) throw ParseError(line_no, 1, "unrecognized DOT edge");
    note_vertex(*a);
    note_vertex(*b);
    edges.emplace_back(*a, *b);
  }

  std::vector<int> sizes;
  sizes.reserve(declared.size());
  for (const auto& part : declared) {
    for (bool seen : part)
      if (!seen) throw ParseError(1, 1, "undeclared vertex index in part");
    sizes.push_back(static_cast<int>(part.size()));
  }
  MultipartiteGraph g(sizes);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline nlohmann::json report_to_json(const CheckReport& report) {
  nlohmann::json families = nlohmann::json::array();
  for (const FamilyRow& row : report.families) {
    families.push_back({{"family", row.family},
                        {"prefix", row.prefix},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"ok", row.ok}});
  }
  nlohmann::json out;
  out["families"] = std::move(families);
  out["passed"] = report.passed;
  if (report.mu)
    out["mu"] = *report.mu;
  else
    out["mu"] = nullptr;
  return out;
}

}  // namespace partite
