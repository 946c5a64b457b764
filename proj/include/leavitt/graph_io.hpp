#ifndef LEAVITT_GRAPH_IO_HPP
#define LEAVITT_GRAPH_IO_HPP

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "leavitt/error.hpp"
#include "leavitt/graph.hpp"

namespace leavitt {

  // Graph files, one declaration per line, '#' to end of line is a comment:
  //
  //   vertex <id>
  //   edge <id> <source-id> <target-id>
  //
  // with ids matching [A-Za-z][A-Za-z0-9_]*. Vertices may be declared after
  // the edges that use them.

  inline bool is_valid_id(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) {
      return false;
    }
    for (char c : s) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        return false;
      }
    }
    return true;
  }

  namespace detail {
    struct PendingEdge {
      std::string name, source, range;
      std::size_t line;
    };

    inline Graph assemble(std::vector<std::pair<std::string, std::size_t>> const& vertices,
                          std::vector<PendingEdge> const& edges) {
      std::unordered_map<std::string, VertexId> index;
      std::vector<std::string>                  names;
      for (auto const& [name, line] : vertices) {
        if (!index.emplace(name, names.size()).second) {
          throw ParseError(line, "duplicate vertex id '" + name + "'");
        }
        names.push_back(name);
      }
      if (names.empty() && edges.empty()) {
        throw ParseError(1, "no vertices declared");
      }
      std::unordered_map<std::string, std::size_t> seen_edges;
      std::vector<Edge>                            out;
      for (auto const& e : edges) {
        if (!seen_edges.emplace(e.name, e.line).second) {
          throw ParseError(e.line, "duplicate edge id '" + e.name + "'");
        }
        auto s = index.find(e.source);
        auto r = index.find(e.range);
        if (s == index.end() || r == index.end()) {
          auto const& missing = s == index.end() ? e.source : e.range;
          throw ParseError(e.line, "dangling endpoint '" + missing + "' of edge '" + e.name + "'");
        }
        out.push_back(Edge{e.name, s->second, r->second});
      }
      return Graph(std::move(names), std::move(out));
    }
  }  // namespace detail

  inline Graph parse_graph(std::string_view text) {
    std::vector<std::pair<std::string, std::size_t>> vertices;
    std::vector<detail::PendingEdge>                 edges;

    std::istringstream in{std::string(text)};
    std::string        raw;
    std::size_t        line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      if (auto hash = raw.find('#'); hash != std::string::npos) {
        raw.erase(hash);
      }
      std::istringstream       fields(raw);
      std::vector<std::string> tok;
      for (std::string t; fields >> t;) {
        tok.push_back(t);
      }
      if (tok.empty()) {
        continue;
      }
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!is_valid_id(tok[i])) {
          throw ParseError(line_no, "invalid id '" + tok[i] + "'");
        }
      }
      if (tok[0] == "vertex") {
        if (tok.size() != 2) {
          throw ParseError(line_no, "expected 'vertex <id>'");
        }
        vertices.emplace_back(tok[1], line_no);
      } else if (tok[0] == "edge") {
        if (tok.size() != 4) {
          throw ParseError(line_no, "expected 'edge <id> <source-id> <target-id>'");
        }
        edges.push_back({tok[1], tok[2], tok[3], line_no});
      } else {
        throw ParseError(line_no, "unknown declaration '" + tok[0] + "'");
      }
    }
    return detail::assemble(vertices, edges);
  }

  // {"vertices": [...], "edges": [{"id": .., "src": .., "dst": ..}, ...]}
  inline Graph parse_graph_json(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    std::vector<std::pair<std::string, std::size_t>> vertices;
    std::vector<detail::PendingEdge>                 edges;
    try {
      for (auto const& v : doc.at("vertices")) {
        auto name = v.get<std::string>();
        if (!is_valid_id(name)) {
          throw ParseError(1, "invalid id '" + name + "'");
        }
        vertices.emplace_back(name, 1);
      }
      if (doc.contains("edges")) {
        for (auto const& e : doc.at("edges")) {
          detail::PendingEdge pe{e.at("id").get<std::string>(),
                                 e.at("src").get<std::string>(),
                                 e.at("dst").get<std::string>(),
                                 1};
          for (auto const& id : {pe.name, pe.source, pe.range}) {
            if (!is_valid_id(id)) {
              throw ParseError(1, "invalid id '" + id + "'");
            }
          }
          edges.push_back(std::move(pe));
        }
      }
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(1, std::string("malformed graph JSON: ") + e.what());
    }
    return detail::assemble(vertices, edges);
  }

  inline Graph load_graph(std::filesystem::path const& file) {
    std::ifstream in(file);
    if (!in) {
      throw Error("cannot read '" + file.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (file.extension() == ".json") {
      return parse_graph_json(buf.str());
    }
    return parse_graph(buf.str());
  }

  // Canonical text form: all vertex lines, then all edge lines, in id order.
  inline std::string format_graph(Graph const& g) {
    std::string out;
    for (auto const& v : g.vertex_names()) {
      out += "vertex " + v + "\n";
    }
    for (auto const& e : g.edges()) {
      out += "edge " + e.name + " " + g.vertex_name(e.source) + " " + g.vertex_name(e.range)
             + "\n";
    }
    return out;
  }

  inline nlohmann::json graph_to_json(Graph const& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto const& e : g.edges()) {
      edges.push_back({{"id", e.name},
                       {"src", g.vertex_name(e.source)},
                       {"dst", g.vertex_name(e.range)}});
    }
    return {{"vertices", g.vertex_names()}, {"edges", edges}};
  }

}  // namespace leavitt

#endif  // LEAVITT_GRAPH_IO_HPP
