#ifndef LEAVITT_EXPR_HPP
#define LEAVITT_EXPR_HPP

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "leavitt/element.hpp"
#include "leavitt/error.hpp"
#include "leavitt/graph.hpp"

namespace leavitt {

  // Element expressions: whitespace-separated factors, each a vertex id, an
  // edge id, or an edge id followed by '*'; "0" is the zero element. The
  // factors must form a walk and are multiplied left to right.

  namespace detail {
    struct Factor {
      Element                 value;
      std::optional<VertexId> source;  // nullopt for the factor "0"
      std::optional<VertexId> range;
    };

    inline Factor parse_factor(Graph const& g, std::string const& tok, std::size_t position) {
      if (tok == "0") {
        return Factor{Element::zero(g), std::nullopt, std::nullopt};
      }
      bool        ghost = tok.size() > 1 && tok.back() == '*';
      std::string name  = ghost ? tok.substr(0, tok.size() - 1) : tok;
      auto        e     = g.find_edge(name);
      if (!ghost && e && g.find_vertex(name)) {
        throw Error("factor " + std::to_string(position) + ": '" + name
                    + "' names both a vertex and an edge");
      }
      if (auto v = g.find_vertex(name); v && !ghost) {
        return Factor{Element::vertex(g, *v), *v, *v};
      }
      if (e && ghost) {
        return Factor{Element::ghost(g, *e), g.range(*e), g.source(*e)};
      }
      if (e) {
        return Factor{Element::edge(g, *e), g.source(*e), g.range(*e)};
      }
      throw Error("factor " + std::to_string(position) + ": unknown id '" + name + "'");
    }
  }  // namespace detail

  inline Element parse_element_expr(Graph const& g, std::string_view text) {
    std::istringstream       in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) {
      tokens.push_back(t);
    }
    if (tokens.empty()) {
      throw Error("empty element expression");
    }
    std::optional<Element>  acc;
    std::optional<VertexId> last_range;
    std::string             last_token;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      auto f = detail::parse_factor(g, tokens[i], i + 1);
      if (last_range && f.source && *last_range != *f.source) {
        throw Error("factors " + std::to_string(i) + " and " + std::to_string(i + 1) + " ('"
                    + last_token + "', '" + tokens[i] + "') do not compose");
      }
      acc        = acc ? multiply(g, *acc, f.value) : f.value;
      last_range = f.range;
      last_token = tokens[i];
    }
    return *acc;
  }

  inline std::string render(Graph const& g, Element const& a) {
    if (a.is_zero()) {
      return "0";
    }
    if (a.is_vertex()) {
      return g.vertex_name(a.p().base);
    }
    std::string out;
    for (EdgeId e : a.p().edges) {
      out += (out.empty() ? "" : " ") + g.edge_name(e);
    }
    auto const& q = a.q().edges;
    for (auto it = q.rbegin(); it != q.rend(); ++it) {
      out += (out.empty() ? "" : " ") + g.edge_name(*it) + "*";
    }
    return out;
  }

}  // namespace leavitt

#endif  // LEAVITT_EXPR_HPP
