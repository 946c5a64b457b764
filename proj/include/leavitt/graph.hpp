#ifndef LEAVITT_GRAPH_HPP
#define LEAVITT_GRAPH_HPP

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leavitt/error.hpp"

namespace leavitt {

  using VertexId = std::size_t;
  using EdgeId   = std::size_t;

  struct Edge {
    std::string name;
    VertexId    source;
    VertexId    range;
  };

  // A finite directed multigraph E = (E^0, E^1, s, r). Vertices and edges are
  // indexed in declaration order; that order is the "id order" used for every
  // deterministic tie-break in the library.
  //
  // Every Graph carries a tag shared by its copies; elements of LI(E) record
  // the tag of the graph they were built over so that mixing graphs is caught.
  class Graph {
   public:
    Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
        : _vertices(std::move(vertices)),
          _edges(std::move(edges)),
          _out(_vertices.size()),
          _in(_vertices.size()),
          _tag(next_tag()) {
      if (_vertices.empty()) {
        throw Error("a graph needs at least one vertex");
      }
      for (VertexId v = 0; v < _vertices.size(); ++v) {
        if (!_vertex_index.emplace(_vertices[v], v).second) {
          throw Error("duplicate vertex id '" + _vertices[v] + "'");
        }
      }
      for (EdgeId e = 0; e < _edges.size(); ++e) {
        auto const& edge = _edges[e];
        if (edge.source >= _vertices.size() || edge.range >= _vertices.size()) {
          throw Error("edge '" + edge.name + "' has a dangling endpoint");
        }
        if (!_edge_index.emplace(edge.name, e).second) {
          throw Error("duplicate edge id '" + edge.name + "'");
        }
        _out[edge.source].push_back(e);
        _in[edge.range].push_back(e);
      }
    }

    std::size_t vertex_count() const noexcept {
      return _vertices.size();
    }

    std::size_t edge_count() const noexcept {
      return _edges.size();
    }

    std::string const& vertex_name(VertexId v) const {
      return _vertices.at(v);
    }

    Edge const& edge(EdgeId e) const {
      return _edges.at(e);
    }

    std::string const& edge_name(EdgeId e) const {
      return _edges.at(e).name;
    }

    VertexId source(EdgeId e) const {
      return _edges.at(e).source;
    }

    VertexId range(EdgeId e) const {
      return _edges.at(e).range;
    }

    std::span<EdgeId const> out_edges(VertexId v) const {
      return _out.at(v);
    }

    std::span<EdgeId const> in_edges(VertexId v) const {
      return _in.at(v);
    }

    std::size_t out_degree(VertexId v) const {
      return _out.at(v).size();
    }

    bool is_sink(VertexId v) const {
      return _out.at(v).empty();
    }

    std::optional<VertexId> find_vertex(std::string_view name) const {
      auto it = _vertex_index.find(std::string(name));
      if (it == _vertex_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::optional<EdgeId> find_edge(std::string_view name) const {
      auto it = _edge_index.find(std::string(name));
      if (it == _edge_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    VertexId vertex(std::string_view name) const {
      if (auto v = find_vertex(name)) {
        return *v;
      }
      throw Error("unknown vertex '" + std::string(name) + "'");
    }

    EdgeId edge_id(std::string_view name) const {
      if (auto e = find_edge(name)) {
        return *e;
      }
      throw Error("unknown edge '" + std::string(name) + "'");
    }

    std::vector<std::string> const& vertex_names() const noexcept {
      return _vertices;
    }

    std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }

    std::uint64_t tag() const noexcept {
      return _tag;
    }

   private:
    static std::uint64_t next_tag() {
      static std::atomic<std::uint64_t> counter{0};
      return ++counter;
    }

    std::vector<std::string>                  _vertices;
    std::vector<Edge>                         _edges;
    std::vector<std::vector<EdgeId>>          _out;
    std::vector<std::vector<EdgeId>>          _in;
    std::unordered_map<std::string, VertexId> _vertex_index;
    std::unordered_map<std::string, EdgeId>   _edge_index;
    std::uint64_t                             _tag;
  };

  ////////////////////////////////////////////////////////////////////////
  // Paths
  ////////////////////////////////////////////////////////////////////////

  // A path e_1 ... e_n, or the empty path at `base`. For a nonempty path
  // base = s(e_1).
  struct Path {
    VertexId            base = 0;
    std::vector<EdgeId> edges;

    static Path empty_at(VertexId v) {
      return Path{v, {}};
    }

    std::size_t length() const noexcept {
      return edges.size();
    }

    bool empty() const noexcept {
      return edges.empty();
    }

    auto operator<=>(Path const&) const = default;
  };

  // Order used for every listing: shorter first, then by source, then by edges.
  inline bool path_order(Path const& a, Path const& b) {
    if (a.length() != b.length()) {
      return a.length() < b.length();
    }
    return a < b;
  }

  inline VertexId path_source(Path const& p) {
    return p.base;
  }

  inline VertexId path_range(Graph const& g, Path const& p) {
    return p.empty() ? p.base : g.range(p.edges.back());
  }

  inline bool is_path(Graph const& g, Path const& p) {
    if (p.base >= g.vertex_count()) {
      return false;
    }
    VertexId at = p.base;
    for (EdgeId e : p.edges) {
      if (e >= g.edge_count() || g.source(e) != at) {
        return false;
      }
      at = g.range(e);
    }
    return true;
  }

  inline Path make_path(Graph const& g, std::vector<EdgeId> edges) {
    if (edges.empty()) {
      throw Error("make_path needs at least one edge; use Path::empty_at");
    }
    Path p{g.source(edges.front()), std::move(edges)};
    if (!is_path(g, p)) {
      throw Error("edges do not compose into a path");
    }
    return p;
  }

  // a followed by b; requires r(a) = s(b).
  inline Path concat(Graph const& g, Path const& a, Path const& b) {
    if (path_range(g, a) != b.base) {
      throw Error("paths do not compose");
    }
    Path out = a;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
  }

  // true iff `prefix` is an initial segment of `p` (same source).
  inline bool is_prefix(Path const& prefix, Path const& p) {
    return prefix.base == p.base && prefix.length() <= p.length()
           && std::equal(prefix.edges.begin(), prefix.edges.end(), p.edges.begin());
  }

  // The path obtained from p by dropping its first n edges.
  inline Path drop_front(Graph const& g, Path const& p, std::size_t n) {
    if (n == 0) {
      return p;
    }
    if (n > p.length()) {
      throw Error("drop_front past the end of a path");
    }
    Path out{g.range(p.edges[n - 1]), {}};
    out.edges.assign(p.edges.begin() + n, p.edges.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Walks
  ////////////////////////////////////////////////////////////////////////

  struct Step {
    EdgeId edge;
    bool   star = false;

    auto operator<=>(Step const&) const = default;
  };

  // s(e*) = r(e), r(e*) = s(e).
  inline VertexId step_source(Graph const& g, Step s) {
    return s.star ? g.range(s.edge) : g.source(s.edge);
  }

  inline VertexId step_range(Graph const& g, Step s) {
    return s.star ? g.source(s.edge) : g.range(s.edge);
  }

  struct Walk {
    VertexId          base = 0;
    std::vector<Step> steps;

    auto operator<=>(Walk const&) const = default;
  };

  inline bool is_walk(Graph const& g, Walk const& w) {
    if (w.base >= g.vertex_count()) {
      return false;
    }
    VertexId at = w.base;
    for (Step s : w.steps) {
      if (s.edge >= g.edge_count() || step_source(g, s) != at) {
        return false;
      }
      at = step_range(g, s);
    }
    return true;
  }

  inline VertexId walk_range(Graph const& g, Walk const& w) {
    return w.steps.empty() ? w.base : step_range(g, w.steps.back());
  }

  ////////////////////////////////////////////////////////////////////////
  // Cycles and structure
  ////////////////////////////////////////////////////////////////////////

  // A cycle C = e_1 ... e_n: a closed path with pairwise distinct sources.
  struct Cycle {
    Path path;

    std::size_t length() const noexcept {
      return path.length();
    }

    VertexId start() const noexcept {
      return path.base;
    }

    bool operator==(Cycle const&) const = default;
  };

  inline bool is_cycle(Graph const& g, Path const& p) {
    if (p.empty() || !is_path(g, p) || path_range(g, p) != p.base) {
      return false;
    }
    std::vector<VertexId> sources;
    for (EdgeId e : p.edges) {
      sources.push_back(g.source(e));
    }
    std::sort(sources.begin(), sources.end());
    return std::adjacent_find(sources.begin(), sources.end()) == sources.end();
  }

  // Cyclic conjugate of c starting at vertex v; v must lie on c.
  inline Cycle rotate_to(Graph const& g, Cycle const& c, VertexId v) {
    auto const& edges = c.path.edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (g.source(edges[i]) == v) {
        Path p{v, {}};
        p.edges.insert(p.edges.end(), edges.begin() + i, edges.end());
        p.edges.insert(p.edges.end(), edges.begin(), edges.begin() + i);
        return Cycle{std::move(p)};
      }
    }
    throw Error("vertex '" + g.vertex_name(v) + "' is not on the cycle");
  }

  inline std::vector<VertexId> cycle_vertices(Graph const& g, Cycle const& c) {
    std::vector<VertexId> out;
    for (EdgeId e : c.path.edges) {
      out.push_back(g.source(e));
    }
    return out;
  }

  // Undirected reachability, i.e. existence of a walk between every pair.
  inline bool is_connected(Graph const& g) {
    std::vector<bool>     seen(g.vertex_count(), false);
    std::vector<VertexId> stack{0};
    seen[0]           = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      auto visit = [&](VertexId w) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      };
      for (EdgeId e : g.out_edges(v)) {
        visit(g.range(e));
      }
      for (EdgeId e : g.in_edges(v)) {
        visit(g.source(e));
      }
    }
    return count == g.vertex_count();
  }

  inline std::size_t max_out_degree(Graph const& g) {
    std::size_t m = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      m = std::max(m, g.out_degree(v));
    }
    return m;
  }

  inline std::vector<VertexId> sinks(Graph const& g) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.is_sink(v)) {
        out.push_back(v);
      }
    }
    return out;
  }

  // Some cycle of g, found by depth-first search from the vertices in id
  // order and rotated to start at its smallest vertex; nullopt iff acyclic.
  inline std::optional<Cycle> find_cycle(Graph const& g) {
    enum class Colour { white, grey, black };
    std::vector<Colour> colour(g.vertex_count(), Colour::white);
    std::vector<EdgeId> trail;  // edges on the current DFS branch

    struct Frame {
      VertexId    v;
      std::size_t next;
    };

    for (VertexId root = 0; root < g.vertex_count(); ++root) {
      if (colour[root] != Colour::white) {
        continue;
      }
      std::vector<Frame> stack{{root, 0}};
      colour[root] = Colour::grey;
      while (!stack.empty()) {
        auto& top = stack.back();
        auto  out = g.out_edges(top.v);
        if (top.next == out.size()) {
          colour[top.v] = Colour::black;
          stack.pop_back();
          if (!trail.empty()) {
            trail.pop_back();
          }
          continue;
        }
        EdgeId   e = out[top.next++];
        VertexId w = g.range(e);
        if (colour[w] == Colour::grey) {
          // Back edge: the cycle is the part of the trail starting at w.
          auto it = std::find_if(trail.begin(), trail.end(), [&](EdgeId t) {
            return g.source(t) == w;
          });
          Path p{w, std::vector<EdgeId>(it, trail.end())};
          p.edges.push_back(e);
          Cycle    c{std::move(p)};
          auto     vs    = cycle_vertices(g, c);
          VertexId first = *std::min_element(vs.begin(), vs.end());
          return rotate_to(g, c, first);
        }
        if (colour[w] == Colour::white) {
          colour[w] = Colour::grey;
          trail.push_back(e);
          stack.push_back({w, 0});
        }
      }
    }
    return std::nullopt;
  }

  inline bool is_acyclic(Graph const& g) {
    return !find_cycle(g).has_value();
  }

  struct ValidationReport {
    bool                  connected      = false;
    std::size_t           max_out_degree = 0;
    std::vector<VertexId> sinks;
    std::optional<Cycle>  cycle;
    // connected and every out-degree <= 1
    bool theorem_scope = false;
  };

  inline ValidationReport validate(Graph const& g) {
    ValidationReport r;
    r.connected      = is_connected(g);
    r.max_out_degree = leavitt::max_out_degree(g);
    r.sinks          = leavitt::sinks(g);
    r.cycle          = find_cycle(g);
    r.theorem_scope  = r.connected && r.max_out_degree <= 1;
    return r;
  }

  inline bool in_theorem_scope(Graph const& g) {
    return is_connected(g) && max_out_degree(g) <= 1;
  }

  inline void require_theorem_scope(Graph const& g) {
    if (!is_connected(g)) {
      throw ScopeError("graph is not connected");
    }
    if (auto d = max_out_degree(g); d > 1) {
      throw ScopeError("graph has a vertex of out-degree " + std::to_string(d)
                       + "; only out-degree <= 1 is supported here");
    }
  }

  // For a connected graph of out-degree <= 1: its only cycle, as the
  // conjugate starting at the smallest vertex; nullopt iff g is a tree.
  inline std::optional<Cycle> unique_cycle(Graph const& g) {
    require_theorem_scope(g);
    // Following out-edges from any vertex ends at the sink or runs into
    // the cycle; connectivity makes the cycle (if any) reachable from 0.
    std::vector<std::size_t> seen_at(g.vertex_count(), SIZE_MAX);
    std::vector<EdgeId>      trail;
    VertexId                 v = 0;
    while (seen_at[v] == SIZE_MAX) {
      if (g.is_sink(v)) {
        return std::nullopt;
      }
      seen_at[v] = trail.size();
      EdgeId e   = g.out_edges(v)[0];
      trail.push_back(e);
      v = g.range(e);
    }
    Cycle c{Path{v, std::vector<EdgeId>(trail.begin() + seen_at[v], trail.end())}};
    auto  vs = cycle_vertices(g, c);
    return rotate_to(g, c, *std::min_element(vs.begin(), vs.end()));
  }

  inline std::optional<VertexId> unique_sink(Graph const& g) {
    require_theorem_scope(g);
    auto s = sinks(g);
    if (s.empty()) {
      return std::nullopt;
    }
    return s.front();
  }

  // Out-degree <= 1 graphs: the cycle (or the trivial cycle, i.e. the sink)
  // together with a choice of base vertex v0 on it.
  struct Base {
    VertexId             v0;
    std::optional<Cycle> cycle;  // starting at v0; nullopt for a tree

    std::size_t step() const noexcept {
      return cycle ? cycle->length() : 0;
    }
  };

  // Validates that v0 is the sink or lies on the cycle.
  inline Base make_base(Graph const& g, VertexId v0) {
    if (v0 >= g.vertex_count()) {
      throw Error("base vertex out of range");
    }
    auto c = unique_cycle(g);
    if (!c) {
      if (!g.is_sink(v0)) {
        throw Error("'" + g.vertex_name(v0) + "' is not the sink");
      }
      return Base{v0, std::nullopt};
    }
    auto vs = cycle_vertices(g, *c);
    if (std::find(vs.begin(), vs.end(), v0) == vs.end()) {
      throw Error("'" + g.vertex_name(v0) + "' is not on the cycle");
    }
    return Base{v0, rotate_to(g, *c, v0)};
  }

  // All admissible base vertices: the sink, or the cycle's vertices in id
  // order.
  inline std::vector<VertexId> base_candidates(Graph const& g) {
    auto c = unique_cycle(g);
    if (!c) {
      return {*unique_sink(g)};
    }
    auto vs = cycle_vertices(g, *c);
    std::sort(vs.begin(), vs.end());
    return vs;
  }

  // The unique path from v to the base in the graph with the base's out-edge
  // removed.
  inline Path path_to_base(Graph const& g, Base const& b, VertexId v) {
    Path p{v, {}};
    while (v != b.v0) {
      if (g.is_sink(v) || p.length() > g.vertex_count()) {
        throw Error("no path from '" + g.vertex_name(p.base) + "' to the base");
      }
      EdgeId e = g.out_edges(v)[0];
      p.edges.push_back(e);
      v = g.range(e);
    }
    return p;
  }

  inline std::vector<Path> base_paths(Graph const& g, Base const& b) {
    std::vector<Path> out;
    out.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      out.push_back(path_to_base(g, b, v));
    }
    std::stable_sort(out.begin(), out.end(), path_order);
    return out;
  }

  // All paths ending at v0 once the edge leaving v0 (if any) is removed, one
  // per vertex, ordered by (length, source id).
  inline std::vector<Path> base_paths(Graph const& g, VertexId v0) {
    return base_paths(g, make_base(g, v0));
  }

  // |p| mod s with m mod 0 = m.
  inline std::size_t relative_depth(Graph const& g, Base const& b, VertexId v) {
    std::size_t len = path_to_base(g, b, v).length();
    return b.step() == 0 ? len : len % b.step();
  }

  inline std::size_t relative_depth(Graph const& g, VertexId v0, VertexId v) {
    return relative_depth(g, make_base(g, v0), v);
  }

  // Every edge source along p has out-degree exactly 1; empty paths qualify.
  inline bool is_ne_path(Graph const& g, Path const& p) {
    return std::all_of(p.edges.begin(), p.edges.end(), [&](EdgeId e) {
      return g.out_degree(g.source(e)) == 1;
    });
  }

}  // namespace leavitt

#endif  // LEAVITT_GRAPH_HPP
