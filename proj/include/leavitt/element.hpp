#ifndef LEAVITT_ELEMENT_HPP
#define LEAVITT_ELEMENT_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "leavitt/error.hpp"
#include "leavitt/graph.hpp"

namespace leavitt {

  // An element of the Leavitt inverse semigroup LI(E): either 0 or pq* in
  // normal form. Normal form means r(p) = r(q) and, when p and q end in the
  // same edge e, the source of e has out-degree at least 2 (otherwise
  // ee* = s(e) would cancel). The pair (empty, empty) at v is the vertex v.
  class Element {
   public:
    Element() = default;

    static Element zero(Graph const& g) {
      Element x;
      x._graph = g.tag();
      x._zero  = true;
      return x;
    }

    static Element vertex(Graph const& g, VertexId v) {
      if (v >= g.vertex_count()) {
        throw Error("vertex out of range");
      }
      return Element(g.tag(), Path::empty_at(v), Path::empty_at(v));
    }

    static Element edge(Graph const& g, EdgeId e) {
      return Element(g.tag(), Path{g.source(e), {e}}, Path::empty_at(g.range(e)));
    }

    static Element ghost(Graph const& g, EdgeId e) {
      return Element(g.tag(), Path::empty_at(g.range(e)), Path{g.source(e), {e}});
    }

    bool is_zero() const noexcept {
      return _zero;
    }

    bool is_vertex() const noexcept {
      return !_zero && _p.empty() && _q.empty();
    }

    Path const& p() const noexcept {
      return _p;
    }

    Path const& q() const noexcept {
      return _q;
    }

    std::uint64_t graph_tag() const noexcept {
      return _graph;
    }

    // |p| + |q|
    std::size_t size() const noexcept {
      return _p.length() + _q.length();
    }

    auto operator<=>(Element const&) const = default;

   private:
    friend Element normalize(Graph const&, Path, Path);

    Element(std::uint64_t graph, Path p, Path q)
        : _graph(graph), _zero(false), _p(std::move(p)), _q(std::move(q)) {}

    std::uint64_t _graph = 0;
    bool          _zero  = true;
    Path          _p;
    Path          _q;
  };

  // Listing order: zero, then by |p|+|q|, then p, then q (paths in
  // path_order).
  inline bool element_order(Element const& a, Element const& b) {
    if (a.is_zero() || b.is_zero()) {
      return a.is_zero() && !b.is_zero();
    }
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    if (a.p() != b.p()) {
      return path_order(a.p(), b.p());
    }
    return path_order(a.q(), b.q());
  }

  namespace detail {
    inline void check_same_graph(Graph const& g, Element const& a) {
      if (a.graph_tag() != g.tag()) {
        throw Error("element does not belong to this graph");
      }
    }
  }  // namespace detail

  // The element pq*: strips a common last edge e while s(e) has out-degree 1
  // (relation ee* = s(e)).
  inline Element normalize(Graph const& g, Path p, Path q) {
    if (!is_path(g, p) || !is_path(g, q)) {
      throw Error("normalize: not a path in this graph");
    }
    if (path_range(g, p) != path_range(g, q)) {
      throw Error("normalize: r(p) != r(q), so pq* is not defined");
    }
    while (!p.empty() && !q.empty() && p.edges.back() == q.edges.back()
           && g.out_degree(g.source(p.edges.back())) == 1) {
      p.edges.pop_back();
      q.edges.pop_back();
    }
    return Element(g.tag(), std::move(p), std::move(q));
  }

  inline bool is_normal(Graph const& g, Path const& p, Path const& q) {
    return !(!p.empty() && !q.empty() && p.edges.back() == q.edges.back()
             && g.out_degree(g.source(p.edges.back())) == 1);
  }

  // (p1 q1*)(p2 q2*):
  //   p2 = q1 t, |t| >= 1   ->  (p1 t) q2*
  //   q1 = p2 t, |t| >= 1   ->  p1 (q2 t)*
  //   p2 = q1               ->  normalize(p1, q2)
  //   otherwise             ->  0
  inline Element multiply(Graph const& g, Element const& a, Element const& b) {
    detail::check_same_graph(g, a);
    detail::check_same_graph(g, b);
    if (a.is_zero() || b.is_zero()) {
      return Element::zero(g);
    }
    Path const& q1 = a.q();
    Path const& p2 = b.p();
    if (is_prefix(q1, p2)) {
      return normalize(g, concat(g, a.p(), drop_front(g, p2, q1.length())), b.q());
    }
    if (is_prefix(p2, q1)) {
      return normalize(g, a.p(), concat(g, b.q(), drop_front(g, q1, p2.length())));
    }
    return Element::zero(g);
  }

  // (pq*)* = qp*; vertices and 0 are fixed.
  inline Element star(Graph const& g, Element const& a) {
    detail::check_same_graph(g, a);
    if (a.is_zero()) {
      return a;
    }
    return normalize(g, a.q(), a.p());
  }

  // |p| - |q|; 0 has no degree.
  inline long grade(Element const& a) {
    if (a.is_zero()) {
      throw Error("the zero element has no grade");
    }
    return static_cast<long>(a.p().length()) - static_cast<long>(a.q().length());
  }

  // All paths of length <= max_length, in path_order.
  inline std::vector<Path> all_paths(Graph const& g, std::size_t max_length) {
    std::vector<Path> out;
    std::vector<Path> frontier;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      frontier.push_back(Path::empty_at(v));
    }
    for (std::size_t len = 0;; ++len) {
      out.insert(out.end(), frontier.begin(), frontier.end());
      if (len == max_length || frontier.empty()) {
        break;
      }
      std::vector<Path> next;
      for (auto const& p : frontier) {
        for (EdgeId e : g.out_edges(path_range(g, p))) {
          Path q = p;
          if (q.empty()) {
            q.base = g.source(e);
          }
          q.edges.push_back(e);
          next.push_back(std::move(q));
        }
      }
      frontier = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(), path_order);
    return out;
  }

  inline constexpr std::size_t default_window = 6;

  // Nonzero elements of LI(E). For an acyclic graph the set is finite and is
  // returned in full (window is ignored); otherwise only elements with
  // |p| + |q| <= window are returned. Sorted by element_order.
  inline std::vector<Element> enumerate_elements(Graph const& g,
                                                 std::size_t  window = default_window) {
    bool        acyclic = is_acyclic(g);
    std::size_t limit   = acyclic ? g.vertex_count() * 2 : window;
    auto        paths   = all_paths(g, acyclic ? g.vertex_count() : window);

    std::vector<std::vector<Path const*>> by_range(g.vertex_count());
    for (auto const& p : paths) {
      by_range[path_range(g, p)].push_back(&p);
    }
    std::vector<Element> out;
    for (auto const& group : by_range) {
      for (Path const* p : group) {
        for (Path const* q : group) {
          if (p->length() + q->length() <= limit && is_normal(g, *p, *q)) {
            out.push_back(normalize(g, *p, *q));
          }
        }
      }
    }
    std::sort(out.begin(), out.end(), element_order);
    return out;
  }

  // Grading axiom on a finite set: deg(ab) = deg(a) + deg(b) whenever ab != 0
  // and ab lies in the set.
  inline bool assert_graded(Graph const& g, std::vector<Element> const& elements) {
    std::set<Element> members(elements.begin(), elements.end());
    for (auto const& a : elements) {
      for (auto const& b : elements) {
        if (a.is_zero() || b.is_zero()) {
          continue;
        }
        Element ab = multiply(g, a, b);
        if (ab.is_zero() || !members.contains(ab)) {
          continue;
        }
        if (grade(ab) != grade(a) + grade(b)) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace leavitt

#endif  // LEAVITT_ELEMENT_HPP
