#ifndef LEAVITT_CLASSIFIER_HPP
#define LEAVITT_CLASSIFIER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leavitt/element.hpp"
#include "leavitt/error.hpp"
#include "leavitt/expr.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/shift.hpp"

namespace leavitt {

  ////////////////////////////////////////////////////////////////////////
  // Depth profiles and the canonical invariant
  ////////////////////////////////////////////////////////////////////////

  // counts[d] = number of vertices of relative depth d. For step s > 0 the
  // vector has length s; for a tree it runs up to the largest depth.
  struct DepthProfile {
    std::size_t              step = 0;
    std::vector<std::size_t> counts;

    bool operator==(DepthProfile const&) const = default;
  };

  inline DepthProfile depth_profile(Graph const& g, VertexId v0) {
    Base         b = make_base(g, v0);
    DepthProfile out{b.step(), std::vector<std::size_t>(b.step(), 0)};
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::size_t d = relative_depth(g, b, v);
      if (d >= out.counts.size()) {
        out.counts.resize(d + 1, 0);
      }
      ++out.counts[d];
    }
    return out;
  }

  inline std::vector<std::size_t> min_rotation(std::vector<std::size_t> const& h) {
    auto best = h;
    auto cur  = h;
    for (std::size_t t = 1; t < h.size(); ++t) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      best = std::min(best, cur);
    }
    return best;
  }

  struct CanonicalInvariant {
    std::size_t              step = 0;
    std::vector<std::size_t> canon;

    bool operator==(CanonicalInvariant const&) const = default;
  };

  // Moving the base along the cycle rotates the histogram, so its minimal
  // rotation does not depend on the base.
  inline CanonicalInvariant canonical_invariant(Graph const& g) {
    require_theorem_scope(g);
    auto p = depth_profile(g, base_candidates(g).front());
    if (p.step == 0) {
      return {0, p.counts};
    }
    return {p.step, min_rotation(p.counts)};
  }

  // (2,(2,2)) or, for trees, (0,{0:1,1:2})
  inline std::string render_invariant(CanonicalInvariant const& inv) {
    std::string out = "(" + std::to_string(inv.step) + (inv.step == 0 ? ",{" : ",(");
    bool        first = true;
    for (std::size_t d = 0; d < inv.canon.size(); ++d) {
      if (inv.step == 0 && inv.canon[d] == 0) {
        continue;
      }
      out += first ? "" : ",";
      first = false;
      if (inv.step == 0) {
        out += std::to_string(d) + ":";
      }
      out += std::to_string(inv.canon[d]);
    }
    return out + (inv.step == 0 ? "})" : "))");
  }

  ////////////////////////////////////////////////////////////////////////
  // Witnesses
  ////////////////////////////////////////////////////////////////////////

  // p_i C1^k p_j*  ->  q_sigma(i) C2^{k + lambda_i - lambda_j} q_sigma(j)*
  // with |q_sigma(i)| = |p_i| + c - lambda_i s.
  struct Witness {
    VertexId                 v0   = 0;
    VertexId                 w0   = 0;
    std::size_t              step = 0;
    long                     c    = 0;
    std::vector<std::size_t> sigma;
    std::vector<long>        lambdas;

    bool operator==(Witness const&) const = default;
  };

  inline std::optional<Witness> try_build_witness(Graph const& gE,
                                                  Graph const& gF,
                                                  VertexId     v0,
                                                  VertexId     w0,
                                                  long         c) {
    auto dE = lpa_descriptor(gE, v0);
    auto dF = lpa_descriptor(gF, w0);
    if (dE.n() != dF.n() || dE.step != dF.step) {
      return std::nullopt;
    }
    if (dE.step == 0 && c != 0) {
      return std::nullopt;
    }
    auto sigma = match_residues(dE.shifts, dF.shifts, dE.step, c);
    if (!sigma) {
      return std::nullopt;
    }
    Witness w{v0, w0, dE.step, c, *sigma, {}};
    for (std::size_t i = 0; i < dE.n(); ++i) {
      long diff = dE.shifts[i] + c - dF.shifts[(*sigma)[i]];
      w.lambdas.push_back(dE.step == 0 ? 0 : diff / static_cast<long>(dE.step));
    }
    return w;
  }

  inline Witness build_witness(Graph const& gE,
                               Graph const& gF,
                               VertexId     v0,
                               VertexId     w0,
                               long         c) {
    require_theorem_scope(gE);
    require_theorem_scope(gF);
    if (auto w = try_build_witness(gE, gF, v0, w0, c)) {
      return *w;
    }
    throw Error("relative depths do not match for bases '" + gE.vertex_name(v0) + "', '"
                + gF.vertex_name(w0) + "' and shift " + std::to_string(c));
  }

  // A nonzero element of LI(E), out-degree <= 1, as p_i C^k p_j* relative to
  // a base. For trees k = 0.
  struct Decomposition {
    std::size_t i = 0;
    long        k = 0;
    std::size_t j = 0;
  };

  // Base paths and cycle of one side of a witness, with the index of the base
  // path leaving each vertex.
  class BasedGraph {
   public:
    BasedGraph(Graph const& g, VertexId v0)
        : _g(g), _base(make_base(g, v0)), _paths(base_paths(g, _base)), _index(g.vertex_count()) {
      for (std::size_t i = 0; i < _paths.size(); ++i) {
        _index[path_source(_paths[i])] = i;
      }
    }

    Graph const& graph() const noexcept {
      return _g;
    }

    Base const& base() const noexcept {
      return _base;
    }

    std::vector<Path> const& paths() const noexcept {
      return _paths;
    }

    std::size_t index_of(VertexId v) const {
      return _index.at(v);
    }

    Decomposition decompose(Element const& a) const {
      if (a.is_zero()) {
        throw Error("0 has no decomposition");
      }
      detail::check_same_graph(_g, a);
      std::size_t i   = index_of(path_source(a.p()));
      std::size_t j   = index_of(path_source(a.q()));
      long        num = grade(a) - static_cast<long>(_paths[i].length())
                 + static_cast<long>(_paths[j].length());
      long s = static_cast<long>(_base.step());
      if (s == 0) {
        if (num != 0) {
          throw Error("element does not decompose over the base");
        }
        return {i, 0, j};
      }
      if (num % s != 0) {
        throw Error("element does not decompose over the base");
      }
      return {i, num / s, j};
    }

    // p_i C^k p_j*, normalised.
    Element compose(Decomposition const& d) const {
      Path p = _paths.at(d.i);
      Path q = _paths.at(d.j);
      if (d.k != 0 && !_base.cycle) {
        throw Error("nonzero cycle power on a tree");
      }
      for (long t = 0; t < std::abs(d.k); ++t) {
        auto& side = d.k > 0 ? p : q;
        side       = concat(_g, side, _base.cycle->path);
      }
      return normalize(_g, std::move(p), std::move(q));
    }

   private:
    Graph                    _g;
    Base                     _base;
    std::vector<Path>        _paths;
    std::vector<std::size_t> _index;
  };

  // The map LI(E) -> LI(F) determined by a witness.
  class WitnessMap {
   public:
    WitnessMap(Graph const& gE, Graph const& gF, Witness w)
        : _e(gE, w.v0), _f(gF, w.w0), _w(std::move(w)) {
      if (_w.sigma.size() != gE.vertex_count() || _w.lambdas.size() != gE.vertex_count()) {
        throw Error("witness size does not match the vertex count");
      }
    }

    Witness const& witness() const noexcept {
      return _w;
    }

    BasedGraph const& source() const noexcept {
      return _e;
    }

    BasedGraph const& target() const noexcept {
      return _f;
    }

    Element operator()(Element const& a) const {
      if (a.is_zero()) {
        detail::check_same_graph(_e.graph(), a);
        return Element::zero(_f.graph());
      }
      auto d = _e.decompose(a);
      return _f.compose(Decomposition{
          _w.sigma.at(d.i), d.k + _w.lambdas.at(d.i) - _w.lambdas.at(d.j), _w.sigma.at(d.j)});
    }

   private:
    BasedGraph _e;
    BasedGraph _f;
    Witness    _w;
  };

  inline Element apply_witness(Graph const& gE, Graph const& gF, Witness const& w, Element const& a) {
    return WitnessMap(gE, gF, w)(a);
  }

  struct WitnessReport {
    bool        ok = false;
    std::string failure;
    std::size_t elements = 0;
    std::size_t products = 0;
    std::size_t window   = 0;
  };

  // Checks the witness on every element with |p| + |q| <= window (all
  // elements for trees): injectivity, grades, the vertex bijection, sources
  // and ranges, and phi(ab) = phi(a) phi(b) for all pairs (0 included).
  inline WitnessReport verify_witness(Graph const&   gE,
                                      Graph const&   gF,
                                      Witness const& w,
                                      std::size_t    window = default_window) {
    WitnessReport r;
    r.window = window;
    auto fail = [&](std::string msg) {
      r.ok      = false;
      r.failure = std::move(msg);
      return r;
    };
    if (!in_theorem_scope(gE) || !in_theorem_scope(gF)) {
      return fail("graphs are outside the out-degree <= 1 scope");
    }
    std::size_t n = gE.vertex_count();
    if (gF.vertex_count() != n || w.sigma.size() != n || w.lambdas.size() != n) {
      return fail("witness size does not match the vertex counts");
    }
    if (!is_permutation(w.sigma)) {
      return fail("sigma is not a bijection");
    }
    std::optional<WitnessMap> phi;
    try {
      phi.emplace(gE, gF, w);
    } catch (Error const& e) {
      return fail(e.what());
    }
    if (phi->source().base().step() != w.step || phi->target().base().step() != w.step) {
      return fail("step does not match the cycle lengths");
    }

    auto elements = enumerate_elements(gE, window);
    r.elements    = elements.size();
    std::vector<Element>                   image;
    std::map<Element, Element const*>      preimage;
    std::vector<std::optional<VertexId>>   vertex_image(n);
    std::set<VertexId>                     vertex_hits;
    for (auto const& a : elements) {
      Element b;
      try {
        b = (*phi)(a);
      } catch (Error const& e) {
        return fail(render(gE, a) + ": " + e.what());
      }
      if (b.is_zero()) {
        return fail(render(gE, a) + " maps to 0");
      }
      if (grade(b) != grade(a)) {
        return fail("grade broken: " + render(gE, a) + " (" + std::to_string(grade(a)) + ") -> "
                    + render(gF, b) + " (" + std::to_string(grade(b)) + ")");
      }
      if (auto [it, fresh] = preimage.emplace(b, &a); !fresh) {
        return fail("not injective: " + render(gE, *it->second) + " and " + render(gE, a) + " -> "
                    + render(gF, b));
      }
      if (a.is_vertex()) {
        if (!b.is_vertex()) {
          return fail("vertex " + render(gE, a) + " -> non-vertex " + render(gF, b));
        }
        vertex_image[a.p().base] = b.p().base;
        vertex_hits.insert(b.p().base);
      }
      image.push_back(std::move(b));
    }
    if (vertex_hits.size() != n) {
      return fail("vertex map is not a bijection onto the target vertices");
    }
    for (std::size_t x = 0; x < elements.size(); ++x) {
      auto const& a = elements[x];
      auto const& b = image[x];
      if (*vertex_image[path_source(a.p())] != path_source(b.p())
          || *vertex_image[path_source(a.q())] != path_source(b.q())) {
        return fail("source/range not preserved at " + render(gE, a));
      }
    }
    for (std::size_t x = 0; x < elements.size(); ++x) {
      for (std::size_t y = 0; y < elements.size(); ++y) {
        Element lhs = (*phi)(multiply(gE, elements[x], elements[y]));
        Element rhs = multiply(gF, image[x], image[y]);
        ++r.products;
        if (lhs != rhs) {
          return fail("product not preserved: (" + render(gE, elements[x]) + ")("
                      + render(gE, elements[y]) + ") -> " + render(gF, lhs) + " but images give "
                      + render(gF, rhs));
        }
      }
    }
    auto const& pe = phi->source().paths();
    auto const& pf = phi->target().paths();
    long        s  = static_cast<long>(w.step);
    for (std::size_t i = 0; i < n; ++i) {
      long lhs = static_cast<long>(pf[w.sigma[i]].length());
      long rhs = static_cast<long>(pe[i].length()) + w.c - w.lambdas[i] * s;
      if (lhs != rhs) {
        return fail("|q_sigma(" + std::to_string(i + 1) + ")| != |p_" + std::to_string(i + 1)
                    + "| + c - lambda s");
      }
    }
    r.ok = true;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Decision
  ////////////////////////////////////////////////////////////////////////

  struct Certificate {
    bool                   iso = false;
    CanonicalInvariant     invariant_e;
    CanonicalInvariant     invariant_f;
    std::optional<Witness> witness;  // iso only
    std::vector<Move>      moves;    // iso only
  };

  // Iso iff the steps and canonical invariants agree. Among the valid
  // (v0, w0, c) the witness prefers the one whose vertex bijection keeps
  // declaration positions most often, then the first in (v0, w0, c) order.
  inline Certificate decide_graded_iso(Graph const& gE, Graph const& gF) {
    require_theorem_scope(gE);
    require_theorem_scope(gF);
    Certificate cert;
    cert.invariant_e = canonical_invariant(gE);
    cert.invariant_f = canonical_invariant(gF);
    if (cert.invariant_e != cert.invariant_f || gE.vertex_count() != gF.vertex_count()) {
      return cert;
    }
    std::size_t            s = cert.invariant_e.step;
    std::optional<Witness> best;
    std::size_t            best_score = 0;
    for (VertexId v0 : base_candidates(gE)) {
      auto pe = base_paths(gE, v0);
      for (VertexId w0 : base_candidates(gF)) {
        auto pf = base_paths(gF, w0);
        for (long c = 0; c < std::max<long>(1, static_cast<long>(s)); ++c) {
          auto w = try_build_witness(gE, gF, v0, w0, c);
          if (!w) {
            continue;
          }
          std::size_t score = 0;
          for (std::size_t i = 0; i < pe.size(); ++i) {
            score += path_source(pe[i]) == path_source(pf[w->sigma[i]]);
          }
          if (!best || score > best_score) {
            best       = std::move(w);
            best_score = score;
          }
        }
      }
    }
    if (!best) {
      throw Error("internal: equal invariants but no witness");
    }
    cert.iso     = true;
    auto dE      = lpa_descriptor(gE, best->v0);
    auto dF      = lpa_descriptor(gF, best->w0);
    cert.moves   = moves_from_matching(dE.shifts, dF.shifts, best->c, best->sigma);
    cert.witness = std::move(best);
    return cert;
  }

  ////////////////////////////////////////////////////////////////////////
  // Brute force
  ////////////////////////////////////////////////////////////////////////

  using ElementMap = std::map<Element, Element>;

  inline constexpr std::size_t brute_force_vertex_limit = 6;

  namespace detail {
    struct Table {
      std::vector<Element>          elements;
      std::vector<std::vector<int>> product;  // -1 for 0
      std::vector<std::vector<long>> features;

      explicit Table(Graph const& g) {
        // Generators first so the search pins down everything else early.
        auto all = enumerate_elements(g);
        auto is_generator = [](Element const& a) { return a.size() <= 1; };
        std::stable_partition(all.begin(), all.end(), is_generator);
        elements = std::move(all);
        std::map<Element, int> index;
        for (std::size_t i = 0; i < elements.size(); ++i) {
          index.emplace(elements[i], static_cast<int>(i));
        }
        std::size_t n = elements.size();
        product.assign(n, std::vector<int>(n, -1));
        std::vector<long> row(n, 0), col(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            auto ab = multiply(g, elements[a], elements[b]);
            if (!ab.is_zero()) {
              product[a][b] = index.at(ab);
              ++row[a];
              ++col[b];
            }
          }
        }
        for (std::size_t a = 0; a < n; ++a) {
          features.push_back({grade(elements[a]),
                              product[a][a] == static_cast<int>(a) ? 1L : 0L,
                              row[a],
                              col[a]});
        }
      }
    };

    class IsoSearch {
     public:
      IsoSearch(Table const& a, Table const& b)
          : _a(a), _b(b), _f(a.elements.size(), -1), _finv(b.elements.size(), -1) {}

      std::optional<std::vector<int>> run() {
        if (_a.elements.size() != _b.elements.size()) {
          return std::nullopt;
        }
        if (search(0)) {
          return _f;
        }
        return std::nullopt;
      }

     private:
      bool search(std::size_t pos) {
        while (pos < _f.size() && _f[pos] != -1) {
          ++pos;
        }
        if (pos == _f.size()) {
          return true;
        }
        for (std::size_t y = 0; y < _b.elements.size(); ++y) {
          if (_finv[y] != -1 || _a.features[pos] != _b.features[y]) {
            continue;
          }
          std::size_t mark = _trail.size();
          if (assign(static_cast<int>(pos), static_cast<int>(y)) && search(pos + 1)) {
            return true;
          }
          undo(mark);
        }
        return false;
      }

      // Assigns x -> y and everything it forces through products with
      // already assigned elements.
      bool assign(int x0, int y0) {
        std::vector<std::pair<int, int>> queue{{x0, y0}};
        while (!queue.empty()) {
          auto [x, y] = queue.back();
          queue.pop_back();
          if (_f[x] == y) {
            continue;
          }
          if (_f[x] != -1 || _finv[y] != -1 || _a.features[x] != _b.features[y]) {
            return false;
          }
          _f[x]    = y;
          _finv[y] = x;
          _trail.push_back(x);
          for (int z : _trail) {
            int fz = _f[z];
            for (auto [pa, pb] : {std::pair{_a.product[x][z], _b.product[y][fz]},
                                  std::pair{_a.product[z][x], _b.product[fz][y]}}) {
              if ((pa < 0) != (pb < 0)) {
                return false;
              }
              if (pa >= 0) {
                queue.emplace_back(pa, pb);
              }
            }
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          int x    = _trail.back();
          _finv[_f[x]] = -1;
          _f[x]        = -1;
          _trail.pop_back();
        }
      }

      Table const&     _a;
      Table const&     _b;
      std::vector<int> _f;
      std::vector<int> _finv;
      std::vector<int> _trail;
    };
  }  // namespace detail

  // Exhaustive search for a grade-preserving isomorphism LI(E) -> LI(F) of
  // semigroups with zero. Acyclic graphs with at most 6 vertices only.
  inline std::optional<ElementMap> brute_force_iso(Graph const& gE, Graph const& gF) {
    for (Graph const* g : {&gE, &gF}) {
      if (!is_acyclic(*g)) {
        throw ScopeError("brute force needs an acyclic graph");
      }
      if (g->vertex_count() > brute_force_vertex_limit) {
        throw ScopeError("brute force is limited to " + std::to_string(brute_force_vertex_limit)
                         + " vertices");
      }
    }
    detail::Table a(gE), b(gF);
    auto          f = detail::IsoSearch(a, b).run();
    if (!f) {
      return std::nullopt;
    }
    ElementMap out;
    for (std::size_t x = 0; x < f->size(); ++x) {
      out.emplace(a.elements[x], b.elements[static_cast<std::size_t>((*f)[x])]);
    }
    return out;
  }

  // Sound for non-isomorphism only: different finite element counts rule out
  // any isomorphism of semigroups.
  struct CardinalityComparison {
    std::size_t size_e   = 0;
    std::size_t size_f   = 0;
    bool        distinct = false;
  };

  inline CardinalityComparison compare_cardinality(Graph const& gE, Graph const& gF) {
    if (!is_acyclic(gE) || !is_acyclic(gF)) {
      throw ScopeError("cardinality comparison needs acyclic graphs (finite LI(E))");
    }
    CardinalityComparison c{enumerate_elements(gE).size(), enumerate_elements(gF).size(), false};
    c.distinct = c.size_e != c.size_f;
    return c;
  }

}  // namespace leavitt

#endif  // LEAVITT_CLASSIFIER_HPP
