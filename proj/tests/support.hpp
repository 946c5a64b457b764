#ifndef LEAVITT_TESTS_SUPPORT_HPP
#define LEAVITT_TESTS_SUPPORT_HPP

// Fixture loading, graph generators and independent oracles shared by the
// unit tests and the acceptance runner.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "leavitt/leavitt.hpp"

#ifndef LEAVITT_GRAPHS_DIR
#error "LEAVITT_GRAPHS_DIR must point at the graph fixtures"
#endif

namespace support {

  using namespace leavitt;

  inline std::string graph_path(std::string const& name) {
    return std::string(LEAVITT_GRAPHS_DIR) + "/" + name + ".graph";
  }

  inline Graph fixture(std::string const& name) {
    return load_graph(graph_path(name));
  }

  inline Element expr(Graph const& g, std::string const& text) {
    return parse_element_expr(g, text);
  }

  inline Path path_of(Graph const& g, std::string const& text) {
    // "v3" for an empty path, otherwise space separated edge names
    if (auto v = g.find_vertex(text)) {
      return Path::empty_at(*v);
    }
    std::vector<EdgeId> edges;
    std::string         cur;
    for (char ch : text + " ") {
      if (ch == ' ') {
        if (!cur.empty()) {
          edges.push_back(g.edge_id(cur));
        }
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return make_path(g, edges);
  }

  ////////////////////////////////////////////////////////////////////////
  // Generators
  ////////////////////////////////////////////////////////////////////////

  // In-tree rooted at vertex 0: vertex i > 0 has the single edge i -> parent[i].
  inline Graph tree_from_parents(std::vector<std::size_t> const& parent) {
    std::vector<std::string> vs;
    std::vector<Edge>        es;
    for (std::size_t i = 0; i < parent.size(); ++i) {
      vs.push_back("t" + std::to_string(i));
    }
    for (std::size_t i = 1; i < parent.size(); ++i) {
      es.push_back(Edge{"a" + std::to_string(i), i, parent[i]});
    }
    return Graph(vs, es);
  }

  // Every parent array with parent[i] < i, for 1 <= n <= max_n.
  inline std::vector<std::vector<std::size_t>> all_parent_arrays(std::size_t max_n) {
    std::vector<std::vector<std::size_t>> out;
    std::function<void(std::vector<std::size_t>&, std::size_t)> rec =
        [&](std::vector<std::size_t>& cur, std::size_t n) {
          if (cur.size() == n) {
            out.push_back(cur);
            return;
          }
          for (std::size_t p = 0; p < cur.size(); ++p) {
            cur.push_back(p);
            rec(cur, n);
            cur.pop_back();
          }
        };
    for (std::size_t n = 1; n <= max_n; ++n) {
      std::vector<std::size_t> cur{0};
      rec(cur, n);
    }
    return out;
  }

  // AHU encoding of the rooted tree.
  inline std::string tree_canon(std::vector<std::size_t> const& parent) {
    std::vector<std::vector<std::size_t>> children(parent.size());
    for (std::size_t i = 1; i < parent.size(); ++i) {
      children[parent[i]].push_back(i);
    }
    std::function<std::string(std::size_t)> enc = [&](std::size_t v) {
      std::vector<std::string> parts;
      for (auto c : children[v]) {
        parts.push_back(enc(c));
      }
      std::sort(parts.begin(), parts.end());
      std::string s = "(";
      for (auto const& p : parts) {
        s += p;
      }
      return s + ")";
    };
    return enc(0);
  }

  // One representative per unlabeled rooted tree with at most max_n vertices.
  inline std::vector<Graph> unlabeled_trees(std::size_t max_n) {
    std::set<std::string> seen;
    std::vector<Graph>    out;
    for (auto const& p : all_parent_arrays(max_n)) {
      if (seen.insert(tree_canon(p)).second) {
        out.push_back(tree_from_parents(p));
      }
    }
    return out;
  }

  // Connected graph of out-degree exactly 1 whose cycle is a loop: a random
  // in-tree towards a looped root, with vertices declared in shuffled order.
  inline Graph random_loop_graph(std::size_t n, std::mt19937& rng) {
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) {
      label[i] = i;
    }
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<std::string> vs(n);
    for (std::size_t i = 0; i < n; ++i) {
      vs[label[i]] = "x" + std::to_string(i);
    }
    std::vector<Edge> es{Edge{"loop", label[0], label[0]}};
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      es.push_back(Edge{"a" + std::to_string(i), label[i], label[pick(rng)]});
    }
    return Graph(vs, es);
  }

  // Connected acyclic simple graph on n vertices with edges i -> j (i < j)
  // given by bit k of mask for the k-th pair; nullopt if disconnected or some
  // out-degree exceeds max_out.
  inline std::optional<Graph> dag_from_mask(std::size_t n, unsigned long mask, std::size_t max_out) {
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back("d" + std::to_string(i));
    }
    std::vector<Edge>        es;
    std::vector<std::size_t> out(n, 0);
    std::size_t              k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        if (mask >> k & 1UL) {
          es.push_back(Edge{"g" + std::to_string(k), i, j});
          if (++out[i] > max_out) {
            return std::nullopt;
          }
        }
      }
    }
    Graph g(vs, es);
    if (!is_connected(g)) {
      return std::nullopt;
    }
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rewriting oracle
  ////////////////////////////////////////////////////////////////////////

  // A letter of a word over the generators: a vertex, an edge, or a ghost.
  struct Letter {
    enum Kind { vertex, edge, ghost } kind;
    std::size_t id;
  };

  inline VertexId letter_source(Graph const& g, Letter l) {
    switch (l.kind) {
      case Letter::vertex: return l.id;
      case Letter::edge: return g.source(l.id);
      default: return g.range(l.id);
    }
  }

  inline VertexId letter_range(Graph const& g, Letter l) {
    switch (l.kind) {
      case Letter::vertex: return l.id;
      case Letter::edge: return g.range(l.id);
      default: return g.source(l.id);
    }
  }

  // Rewrites adjacent pairs by the defining relations until nothing applies:
  //   vv -> v, v e -> e, e r(e) -> e, e* e -> r(e), e e* -> s(e) when s(e)
  //   has out-degree 1, and every non-composable pair or e* f (e != f) -> 0.
  // Returns nullopt for 0.
  inline std::optional<std::vector<Letter>> rewrite(Graph const& g, std::vector<Letter> w) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Letter a = w[i], b = w[i + 1];
        if (letter_range(g, a) != letter_source(g, b)) {
          return std::nullopt;
        }
        std::optional<Letter> replacement;
        bool                  applies = true;
        if (a.kind == Letter::vertex) {
          replacement = b;
        } else if (b.kind == Letter::vertex) {
          replacement = a;
        } else if (a.kind == Letter::ghost && b.kind == Letter::edge) {
          if (a.id != b.id) {
            return std::nullopt;
          }
          replacement = Letter{Letter::vertex, g.range(a.id)};
        } else if (a.kind == Letter::edge && b.kind == Letter::ghost && a.id == b.id
                   && g.out_degree(g.source(a.id)) == 1) {
          replacement = Letter{Letter::vertex, g.source(a.id)};
        } else {
          applies = false;
        }
        if (applies) {
          w[i] = *replacement;
          w.erase(w.begin() + static_cast<long>(i) + 1);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  // The normal form read off a fully rewritten word (edges then ghosts).
  inline Element word_to_element(Graph const& g, std::optional<std::vector<Letter>> const& w) {
    if (!w) {
      return Element::zero(g);
    }
    if (w->size() == 1 && w->front().kind == Letter::vertex) {
      return Element::vertex(g, w->front().id);
    }
    std::vector<EdgeId> p, q;
    for (auto l : *w) {
      if (l.kind == Letter::edge) {
        p.push_back(l.id);
      } else if (l.kind == Letter::ghost) {
        q.insert(q.begin(), l.id);
      } else {
        throw Error("oracle: vertex left inside a reduced word");
      }
    }
    Path pp = p.empty() ? Path{} : make_path(g, p);
    Path qq = q.empty() ? Path{} : make_path(g, q);
    if (p.empty()) {
      pp = Path::empty_at(path_range(g, qq));
    }
    if (q.empty()) {
      qq = Path::empty_at(path_range(g, pp));
    }
    if (!is_normal(g, pp, qq)) {
      throw Error("oracle: reduced word is not in normal form");
    }
    return normalize(g, pp, qq);
  }

  inline Element letter_element(Graph const& g, Letter l) {
    switch (l.kind) {
      case Letter::vertex: return Element::vertex(g, l.id);
      case Letter::edge: return Element::edge(g, l.id);
      default: return Element::ghost(g, l.id);
    }
  }

  // Mostly composable random words, with occasional arbitrary letters.
  inline std::vector<Letter> random_word(Graph const& g, std::mt19937& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_d(1, max_len);
    std::uniform_int_distribution<int>         pct(0, 99);
    std::size_t                                len = len_d(rng);
    VertexId at = std::uniform_int_distribution<std::size_t>(0, g.vertex_count() - 1)(rng);
    std::vector<Letter> w;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Letter> options{Letter{Letter::vertex, at}};
      for (EdgeId e : g.out_edges(at)) {
        options.push_back(Letter{Letter::edge, e});
      }
      for (EdgeId e : g.in_edges(at)) {
        options.push_back(Letter{Letter::ghost, e});
      }
      if (pct(rng) < 5 && g.edge_count() > 0) {
        auto e = std::uniform_int_distribution<std::size_t>(0, g.edge_count() - 1)(rng);
        options = {Letter{pct(rng) < 50 ? Letter::edge : Letter::ghost, e}};
      }
      Letter l = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      w.push_back(l);
      at = letter_range(g, l);
    }
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Inversion oracle for Laurent polynomials
  ////////////////////////////////////////////////////////////////////////

  // Tries to solve a * y = 1 for y supported on multiples of the step in
  // [-bound, bound] by exact Gaussian elimination.
  inline bool solvable_inverse(LaurentPoly const& a, long bound) {
    if (a.is_zero()) {
      return false;
    }
    long s = static_cast<long>(a.step() == 0 ? 1 : a.step());
    std::vector<long> ys;
    for (long e = -bound; e <= bound; e += s) {
      if (a.step() != 0 || e == 0) {
        ys.push_back(e);
      }
    }
    long lo = a.terms().begin()->first + ys.front();
    long hi = a.terms().rbegin()->first + ys.back();
    std::vector<long> rows;
    for (long m = lo; m <= hi; m += s) {
      rows.push_back(m);
    }
    // augmented matrix [A | b]
    std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(ys.size() + 1, 0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < ys.size(); ++c) {
        auto it = a.terms().find(rows[r] - ys[c]);
        if (it != a.terms().end()) {
          m[r][c] = it->second;
        }
      }
      m[r][ys.size()] = rows[r] == 0 ? 1 : 0;
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ys.size() && rank < rows.size(); ++c) {
      std::size_t piv = rank;
      while (piv < rows.size() && m[piv][c] == 0) {
        ++piv;
      }
      if (piv == rows.size()) {
        continue;
      }
      std::swap(m[piv], m[rank]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r != rank && m[r][c] != 0) {
          Rational f = m[r][c] / m[rank][c];
          for (std::size_t k = c; k <= ys.size(); ++k) {
            m[r][k] -= f * m[rank][k];
          }
        }
      }
      ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (m[r][ys.size()] != 0) {
        return false;
      }
    }
    return true;
  }

  // Every step-2 polynomial with support <= 3, exponents in [-6, 6] and
  // coefficients in {-2, -1, 1, 2}, the zero polynomial included.
  inline std::vector<LaurentPoly> small_step2_polys() {
    std::vector<long>     exps{-6, -4, -2, 0, 2, 4, 6};
    std::vector<Rational> coeffs{-2, -1, 1, 2};
    std::vector<LaurentPoly> out{LaurentPoly(2)};
    std::function<void(std::size_t, LaurentPoly, std::size_t)> rec =
        [&](std::size_t from, LaurentPoly cur, std::size_t left) {
          if (left == 0) {
            return;
          }
          for (std::size_t i = from; i < exps.size(); ++i) {
            for (auto const& c : coeffs) {
              LaurentPoly next = cur;
              next.add_term(exps[i], c);
              out.push_back(next);
              rec(i + 1, next, left - 1);
            }
          }
        };
    rec(0, LaurentPoly(2), 3);
    return out;
  }

}  // namespace support

#endif  // LEAVITT_TESTS_SUPPORT_HPP
