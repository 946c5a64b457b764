#ifndef LEAVITT_ALGEBRA_HPP
#define LEAVITT_ALGEBRA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "leavitt/classifier.hpp"
#include "leavitt/element.hpp"
#include "leavitt/error.hpp"
#include "leavitt/expr.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/rational.hpp"

namespace leavitt {

  // A finite rational combination of nonzero elements of LI(E), i.e. an
  // element of the contracted semigroup algebra K_0 LI(E).
  class AlgebraElement {
   public:
    AlgebraElement() = default;

    static AlgebraElement basis(Element const& a, Rational coeff = 1) {
      AlgebraElement x;
      x.add(a, std::move(coeff));
      return x;
    }

    std::map<Element, Rational> const& coeffs() const noexcept {
      return _coeffs;
    }

    bool is_zero() const noexcept {
      return _coeffs.empty();
    }

    // The semigroup zero is the algebra zero, so adding it is a no-op.
    AlgebraElement& add(Element const& a, Rational const& coeff) {
      if (a.is_zero() || coeff == 0) {
        return *this;
      }
      auto [it, fresh] = _coeffs.emplace(a, coeff);
      if (!fresh) {
        it->second += coeff;
        if (it->second == 0) {
          _coeffs.erase(it);
        }
      }
      return *this;
    }

    friend AlgebraElement operator+(AlgebraElement a, AlgebraElement const& b) {
      for (auto const& [e, c] : b._coeffs) {
        a.add(e, c);
      }
      return a;
    }

    friend AlgebraElement operator-(AlgebraElement a, AlgebraElement const& b) {
      for (auto const& [e, c] : b._coeffs) {
        a.add(e, -c);
      }
      return a;
    }

    bool operator==(AlgebraElement const&) const = default;

   private:
    std::map<Element, Rational> _coeffs;
  };

  inline AlgebraElement multiply(Graph const& g, AlgebraElement const& a, AlgebraElement const& b) {
    AlgebraElement out;
    for (auto const& [x, cx] : a.coeffs()) {
      for (auto const& [y, cy] : b.coeffs()) {
        out.add(multiply(g, x, y), cx * cy);
      }
    }
    return out;
  }

  inline std::string render(Graph const& g, AlgebraElement const& a) {
    if (a.is_zero()) {
      return "0";
    }
    std::string out;
    for (auto const& [e, c] : a.coeffs()) {
      bool neg = c < 0;
      Rational mag = neg ? Rational(-c) : c;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (mag != 1) {
        out += to_string(mag) + " ";
      }
      out += render(g, e);
    }
    return out;
  }

  inline nlohmann::json algebra_element_to_json(Graph const& g, AlgebraElement const& a) {
    auto out = nlohmann::json::array();
    for (auto const& [e, c] : a.coeffs()) {
      out.push_back({{"coeff", to_string(c)}, {"element", render(g, e)}});
    }
    return out;
  }

  namespace detail {
    inline void require_acyclic(Graph const& g) {
      if (!is_acyclic(g)) {
        throw ScopeError("graph has a cycle; LI(E) is infinite and the algebra is "
                         "infinite-dimensional");
      }
    }
  }  // namespace detail

  // product[a][b] is the index of the basis element ab, or -1 for 0.
  struct StructureTable {
    std::vector<Element>          basis;
    std::vector<std::vector<int>> product;

    std::size_t index_of(Element const& a) const {
      auto it = std::lower_bound(basis.begin(), basis.end(), a, element_order);
      if (it == basis.end() || *it != a) {
        throw Error("not a basis element");
      }
      return static_cast<std::size_t>(it - basis.begin());
    }
  };

  inline StructureTable structure_constants(Graph const& g) {
    detail::require_acyclic(g);
    StructureTable t{enumerate_elements(g), {}};
    std::size_t    n = t.basis.size();
    t.product.assign(n, std::vector<int>(n, -1));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto ab = multiply(g, t.basis[a], t.basis[b]);
        if (!ab.is_zero()) {
          t.product[a][b] = static_cast<int>(t.index_of(ab));
        }
      }
    }
    return t;
  }

  // v - sum_{s(e)=v} ee* for every v of out-degree >= 2. Out-degree 1
  // vertices need nothing: ee* = s(e) already holds in LI(E).
  inline std::vector<AlgebraElement> ck_ideal_generators(Graph const& g) {
    detail::require_acyclic(g);
    std::vector<AlgebraElement> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.out_degree(v) < 2) {
        continue;
      }
      auto x = AlgebraElement::basis(Element::vertex(g, v));
      for (EdgeId e : g.out_edges(v)) {
        x.add(multiply(g, Element::edge(g, e), Element::ghost(g, e)), -1);
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  inline constexpr std::size_t default_max_size = 4096;

  namespace detail {
    using SparseRow = std::map<std::size_t, Rational>;

    // Row echelon basis keyed by leading column, each row with leading
    // coefficient 1.
    class Echelon {
     public:
      // Reduces v; keeps it and returns true if it is independent.
      bool insert(SparseRow v) {
        while (!v.empty()) {
          auto [lead, coeff] = *v.begin();
          auto it            = _rows.find(lead);
          if (it == _rows.end()) {
            Rational inv = 1 / coeff;
            for (auto& [col, c] : v) {
              c *= inv;
            }
            _rows.emplace(lead, std::move(v));
            return true;
          }
          Rational f = coeff;
          for (auto const& [col, c] : it->second) {
            auto& slot = v[col];
            slot -= f * c;
            if (slot == 0) {
              v.erase(col);
            }
          }
        }
        return false;
      }

      std::size_t rank() const noexcept {
        return _rows.size();
      }

     private:
      std::map<std::size_t, SparseRow> _rows;
    };
  }  // namespace detail

  // dim K_0 LI(E) - dim <generators>, the two-sided ideal found by closing the
  // generators under left and right multiplication by basis elements.
  inline std::size_t quotient_dimension(Graph const& g, std::size_t max_size = default_max_size) {
    detail::require_acyclic(g);
    auto elements = enumerate_elements(g);
    if (elements.size() > max_size) {
      throw ScopeError("LI(E) has " + std::to_string(elements.size())
                       + " nonzero elements, above the limit " + std::to_string(max_size));
    }
    auto t = structure_constants(g);
    auto n = t.basis.size();

    detail::Echelon                 span;
    std::vector<detail::SparseRow> queue;
    for (auto const& x : ck_ideal_generators(g)) {
      detail::SparseRow row;
      for (auto const& [e, c] : x.coeffs()) {
        row.emplace(t.index_of(e), c);
      }
      queue.push_back(std::move(row));
    }
    while (!queue.empty()) {
      auto v = std::move(queue.back());
      queue.pop_back();
      if (!span.insert(v)) {
        continue;
      }
      for (std::size_t a = 0; a < n; ++a) {
        detail::SparseRow left, right;
        for (auto const& [col, c] : v) {
          if (int p = t.product[a][col]; p >= 0) {
            left[static_cast<std::size_t>(p)] += c;
          }
          if (int p = t.product[col][a]; p >= 0) {
            right[static_cast<std::size_t>(p)] += c;
          }
        }
        for (auto* row : {&left, &right}) {
          std::erase_if(*row, [](auto const& kv) { return kv.second == 0; });
          if (!row->empty()) {
            queue.push_back(std::move(*row));
          }
        }
      }
    }
    return n - span.rank();
  }

  // sum over sinks v of (number of paths ending at v)^2
  inline std::size_t lpa_dimension_acyclic(Graph const& g) {
    std::size_t total = 0;
    for (auto const& d : lpa_descriptors_acyclic(g)) {
      total += d.n() * d.n();
    }
    return total;
  }

  // The linear extension of the witness map on the window: basis products
  // go to basis products and homogeneous elements stay homogeneous of the
  // same degree.
  inline WitnessReport induced_algebra_iso_check(Graph const&   gE,
                                                 Graph const&   gF,
                                                 Witness const& w,
                                                 std::size_t    window = default_window) {
    WitnessReport r;
    r.window = window;
    std::optional<WitnessMap> phi;
    try {
      phi.emplace(gE, gF, w);
    } catch (Error const& e) {
      r.failure = e.what();
      return r;
    }
    auto lift = [&](AlgebraElement const& x) {
      AlgebraElement out;
      for (auto const& [e, c] : x.coeffs()) {
        out.add((*phi)(e), c);
      }
      return out;
    };
    auto elements = enumerate_elements(gE, window);
    r.elements    = elements.size();
    try {
      for (auto const& a : elements) {
        auto image = lift(AlgebraElement::basis(a));
        if (image.coeffs().size() != 1 || grade(image.coeffs().begin()->first) != grade(a)) {
          r.failure = "degree not preserved at " + render(gE, a);
          return r;
        }
      }
      for (auto const& a : elements) {
        for (auto const& b : elements) {
          auto xa = AlgebraElement::basis(a, 2);
          auto xb = AlgebraElement::basis(b, 3) + AlgebraElement::basis(a, -1);
          ++r.products;
          if (lift(multiply(gE, xa, xb)) != multiply(gF, lift(xa), lift(xb))) {
            r.failure = "product not preserved: (" + render(gE, xa) + ")(" + render(gE, xb) + ")";
            return r;
          }
        }
      }
    } catch (Error const& e) {
      r.failure = e.what();
      return r;
    }
    r.ok = true;
    return r;
  }

}  // namespace leavitt

#endif  // LEAVITT_ALGEBRA_HPP
