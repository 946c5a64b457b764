#ifndef LEAVITT_LAURENT_HPP
#define LEAVITT_LAURENT_HPP

#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>

#include "leavitt/error.hpp"
#include "leavitt/rational.hpp"

namespace leavitt {

  // An element of K[x^s, x^-s] over the rationals. Step 0 is the ground field:
  // only the exponent 0 may occur.
  class LaurentPoly {
   public:
    explicit LaurentPoly(std::size_t step = 0) : _step(step) {}

    static LaurentPoly monomial(std::size_t step, Rational coeff, long exponent) {
      LaurentPoly p(step);
      p.add_term(exponent, std::move(coeff));
      return p;
    }

    static LaurentPoly one(std::size_t step) {
      return monomial(step, 1, 0);
    }

    std::size_t step() const noexcept {
      return _step;
    }

    std::map<long, Rational> const& terms() const noexcept {
      return _terms;
    }

    bool admits_exponent(long exponent) const noexcept {
      return _step == 0 ? exponent == 0 : exponent % static_cast<long>(_step) == 0;
    }

    LaurentPoly& add_term(long exponent, Rational coeff) {
      if (!admits_exponent(exponent)) {
        throw Error("exponent " + std::to_string(exponent) + " is not a multiple of the step "
                    + std::to_string(_step));
      }
      if (coeff == 0) {
        return *this;
      }
      auto [it, fresh] = _terms.emplace(exponent, coeff);
      if (!fresh) {
        it->second += coeff;
        if (it->second == 0) {
          _terms.erase(it);
        }
      }
      return *this;
    }

    bool is_zero() const noexcept {
      return _terms.empty();
    }

    bool is_monomial() const noexcept {
      return _terms.size() == 1;
    }

    friend bool operator==(LaurentPoly const&, LaurentPoly const&) = default;

    friend LaurentPoly operator+(LaurentPoly a, LaurentPoly const& b) {
      check_step(a, b);
      for (auto const& [e, c] : b._terms) {
        a.add_term(e, c);
      }
      return a;
    }

    friend LaurentPoly operator*(LaurentPoly const& a, LaurentPoly const& b) {
      check_step(a, b);
      LaurentPoly out(a._step);
      for (auto const& [ea, ca] : a._terms) {
        for (auto const& [eb, cb] : b._terms) {
          out.add_term(ea + eb, ca * cb);
        }
      }
      return out;
    }

    std::string str() const {
      if (is_zero()) {
        return "0";
      }
      std::string out;
      for (auto const& [e, c] : _terms) {
        if (!out.empty()) {
          out += " + ";
        }
        out += leavitt::to_string(c);
        if (e != 0) {
          out += "*x^" + std::to_string(e);
        }
      }
      return out;
    }

   private:
    static void check_step(LaurentPoly const& a, LaurentPoly const& b) {
      if (a._step != b._step) {
        throw Error("Laurent polynomials over different steps");
      }
    }

    std::size_t              _step;
    std::map<long, Rational> _terms;
  };

  inline LaurentPoly laurent_mul(LaurentPoly const& a, LaurentPoly const& b) {
    return a * b;
  }

  // Units of K[x^s, x^-s] are exactly the nonzero monomials.
  inline bool is_unit(LaurentPoly const& a) {
    return a.is_monomial();
  }

  inline std::optional<LaurentPoly> inverse(LaurentPoly const& a) {
    if (!is_unit(a)) {
      return std::nullopt;
    }
    auto const& [e, c] = *a.terms().begin();
    return LaurentPoly::monomial(a.step(), Rational(1) / c, -e);
  }

}  // namespace leavitt

#endif  // LEAVITT_LAURENT_HPP
