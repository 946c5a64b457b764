#ifndef LEAVITT_RATIONAL_HPP
#define LEAVITT_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace leavitt {

  using Rational = boost::multiprecision::cpp_rational;

  inline std::string to_string(Rational const& r) {
    return r.str();
  }

}  // namespace leavitt

#endif  // LEAVITT_RATIONAL_HPP
