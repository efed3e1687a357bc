#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pdef {

  using Integer  = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  // "a/b" in lowest terms, or "a" when the denominator is 1.
  inline std::string to_string(Rational const& q) {
    return q.str();
  }

  inline Rational rational_from_string(std::string const& text) {
    return Rational(text);
  }

}  // namespace pdef
