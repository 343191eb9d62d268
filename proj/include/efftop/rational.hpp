#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "efftop/kernel.hpp"

namespace efftop {

// Exact rationals; cpp_rational keeps gcd(|num|, den) = 1 and den >= 1.
using Rational = boost::multiprecision::cpp_rational;

inline Rational pow2(long e) {
  if (e >= 0) return Rational(Nat(1) << e);
  return Rational(1, Nat(1) << (-e));
}

std::string to_string(const Rational& q);

// "-3/7", "5", "0.25" are accepted; returns the position of the first bad
// character on failure.
struct RationalParse {
  std::optional<Rational> value;
  std::size_t error_pos = 0;
};
RationalParse parse_rational(const std::string& text);

}  // namespace efftop
