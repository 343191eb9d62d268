#pragma once

// Exact sign determination for sums of square roots of rationals:
// expressions q + s*sqrt(A), q + s*sqrt(A) + t*sqrt(B), and the four-term
// form needed by the Euclidean comparisons on the rational unit square.
// Everything is decided by case analysis and repeated squaring; no
// floating point, no factoring.

#include "efftop/rational.hpp"

namespace efftop {

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// sign of q + s*sqrt(A), A >= 0
int sign1(const Rational& q, const Rational& s, const Rational& A);

// sign of q + s*sqrt(A) + t*sqrt(B), A, B >= 0
int sign2(const Rational& q, const Rational& s, const Rational& A, const Rational& t,
          const Rational& B);

// sign of c0 + c1*sqrt(A) + c2*sqrt(B) + c3*sqrt(D), all radicands >= 0
int sign3(const Rational& c0, const Rational& c1, const Rational& A, const Rational& c2,
          const Rational& B, const Rational& c3, const Rational& D);

// sqrt(A) as an exact rational when A is a perfect square of a rational
std::optional<Rational> rational_sqrt(const Rational& A);

}  // namespace efftop
