#include "efftop/sqrtsum.hpp"

#include <stdexcept>

namespace efftop {

std::optional<Rational> rational_sqrt(const Rational& A) {
  if (A < 0) return std::nullopt;
  Nat p = numerator(A), q = denominator(A);
  Nat rp = boost::multiprecision::sqrt(p), rq = boost::multiprecision::sqrt(q);
  if (rp * rp == p && rq * rq == q) return Rational(rp, rq);
  return std::nullopt;
}

int sign1(const Rational& q, const Rational& s, const Rational& A) {
  if (A < 0) throw std::invalid_argument("negative radicand");
  if (s == 0 || A == 0) return sign_of(q);
  if (auto r = rational_sqrt(A)) return sign_of(q + s * *r);
  if (s > 0 && q >= 0) return 1;
  if (s < 0 && q <= 0) return -1;
  // opposite signs: compare q^2 against s^2 A
  int cmp = sign_of(q * q - s * s * A);
  return q > 0 ? cmp : -cmp;
}

int sign2(const Rational& q, const Rational& s, const Rational& A, const Rational& t,
          const Rational& B) {
  if (s == 0 || A == 0) return sign1(q, t, B);
  if (t == 0 || B == 0) return sign1(q, s, A);
  if (A == B) return sign1(q, s + t, A);
  int sx = sign1(q, s, A);  // X = q + s sqrt(A)
  int sy = sign_of(t);      // Y = t sqrt(B), B > 0
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // opposite (or sy == 0 handled: then sx): compare X^2 with Y^2
  if (sy == 0) return sx;
  int d = sign1(q * q + s * s * A - t * t * B, 2 * q * s, A);
  return sx > 0 ? d : -d;
}

int sign3(const Rational& c0, const Rational& c1, const Rational& A, const Rational& c2,
          const Rational& B, const Rational& c3, const Rational& D) {
  if (c1 == 0 || A == 0) return sign2(c0, c2, B, c3, D);
  if (c2 == 0 || B == 0) return sign2(c0, c1, A, c3, D);
  if (c3 == 0 || D == 0) return sign2(c0, c1, A, c2, B);
  if (A == B) return sign2(c0, c1 + c2, A, c3, D);
  if (A == D) return sign2(c0, c1 + c3, A, c2, B);
  if (B == D) return sign2(c0, c1, A, c2 + c3, B);
  // P = c0 + c1 sqrt(A), Q = c2 sqrt(B) + c3 sqrt(D)
  int sp = sign1(c0, c1, A);
  int sq;
  if (c2 >= 0 && c3 >= 0)
    sq = 1;
  else if (c2 <= 0 && c3 <= 0)
    sq = -1;
  else
    sq = sign_of(c2) * sign_of(c2 * c2 * B - c3 * c3 * D);
  if (sp == 0) return sq;
  if (sq == 0) return sp;
  if (sp == sq) return sp;
  // opposite: sign(P + Q) = sp * sign(P^2 - Q^2)
  // P^2 = (c0^2 + c1^2 A) + 2 c0 c1 sqrt(A);  Q^2 = (c2^2 B + c3^2 D) + 2 c2 c3 sqrt(BD)
  Rational u = c0 * c0 + c1 * c1 * A - (c2 * c2 * B + c3 * c3 * D);
  int d = sign2(u, 2 * c0 * c1, A, -2 * c2 * c3, B * D);
  return sp > 0 ? d : -d;
}

}  // namespace efftop
