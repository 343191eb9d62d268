#include <doctest.h>

#include "efftop/reals.hpp"
#include "fixtures.hpp"

using namespace efftop;
using efftop::testing::reg_diverge;
using efftop::testing::reg_seq;
using efftop::testing::sqrt_bounds;

namespace {

struct Fix {
  Kernel k;
  RealsLib r{k};
};

}  // namespace

TEST_CASE("c_Q codec matches the numbering formula") {
  CHECK(cq_decode(pair3(Nat(0), Nat(0), Nat(0))) == Rational(0));
  CHECK(cq_decode(pair3(Nat(0), Nat(1), Nat(1))) == Rational(1, 2));
  CHECK(cq_decode(pair3(Nat(1), Nat(3), Nat(0))) == Rational(-3));
  // encode/decode denote the same rational
  for (int num = -12; num <= 12; ++num)
    for (int den = 1; den <= 7; ++den) {
      Rational q(num, den);
      CHECK(cq_decode(cq_encode(q)) == q);
    }
  // non-canonical names decode too (total numbering)
  CHECK(cq_decode(Nat(123456)) == cq_decode(cq_encode(cq_decode(Nat(123456)))));
}

TEST_CASE("rational literals parse and print") {
  CHECK(parse_rational("-3/7").value == Rational(-3, 7));
  CHECK(parse_rational("5").value == Rational(5));
  CHECK(parse_rational("0.25").value == Rational(1, 4));
  CHECK(!parse_rational("1//2").value);
  CHECK(parse_rational("1//2").error_pos == 2);
  CHECK(to_string(Rational(-3, 7)) == "-3/7");
  CHECK(to_string(Rational(4)) == "4");
}

TEST_CASE("constant cauchy approximates exactly") {
  Fix f;
  CauchyReal z = f.r.constant(Rational(0));
  auto q = f.r.approx(z, 10, 100);
  REQUIRE(q);
  CHECK(*q == 0);
  CHECK(f.r.constant_value(z) == Rational(0));
}

TEST_CASE("sqrt(2) approximations satisfy the interval oracle") {
  Fix f;
  CauchyReal s2 = f.r.sqrt_of(Rational(2));
  auto q = f.r.approx(s2, 10, 100);
  REQUIRE(q);
  // |q^2 - 2| < 3 * 2^-9
  Rational err = *q * *q - 2;
  if (err < 0) err = -err;
  CHECK(err < 3 * pow2(-9));
  // the cauchy modulus between all precisions up to 20
  for (unsigned n = 0; n <= 20; ++n)
    for (unsigned m = 0; m <= 20; m += 5) {
      Rational qn = *f.r.approx(s2, n, 100);
      Rational qm = *f.r.approx(s2, m, 100);
      Rational d = qn - qm;
      if (d < 0) d = -d;
      CHECK(d < pow2(-static_cast<long>(n)) + pow2(-static_cast<long>(m)));
    }
}

TEST_CASE("diverging cauchy name yields NOT_YET") {
  Fix f;
  CauchyReal bogus{reg_diverge(f.k)};
  CHECK(!f.r.approx(bogus, 3, 100000));
}

TEST_CASE("cauchy arithmetic add sub min") {
  Fix f;
  CauchyReal one = f.r.constant(Rational(1));
  CauchyReal third = f.r.constant(Rational(1, 3));
  CauchyReal half = f.r.constant(Rational(1, 2));

  CauchyReal zero = f.r.sub(one, one);
  for (unsigned n = 0; n <= 12; ++n) {
    auto q = f.r.approx(zero, n, 1000);
    REQUIRE(q);
    Rational a = *q < 0 ? -*q : *q;
    CHECK(a < pow2(-static_cast<long>(n)));
  }

  CauchyReal m = f.r.min(half, third);
  auto qm = f.r.approx(m, 10, 1000);
  REQUIRE(qm);
  CHECK(*qm == Rational(1, 3));  // exact on constant inputs

  CauchyReal s2 = f.r.sqrt_of(Rational(2));
  CauchyReal twice = f.r.add(s2, s2);
  auto q8 = f.r.approx(twice, 8, 10000);
  REQUIRE(q8);
  auto [lo, hi] = sqrt_bounds(Rational(2), 24);
  // 2*sqrt2 in [2lo, 2hi]; |q8 - 2 sqrt2| < 2^-8
  CHECK(*q8 - 2 * hi < pow2(-8));
  CHECK(2 * lo - *q8 < pow2(-8));
}

TEST_CASE("semidecide_lt is sound and complete on witnessed gaps") {
  Fix f;
  CauchyReal zero = f.r.constant(Rational(0));
  CauchyReal one = f.r.constant(Rational(1));
  CHECK(f.r.semidecide_lt(zero, one, 1000) == Verdict::yes);
  // equality is never confirmed
  CHECK(f.r.semidecide_lt(one, f.r.constant(Rational(1)), 100000) == Verdict::not_yet);
  CHECK(f.r.semidecide_lt(one, one, 100000) == Verdict::not_yet);
  // gap 1/6 confirmed fast
  CHECK(f.r.semidecide_lt(f.r.constant(Rational(1, 3)), f.r.constant(Rational(1, 2)), 10000) ==
        Verdict::yes);
  // never YES in the wrong direction
  CHECK(f.r.semidecide_lt(one, zero, 100000) == Verdict::not_yet);
}

TEST_CASE("cauchy_to_left emits nondecreasing strict lower bounds") {
  Fix f;
  // constant 1: first term 1 - 1 = 0
  LeftReal l1 = f.r.cauchy_to_left(f.r.constant(Rational(1)));
  auto e0 = f.r.left_emit(l1, 0, 1000);
  REQUIRE(e0);
  CHECK(*e0 == 0);

  // constant 0: terms -1, -1/2, -1/4, ...
  LeftReal l0 = f.r.cauchy_to_left(f.r.constant(Rational(0)));
  CHECK(*f.r.left_emit(l0, 0, 1000) == Rational(-1));
  CHECK(*f.r.left_emit(l0, 1, 1000) == Rational(-1, 2));
  CHECK(*f.r.left_emit(l0, 2, 1000) == Rational(-1, 4));

  // sqrt2: every emitted term t has t^2 < 2, and terms are nondecreasing
  LeftReal ls = f.r.cauchy_to_left(f.r.sqrt_of(Rational(2)));
  Rational prev;
  bool has_prev = false;
  for (unsigned slot = 0; slot <= 12; ++slot) {
    auto t = f.r.left_emit(ls, slot, 10000);
    REQUIRE(t);
    CHECK(*t * *t < 2);
    if (has_prev) CHECK(*t >= prev);
    prev = *t;
    has_prev = true;
  }
}

TEST_CASE("left_min denotes the min") {
  Fix f;
  LeftReal a = f.r.left_constant(Rational(1));
  LeftReal b = f.r.left_constant(Rational(2));
  // min(x, x) == x emissions
  LeftReal mm = f.r.left_min(a, a);
  for (unsigned s = 0; s < 6; ++s) CHECK(*f.r.left_emit(mm, s, 1000) == *f.r.left_emit(a, s, 1000));
  // min(1, 2) emissions approach 1
  LeftReal m12 = f.r.left_min(a, b);
  CHECK(*f.r.left_emit(m12, 10, 1000) == Rational(1) - pow2(-10));
}

TEST_CASE("left_sup over families") {
  Fix f;
  // singleton family {constant 1}
  Nat single = reg_seq(f.k, [&](const Nat& slot) -> std::optional<Nat> {
    if (slot == 0) return f.r.left_constant(Rational(1)).name;
    return std::nullopt;
  });
  LeftReal sup1 = f.r.left_sup(single);
  bool exceeded = false;
  for (unsigned s = 0; s < 40 && !exceeded; ++s) {
    auto v = f.r.left_emit(sup1, s, 100000);
    if (!v) break;
    CHECK(*v < 1);  // strict lower bounds of the denotation
    if (*v > 1 - pow2(-8)) exceeded = true;
  }
  CHECK(exceeded);

  // family {1 - 2^-k}: sup denotes 1; emissions exceed 1 - 2^-10
  Nat fam = reg_seq(f.k, [&](const Nat& slot) -> std::optional<Nat> {
    long e = static_cast<long>(to_u64(slot));
    return f.r.left_constant(Rational(1) - pow2(-e)).name;
  });
  LeftReal sup = f.r.left_sup(fam);
  exceeded = false;
  for (unsigned s = 0; s < 2000 && !exceeded; ++s) {
    auto v = f.r.left_emit(sup, s, 100000);
    REQUIRE(v);
    CHECK(*v < 1);
    if (*v > 1 - pow2(-10)) exceeded = true;
  }
  CHECK(exceeded);

  // family {k}: unbounded
  Nat unb = reg_seq(f.k, [&](const Nat& slot) -> std::optional<Nat> {
    return f.r.left_constant(Rational(slot)).name;
  });
  LeftReal sup_inf = f.r.left_sup(unb);
  bool big = false;
  for (unsigned s = 0; s < 2000 && !big; ++s) {
    auto v = f.r.left_emit(sup_inf, s, 100000);
    REQUIRE(v);
    if (*v > 5) big = true;
  }
  CHECK(big);
}

TEST_CASE("lt_left semidecides x < l") {
  Fix f;
  LeftReal l = f.r.left_constant(Rational(1));
  CauchyReal half = f.r.constant(Rational(1, 2));
  CauchyReal two = f.r.constant(Rational(2));
  RunResult yes = eval_name(f.k, f.r.lt_left_name(half, l), Nat(0), 100000);
  CHECK(yes.halted());
  RunResult no = eval_name(f.k, f.r.lt_left_name(two, l), Nat(0), 100000);
  CHECK(!no.halted());
}

TEST_CASE("limit of fast sequences") {
  Fix f;
  // constant sequence at sqrt2 co-denotes sqrt2
  CauchyReal s2 = f.r.sqrt_of(Rational(2));
  Nat cseq = reg_seq(f.k, [&](const Nat&) { return std::optional<Nat>(s2.name); });
  CauchyReal lim = f.r.limit(cseq);
  for (unsigned n = 0; n <= 10; ++n) {
    Rational a = *f.r.approx(lim, n, 100000);
    Rational b = *f.r.approx(s2, n, 100000);
    Rational d = a - b;
    if (d < 0) d = -d;
    CHECK(d < 2 * pow2(-static_cast<long>(n)));
  }

  // x_k = 1 - 2^-k denotes 1
  Nat seq1 = reg_seq(f.k, [&](const Nat& slot) -> std::optional<Nat> {
    long e = static_cast<long>(to_u64(slot));
    return f.r.constant(Rational(1) - pow2(-e)).name;
  });
  CauchyReal l1 = f.r.limit(seq1);
  for (unsigned n = 0; n <= 10; ++n) {
    Rational a = *f.r.approx(l1, n, 100000);
    Rational d = a - 1;
    if (d < 0) d = -d;
    CHECK(d < pow2(-static_cast<long>(n)));
  }

  // x_k = 2^-k denotes 0
  Nat seq0 = reg_seq(f.k, [&](const Nat& slot) -> std::optional<Nat> {
    long e = static_cast<long>(to_u64(slot));
    return f.r.constant(pow2(-e)).name;
  });
  CauchyReal l0 = f.r.limit(seq0);
  Rational a = *f.r.approx(l0, 10, 100000);
  if (a < 0) a = -a;
  CHECK(a < pow2(-10));
}

TEST_CASE("cauchy modulus holds across shipped constructors") {
  Fix f;
  std::vector<CauchyReal> xs = {
      f.r.constant(Rational(7, 3)),
      f.r.sqrt_of(Rational(5)),
      f.r.add(f.r.sqrt_of(Rational(2)), f.r.constant(Rational(-1, 4))),
      f.r.sub(f.r.constant(Rational(1, 3)), f.r.sqrt_of(Rational(3))),
      f.r.min(f.r.sqrt_of(Rational(2)), f.r.constant(Rational(3, 2))),
  };
  for (auto& x : xs) {
    for (unsigned n = 0; n <= 16; n += 4)
      for (unsigned m = 2; m <= 18; m += 4) {
        Rational qn = *f.r.approx(x, n, 100000);
        Rational qm = *f.r.approx(x, m, 100000);
        Rational d = qn - qm;
        if (d < 0) d = -d;
        CHECK(d < pow2(-static_cast<long>(n)) + pow2(-static_cast<long>(m)));
      }
  }
}
