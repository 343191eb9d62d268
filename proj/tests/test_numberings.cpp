#include <doctest.h>

#include <algorithm>
#include <set>

#include "efftop/numberings.hpp"
#include "fixtures.hpp"

using namespace efftop;
using efftop::testing::reg_guard;
using efftop::testing::reg_seq;

namespace {

struct Fix {
  Kernel k;
  RealsLib r{k};
  NumberingsLib n{k, r};
};

}  // namespace

TEST_CASE("list codec round-trips") {
  std::vector<Nat> xs = {Nat(0), Nat(17), Nat(123456789), Nat("981234678126348172634")};
  CHECK(decode_list(encode_list(xs)) == xs);
  CHECK(decode_list(encode_list({})).empty());
}

TEST_CASE("sd_member on whole and empty space") {
  Fix f;
  CHECK(f.n.sd_member(f.n.sd_whole(), Nat(7), 1) == Verdict::yes);
  CHECK(f.n.sd_member(f.n.sd_empty(), Nat(7), 100000) == Verdict::not_yet);
}

TEST_CASE("sd_member halts exactly on the set") {
  Fix f;
  SemiDecidableName evens{reg_guard(f.k, [](const Nat& n) { return n % 2 == 0; })};
  CHECK(f.n.sd_member(evens, Nat(4), 10) == Verdict::yes);
  CHECK(f.n.sd_member(evens, Nat(3), 10000) == Verdict::not_yet);
}

TEST_CASE("sd_intersect behaves like set intersection on samples") {
  Fix f;
  SemiDecidableName evens{reg_guard(f.k, [](const Nat& n) { return n % 2 == 0; })};
  SemiDecidableName mult3{reg_guard(f.k, [](const Nat& n) { return n % 3 == 0; })};
  SemiDecidableName both = f.n.sd_intersect(evens, mult3);
  for (std::uint64_t v = 0; v <= 30; ++v) {
    Verdict want = (v % 6 == 0) ? Verdict::yes : Verdict::not_yet;
    CHECK(f.n.sd_member(both, Nat(v), 2000) == want);
  }
  // whole intersect A agrees with A
  SemiDecidableName wa = f.n.sd_intersect(f.n.sd_whole(), evens);
  for (std::uint64_t v = 0; v < 10; ++v)
    CHECK(f.n.sd_member(wa, Nat(v), 2000) == f.n.sd_member(evens, Nat(v), 2000));
  // A intersect empty is empty
  SemiDecidableName ae = f.n.sd_intersect(evens, f.n.sd_empty());
  CHECK(f.n.sd_member(ae, Nat(2), 20000) == Verdict::not_yet);
}

TEST_CASE("sd_union_ce dovetails an enumerable family") {
  Fix f;
  SemiDecidableName evens{reg_guard(f.k, [](const Nat& n) { return n % 2 == 0; })};
  SemiDecidableName odds{reg_guard(f.k, [](const Nat& n) { return n % 2 == 1; })};
  SemiDecidableName u = f.n.sd_union_ce(f.n.ce_of_finite({evens.name, odds.name}));
  for (std::uint64_t v = 0; v < 12; ++v) CHECK(f.n.sd_member(u, Nat(v), 5000) == Verdict::yes);

  // union of the empty family is empty
  SemiDecidableName eu = f.n.sd_union_ce(f.n.ce_of_finite({}));
  CHECK(f.n.sd_member(eu, Nat(0), 20000) == Verdict::not_yet);

  // multiples of 2..5: YES on 6, NOT_YET on 7
  std::vector<Nat> codes;
  for (std::uint64_t m = 2; m <= 5; ++m)
    codes.push_back(reg_guard(f.k, [m](const Nat& n) { return n % m == 0; }));
  SemiDecidableName mu = f.n.sd_union_ce(f.n.ce_of_finite(codes));
  CHECK(f.n.sd_member(mu, Nat(6), 10000) == Verdict::yes);
  CHECK(f.n.sd_member(mu, Nat(7), 100000) == Verdict::not_yet);

  // singleton family observationally equals the member
  SemiDecidableName su = f.n.sd_union_ce(f.n.ce_of_finite({evens.name}));
  for (std::uint64_t v = 0; v < 20; ++v)
    CHECK(f.n.sd_member(su, Nat(v), 10000) == f.n.sd_member(evens, Nat(v), 10000));
}

TEST_CASE("ce_enumerate is prefix-monotone in fuel and exhausts the set") {
  Fix f;
  // empty set
  CHECK(f.n.ce_enumerate(CeName{testing::reg_diverge(f.k)}, 5000).empty());

  // identity enumerator covers an initial segment
  Nat iota = reg_seq(f.k, [](const Nat& s) { return std::optional<Nat>(s); });
  auto got = f.n.ce_enumerate(CeName{iota}, 10000);
  std::set<Nat> s(got.begin(), got.end());
  for (std::uint64_t v = 0; v < 10; ++v) CHECK(s.count(Nat(v)) == 1);

  // squares enumerator emits exactly squares
  Nat sq = reg_seq(f.k, [](const Nat& v) { return std::optional<Nat>(v * v); });
  auto sqs = f.n.ce_enumerate(CeName{sq}, 4000);
  for (auto& v : sqs) {
    Nat r = boost::multiprecision::sqrt(v);
    CHECK(r * r == v);
  }

  // prefix monotonicity
  auto small = f.n.ce_enumerate(CeName{iota}, 700);
  auto large = f.n.ce_enumerate(CeName{iota}, 7000);
  REQUIRE(small.size() <= large.size());
  CHECK(std::equal(small.begin(), small.end(), large.begin()));
}

TEST_CASE("realizers apply and compose") {
  Fix f;
  Realizer id = f.n.identity_realizer();
  RunResult r = f.n.apply_realizer(id, Nat(9), 10);
  CHECK(r.halted());
  CHECK(r.output == 9);

  ProgramIndex dblp = f.k.register_program("dbl", [](const Kernel&, const Nat& in, State) {
    auto [env, arg] = unpair_nat(in);
    (void)env;
    return StepResult::halt(arg * 2);
  });
  Realizer dbl{closure(dblp, Nat(0))};
  RunResult d = f.n.apply_realizer(dbl, Nat(21), 10);
  CHECK(d.halted());
  CHECK(d.output == 42);

  // diverging on odd names
  ProgramIndex oddp =
      f.k.register_program("odd-diverge", [](const Kernel&, const Nat& in, State st) -> StepResult {
        auto [env, arg] = unpair_nat(in);
        (void)env;
        if (arg % 2 == 1) return StepResult::run_on(std::move(st));
        return StepResult::halt(arg);
      });
  Realizer oddr{closure(oddp, Nat(0))};
  CHECK(!f.n.apply_realizer(oddr, Nat(3), 100000).halted());

  // composition g(f(x))
  Realizer both = f.n.compose(dbl, dbl);
  RunResult q = f.n.apply_realizer(both, Nat(5), 100);
  CHECK(q.halted());
  CHECK(q.output == 20);
}

TEST_CASE("product names are pairing wrappers") {
  Fix f;
  Nat p = NumberingsLib::product_name(Nat(1), Nat(2));
  CHECK(p == 8);
  auto [a, b] = NumberingsLib::product_split(p);
  CHECK(a == 1);
  CHECK(b == 2);
}

TEST_CASE("extensionality harness: co-denoting rational names agree on SD sets") {
  Fix f;
  // shipped SD set over the rationals: "is in (0,1)" via exact decode
  SemiDecidableName unit{reg_guard(f.k, [](const Nat& n) {
    Rational q = cq_decode(n);
    return q > 0 && q < 1;
  })};
  int pairs = 0;
  for (int num = 1; num <= 25 && pairs < 120; ++num)
    for (int den = num + 1; den <= num + 5; ++den, ++pairs) {
      Rational q(num, den);
      // two distinct names of the same rational: canonical and doubled form
      Nat n1 = cq_encode(q);
      Nat n2 = pair3(Nat(0), Nat(2 * num), Nat(2 * den - 1));
      REQUIRE(cq_decode(n1) == cq_decode(n2));
      REQUIRE(n1 != n2);
      CHECK(f.n.sd_member(unit, n1, 1000) == f.n.sd_member(unit, n2, 1000));
    }
  CHECK(pairs >= 100);
}
