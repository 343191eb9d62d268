#include <doctest.h>

#include <map>
#include <set>

#include "efftop/kernel.hpp"

using namespace efftop;

namespace {

// raw fixture programs (input is the bare argument, not <env, arg>)

ProgramIndex reg_const(Kernel& k, std::uint64_t v) {
  return k.register_program("const", [v](const Kernel&, const Nat&, State) {
    return StepResult::halt(Nat(v));
  });
}

ProgramIndex reg_identity(Kernel& k) {
  return k.register_program("identity", [](const Kernel&, const Nat& in, State) {
    return StepResult::halt(in);
  });
}

ProgramIndex reg_loop(Kernel& k) {
  return k.register_program("loop-forever", [](const Kernel&, const Nat&, State st) {
    return StepResult::run_on(std::move(st));
  });
}

// halts with `out` exactly on step `n` (Running on steps 1..n-1)
ProgramIndex reg_delay(Kernel& k, std::uint64_t n, std::uint64_t out) {
  return k.register_program("delay", [n, out](const Kernel&, const Nat&, State st) {
    Nat c = st.words.empty() ? Nat(0) : st.words[0];
    if (c + 1 >= n) return StepResult::halt(Nat(out));
    State ns;
    ns.words = {c + 1};
    return StepResult::run_on(std::move(ns));
  });
}

// sequence program under the closure convention: slot k -> f(k), 1 step
template <typename F>
Nat reg_seq(Kernel& k, F f) {
  ProgramIndex p =
      k.register_program("seq", [f](const Kernel&, const Nat& in, State) -> StepResult {
        auto [env, slot] = unpair_nat(in);
        (void)env;
        auto v = f(slot);
        if (!v) {
          State st;
          return StepResult::run_on(std::move(st));
        }
        return StepResult::halt(*v);
      });
  return closure(p, Nat(0));
}

}  // namespace

TEST_CASE("cantor pairing base cases") {
  CHECK(pair_nat(Nat(0), Nat(0)) == 0);
  CHECK(pair_nat(Nat(1), Nat(2)) == 8);  // (a+b)(a+b+1)/2 + b
  CHECK(pair_nat(Nat(2), Nat(1)) == 7);
  CHECK(unpair_nat(Nat(0)) == std::pair<Nat, Nat>(Nat(0), Nat(0)));
  CHECK(unpair_nat(Nat(8)) == std::pair<Nat, Nat>(Nat(1), Nat(2)));
  CHECK(unpair_nat(Nat(7)) == std::pair<Nat, Nat>(Nat(2), Nat(1)));
}

TEST_CASE("pairing bijection sampled") {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    auto [a, b] = unpair_nat(Nat(n));
    CHECK(pair_nat(a, b) == n);
  }
  // large values use the big-int path
  Nat big = Nat("123456789012345678901234567890");
  auto [a, b] = unpair_nat(big);
  CHECK(pair_nat(a, b) == big);
  CHECK(unpair_nat(pair_nat(Nat(12345), big)) == std::pair<Nat, Nat>(Nat(12345), big));
}

TEST_CASE("nested triple is right-associated") {
  Nat t = pair3(Nat(1), Nat(2), Nat(3));
  CHECK(t == pair_nat(Nat(1), pair_nat(Nat(2), Nat(3))));
  auto [x, y, z] = unpair3(t);
  CHECK(x == 1);
  CHECK(y == 2);
  CHECK(z == 3);
}

TEST_CASE("register and run basic programs") {
  Kernel k;
  ProgramIndex c0 = reg_const(k, 0);
  ProgramIndex id = reg_identity(k);
  ProgramIndex lp = reg_loop(k);

  CHECK(k.run(c0, Nat(5), 1).halted());
  CHECK(k.run(c0, Nat(5), 1).output == 0);
  RunResult r = k.run(id, Nat(42), 1);
  CHECK(r.halted());
  CHECK(r.output == 42);
  RunResult d = k.run(lp, Nat(0), 1000000);
  CHECK(d.status == RunResult::Status::running);
  CHECK(d.used == 1000000);
}

TEST_CASE("run is fuel-monotone and exact on step counts") {
  Kernel k;
  ProgramIndex p = reg_delay(k, 5, 99);
  CHECK(k.run(p, Nat(0), 4).status == RunResult::Status::running);
  RunResult r5 = k.run(p, Nat(0), 5);
  CHECK(r5.halted());
  CHECK(r5.output == 99);
  CHECK(r5.used == 5);
  // any larger fuel halts with the same output
  for (Fuel f = 5; f < 25; f += 3) {
    RunResult r = k.run(p, Nat(0), f);
    CHECK(r.halted());
    CHECK(r.output == 99);
    CHECK(r.used == 5);
  }
}

TEST_CASE("run on an unregistered index is an error distinct from running") {
  Kernel k;
  reg_identity(k);
  RunResult r = k.run(1000000000, Nat(0), 1);
  CHECK(r.status == RunResult::Status::invalid_index);
}

TEST_CASE("resume continues a paused run deterministically") {
  Kernel k;
  ProgramIndex p = reg_delay(k, 10, 7);
  RunResult a = k.run(p, Nat(0), 4);
  REQUIRE(a.status == RunResult::Status::running);
  RunResult b = k.resume(p, Nat(0), a.state, 6);
  CHECK(b.halted());
  CHECK(b.output == 7);
  CHECK(b.used == 6);
}

TEST_CASE("closure names apply through eval_name") {
  Kernel k;
  // doubling under the closure convention
  ProgramIndex dbl = k.register_program("dbl", [](const Kernel&, const Nat& in, State) {
    auto [env, arg] = unpair_nat(in);
    (void)env;
    return StepResult::halt(arg * 2);
  });
  Nat name = closure(dbl, Nat(0));
  RunResult r = eval_name(k, name, Nat(21), 10);
  CHECK(r.halted());
  CHECK(r.output == 42);
}

TEST_CASE("dovetail merges evens and odds fairly") {
  Kernel k;
  Nat evens = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s * 2); });
  Nat odds = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s * 2 + 1); });
  auto ems = dovetail(k, {evens, odds}, 200000);
  std::set<Nat> seen;
  for (auto& e : ems) seen.insert(e.value);
  for (std::uint64_t v = 0; v < 100; ++v) CHECK(seen.count(Nat(v)) == 1);
  // task j's value at own-step s is merged by stage max(j, s): spot check
  for (auto& e : ems) {
    std::uint64_t own_steps = e.slot + 1;  // one step per slot here
    CHECK(e.at_stage <= std::max(e.task, own_steps) + e.task);
  }
}

TEST_CASE("dovetail of a single task preserves its own order") {
  Kernel k;
  Nat sq = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s * s); });
  auto ems = dovetail(k, {sq}, 5000);
  REQUIRE(ems.size() >= 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(ems[i].slot == i);
    CHECK(ems[i].value == Nat(i) * Nat(i));
  }
}

TEST_CASE("dovetail of task-k-emits-only-k is a permutation of any prefix") {
  Kernel k;
  std::vector<Nat> tasks;
  for (std::uint64_t t = 0; t < 8; ++t) {
    tasks.push_back(reg_seq(k, [t](const Nat& s) -> std::optional<Nat> {
      if (s == 0) return Nat(t);
      return std::nullopt;  // diverge on later slots
    }));
  }
  auto ems = dovetail(k, tasks, 100000);
  std::multiset<Nat> seen;
  for (auto& e : ems) seen.insert(e.value);
  CHECK(seen.size() == 8);  // each exactly once
  for (std::uint64_t t = 0; t < 8; ++t) CHECK(seen.count(Nat(t)) == 1);
}

TEST_CASE("dovetail is bit-identical across replays") {
  Kernel k;
  Nat a = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s * 3); });
  Nat b = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s + 100); });
  auto e1 = dovetail(k, {a, b}, 5000);
  auto e2 = dovetail(k, {a, b}, 5000);
  REQUIRE(e1.size() == e2.size());
  for (std::size_t i = 0; i < e1.size(); ++i) {
    CHECK(e1[i].task == e2[i].task);
    CHECK(e1[i].slot == e2[i].slot);
    CHECK(e1[i].value == e2[i].value);
  }
}

TEST_CASE("union stream engine: slot seeds discover gapped domains") {
  Kernel k;
  // slot program halting only on multiples of 3 (value = slot)
  ProgramIndex p = k.register_program("mult3", [](const Kernel&, const Nat& in, State st) {
    auto [env, slot] = unpair_nat(in);
    (void)env;
    if (slot % 3 == 0) return StepResult::halt(slot);
    return StepResult::run_on(std::move(st));
  });
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = closure(p, Nat(0));
  spec.emit_on_admission = true;
  DriveResult r = drive(k, spec, 20000);
  std::set<Nat> seen;
  for (auto& e : r.emissions) seen.insert(e.value);
  for (std::uint64_t v = 0; v <= 30; v += 3) CHECK(seen.count(Nat(v)) == 1);
  CHECK(seen.count(Nat(1)) == 0);
}

TEST_CASE("union stream engine: emission prefix is fuel-monotone") {
  Kernel k;
  Nat sq = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s * s + 1); });
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = sq;
  spec.emit_on_admission = true;
  auto small = drive(k, spec, 500).emissions;
  auto large = drive(k, spec, 5000).emissions;
  REQUIRE(small.size() <= large.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].value == large[i].value);
    CHECK(small[i].at_step == large[i].at_step);
  }
}

TEST_CASE("engine-backed program equals driver view and survives serialization") {
  Kernel k;
  Nat sq = reg_seq(k, [](const Nat& s) { return std::optional<Nat>(s * s + 1); });
  auto mkspec = [sq]() {
    UnionStreamSpec spec;
    spec.seeds = UnionStreamSpec::Seeds::slots;
    spec.outer_src = sq;
    spec.emit_on_admission = true;
    return spec;
  };
  // program: slot j of the emission stream
  ProgramIndex p =
      k.register_program("emission-slot", [mkspec](const Kernel& kk, const Nat& in, State st) {
        auto [env, j] = unpair_nat(in);
        (void)env;
        return run_engine_until(kk, std::move(st), mkspec(), to_u64(j));
      });
  auto want = drive(k, mkspec(), 100000, 6).emissions;
  REQUIRE(want.size() == 6);
  for (std::uint64_t j = 0; j < 6; ++j) {
    RunResult r = k.run(p, pair_nat(Nat(0), Nat(j)), 100000);
    REQUIRE(r.halted());
    CHECK(r.output == want[j].value);
  }
  // forced round-trip through the canonical token between every step
  {
    State st;
    Nat input = pair_nat(Nat(0), Nat(3));
    Nat direct;
    std::uint64_t steps_direct = 0;
    {
      RunResult r = k.run(p, input, 100000);
      REQUIRE(r.halted());
      direct = r.output;
      steps_direct = r.used;
    }
    std::uint64_t steps = 0;
    for (;;) {
      RunResult r = k.resume(p, input, std::move(st), 1);
      ++steps;
      if (r.halted()) {
        CHECK(r.output == direct);
        CHECK(steps == steps_direct);
        break;
      }
      State flat;
      flat.words = r.state.serialized();  // drop the resident cache
      st = std::move(flat);
      REQUIRE(steps < 200000);
    }
  }
}
