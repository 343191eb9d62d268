#pragma once

// Shared fixture builders for the test suites.

#include <functional>
#include <optional>

#include "efftop/kernel.hpp"
#include "efftop/rational.hpp"

namespace efftop::testing {

// Sequence name under the closure convention: slot k -> f(k) in one step,
// diverging where f returns nullopt.
inline Nat reg_seq(Kernel& k, std::function<std::optional<Nat>(const Nat&)> f) {
  ProgramIndex p =
      k.register_program("test-seq", [f](const Kernel&, const Nat& in, State st) -> StepResult {
        auto [env, slot] = unpair_nat(in);
        (void)env;
        auto v = f(slot);
        if (!v) return StepResult::run_on(std::move(st));
        return StepResult::halt(*v);
      });
  return closure(p, Nat(0));
}

// A name that never halts on any argument.
inline Nat reg_diverge(Kernel& k) {
  ProgramIndex p = k.register_program(
      "test-diverge",
      [](const Kernel&, const Nat&, State st) { return StepResult::run_on(std::move(st)); });
  return closure(p, Nat(0));
}

// SD-style name: halts on arg iff pred(arg), in one step.
inline Nat reg_guard(Kernel& k, std::function<bool(const Nat&)> pred) {
  ProgramIndex p =
      k.register_program("test-guard", [pred](const Kernel&, const Nat& in, State st) -> StepResult {
        auto [env, arg] = unpair_nat(in);
        (void)env;
        if (pred(arg)) return StepResult::halt(Nat(0));
        return StepResult::run_on(std::move(st));
      });
  return closure(p, Nat(0));
}

// Rational interval enclosure of sqrt(q) with width <= 2^-prec; exact.
inline std::pair<Rational, Rational> sqrt_bounds(const Rational& q, unsigned prec) {
  Nat a = numerator(q), b = denominator(q);
  Nat scaled = (a * b) << (2 * prec);
  Nat root = boost::multiprecision::sqrt(scaled);
  Rational lo(root, b << prec);
  Rational hi(root + 1, b << prec);
  return {lo, hi};
}

}  // namespace efftop::testing
