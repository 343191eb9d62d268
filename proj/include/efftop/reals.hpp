#pragma once

// Exact computable reals over the kernel: the rational numbering c_Q,
// Cauchy reals (programs emitting 2^-n-accurate rationals), left reals
// (programs emitting nondecreasing strict lower bounds), the limit
// algorithm, and semi-decidable comparison.

#include <optional>

#include "efftop/kernel.hpp"
#include "efftop/rational.hpp"

namespace efftop {

// ---------------------------------------------------------------------------
// The rational numbering c_Q: <p,q,r> denotes (-1)^p * q / (r+1).  Total.

Rational cq_decode(const Nat& name);
Nat cq_encode(const Rational& q);

// ---------------------------------------------------------------------------

enum class Verdict { yes, no, not_yet };

struct CauchyReal {
  Nat name;  // closure: precision n -> c_Q name within 2^-n of the real
};

struct LeftReal {
  Nat name;  // closure: slot k -> c_Q name; nondecreasing, strict lower bounds
};

// Template programs for the real-number kernel, registered once per kernel.
class RealsLib {
 public:
  explicit RealsLib(Kernel& k);

  Kernel& kernel() const { return *kernel_; }

  // --- Cauchy constructors -------------------------------------------------
  CauchyReal constant(const Rational& q) const;
  CauchyReal sqrt_of(const Rational& q) const;  // q >= 0
  CauchyReal add(const CauchyReal& a, const CauchyReal& b) const;
  CauchyReal sub(const CauchyReal& a, const CauchyReal& b) const;
  CauchyReal min(const CauchyReal& a, const CauchyReal& b) const;

  // n-th approximation within fuel; nullopt = NOT_YET
  std::optional<Rational> approx(const CauchyReal& x, std::uint64_t n, Fuel fuel) const;

  // exact-tier recognition: the payload of a `constant` name
  std::optional<Rational> constant_value(const CauchyReal& x) const;

  // --- comparison ----------------------------------------------------------
  // SD name halting iff a < b (witnessed at some precision).
  Nat lt_name(const CauchyReal& a, const CauchyReal& b) const;
  Verdict semidecide_lt(const CauchyReal& a, const CauchyReal& b, Fuel fuel) const;

  // --- left reals ----------------------------------------------------------
  LeftReal left_constant(const Rational& q) const;        // emits q - 2^-k
  LeftReal cauchy_to_left(const CauchyReal& x) const;     // max_{k<=n}(x_k - 2^-k)
  LeftReal left_min(const LeftReal& a, const LeftReal& b) const;
  // sup of an enumerable family of left-real codes (ce = slot program of codes)
  LeftReal left_sup(const Nat& family_ce) const;

  std::optional<Rational> left_emit(const LeftReal& l, std::uint64_t slot, Fuel fuel) const;

  // SD name halting iff x < l (some emission of l exceeds x).
  Nat lt_left_name(const CauchyReal& x, const LeftReal& l) const;

  // --- limits --------------------------------------------------------------
  // seq: slot k -> Cauchy name of x_k with |x_k - L| <= 2^-k.
  CauchyReal limit(const Nat& seq_name) const;

  // program indices (exposed for recognition / composition)
  ProgramIndex cq_const_prog() const { return cq_const_; }
  ProgramIndex sqrt_prog() const { return sqrt_; }
  ProgramIndex arith_prog() const { return arith_; }
  ProgramIndex lt_prog() const { return lt_; }
  ProgramIndex left_const_prog() const { return left_const_; }
  ProgramIndex to_left_prog() const { return to_left_; }
  ProgramIndex left_min_prog() const { return left_min_; }
  ProgramIndex left_sup_prog() const { return left_sup_; }
  ProgramIndex lt_left_prog() const { return lt_left_; }
  ProgramIndex limit_prog() const { return limit_; }

 private:
  Kernel* kernel_;
  ProgramIndex cq_const_;
  ProgramIndex sqrt_;
  ProgramIndex arith_;
  ProgramIndex lt_;
  ProgramIndex left_const_;
  ProgramIndex to_left_;
  ProgramIndex left_min_;
  ProgramIndex left_sup_;
  ProgramIndex lt_left_;
  ProgramIndex limit_;
};

}  // namespace efftop
