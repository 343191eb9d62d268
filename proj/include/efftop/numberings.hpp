#pragma once

// Subnumbering combinators: semi-decidable sets, c.e. sets, decidable sets,
// realizers and products, all operating purely on names.
//
// A name of a semi-decidable set halts exactly on the names of its members.
// A c.e. name is a slot program whose halting slots enumerate the set (the
// image form of W; dovetailing makes it interchangeable with the domain
// form, and it keeps enumerated values reachable at desk-scale fuel).
// dom(nu) membership is never checked: garbage in, meaningless NOT_YET out.

#include <optional>
#include <string>
#include <vector>

#include "efftop/kernel.hpp"
#include "efftop/reals.hpp"

namespace efftop {

struct SpaceHandle {
  std::string id;
  std::string contract;  // what a name denotes, documented not computed
};

struct SemiDecidableName {
  Nat name;
};

struct CeName {
  Nat name;  // slot program; enumerated set = image of halting slots
};

struct DecidableName {
  Nat name;  // total 0/1 program on dom(nu)
};

struct Realizer {
  Nat name;  // maps nu-names to mu-names
};

class NumberingsLib {
 public:
  explicit NumberingsLib(Kernel& k, const RealsLib& reals);

  Kernel& kernel() const { return *kernel_; }

  // --- semi-decidable sets ------------------------------------------------
  Verdict sd_member(const SemiDecidableName& a, const Nat& point, Fuel fuel) const;
  SemiDecidableName sd_whole() const;  // halts on everything
  SemiDecidableName sd_empty() const;  // halts on nothing
  SemiDecidableName sd_intersect(const SemiDecidableName& a, const SemiDecidableName& b) const;
  // union of an enumerable family of SD codes: halts iff some member halts
  SemiDecidableName sd_union_ce(const CeName& codes) const;

  // --- c.e. sets ----------------------------------------------------------
  // values of halting slots discovered within `fuel`, in schedule order;
  // the list at smaller fuel is a prefix of the list at larger fuel
  std::vector<Nat> ce_enumerate(const CeName& c, Fuel fuel,
                                std::uint64_t max_values = UINT64_MAX) const;
  CeName ce_of_finite(const std::vector<Nat>& values) const;
  // the enumeration spec behind ce names (for drivers that need metadata)
  UnionStreamSpec ce_spec(const CeName& c) const;

  // --- decidable sets -----------------------------------------------------
  std::optional<bool> decide(const DecidableName& d, const Nat& point, Fuel fuel) const;

  // --- realizers ----------------------------------------------------------
  RunResult apply_realizer(const Realizer& r, const Nat& point, Fuel fuel) const;
  Realizer identity_realizer() const;
  // compose: point -> g(f(point))
  Realizer compose(const Realizer& f, const Realizer& g) const;

  // --- products -----------------------------------------------------------
  static Nat product_name(const Nat& n, const Nat& m) { return pair_nat(n, m); }
  static std::pair<Nat, Nat> product_split(const Nat& name) { return unpair_nat(name); }

  // template indices for in-program minting
  ProgramIndex sd_and_prog() const { return sd_and_; }
  ProgramIndex sd_union_prog() const { return sd_union_; }
  ProgramIndex const_prog() const { return const_; }
  ProgramIndex finite_seq_prog() const { return finite_seq_; }
  ProgramIndex compose_prog() const { return compose_; }
  ProgramIndex identity_prog() const { return identity_; }

  // sequence name: slot k -> eval(f, eval(s, k)) for sequence s
  Nat map_slots(const Nat& f, const Nat& s) const { return closure(compose_, pair_nat(s, f)); }
  // constant function name: any arg -> v
  Nat const_name(const Nat& v) const { return closure(const_, v); }

 private:
  Kernel* kernel_;
  ProgramIndex always_;
  ProgramIndex never_;
  ProgramIndex sd_and_;
  ProgramIndex sd_union_;
  ProgramIndex const_;
  ProgramIndex identity_;
  ProgramIndex finite_seq_;
  ProgramIndex compose_;
};

// list <-> single natural codec: pair(len, right-fold of elements)
Nat encode_list(const std::vector<Nat>& xs);
std::vector<Nat> decode_list(const Nat& n);

}  // namespace efftop
