#pragma once

// One-stop construction of the whole library over a single registry.
// Registration order is fixed, so names and enumeration streams are
// reproducible run to run.

#include "efftop/kernel.hpp"
#include "efftop/metric.hpp"
#include "efftop/numberings.hpp"
#include "efftop/reals.hpp"
#include "efftop/topology.hpp"

namespace efftop {

class World {
 public:
  World();

  Kernel kernel;
  RealsLib reals;
  NumberingsLib nums;
  MetricLib metric;
  TopologyLib topo;

  // slot k -> k: under c_Q every natural is a rational name, so this is the
  // all-rationals dense enumeration
  CeName all_naturals() const { return CeName{iota_}; }
  Nat iota_name() const { return iota_; }

  // dense sequence of the completion of a space: embedded constants
  CeName embedded_naturals() const { return CeName{embedded_}; }

  // fixture predicates for the parity-oracle spaces
  static bool oracle_predicate(const std::string& id, const Nat& n);
  // SD name of 2X (even half) over a parity-oracle space
  SemiDecidableName parity_even_half(const std::string& predicate_id) const;

 private:
  Nat iota_;
  Nat embedded_;
  ProgramIndex parity_even_;
};

}  // namespace efftop
