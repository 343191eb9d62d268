#pragma once

// Spreen opens and their algebra (unions, intersections, preimages),
// the direct metric description with left-real radii, Lacombe opens and
// the conversions between all three representations, Nogina opens and the
// constructive Moschovakis passage through the universal dense sequence of
// names, the Ershov reading of semi-decidable sets, and the formal metric
// continuity harness.
//
// A Spreen open is an encoded pair <A, F>: A semidecides membership of
// computable points, F maps a member's name to a sequence of basic names
// that contain the point and sit inside the open.  A metric open replaces
// the sequence by a single left-real radius.  A Lacombe open is a c.e. set
// of basic names.  A Nogina open pairs A with a multi-valued basic-name
// producer.

#include <optional>
#include <string>
#include <vector>

#include "efftop/metric.hpp"

namespace efftop {

struct SpreenOpenName {
  Nat name;  // <A, F>
  Nat a() const { return unpair_nat(name).first; }
  Nat f() const { return unpair_nat(name).second; }
  static SpreenOpenName make(const Nat& a, const Nat& f) {
    return SpreenOpenName{pair_nat(a, f)};
  }
};

struct MetricOpenName {
  Nat name;  // <A, F> with F emitting left-real radius names
  Nat a() const { return unpair_nat(name).first; }
  Nat f() const { return unpair_nat(name).second; }
  static MetricOpenName make(const Nat& a, const Nat& f) {
    return MetricOpenName{pair_nat(a, f)};
  }
};

struct LacombeOpenName {
  CeName ce;  // enumerates basic names
};

struct NoginaOpenName {
  Nat name;  // <A, C>
  Nat a() const { return unpair_nat(name).first; }
  Nat c() const { return unpair_nat(name).second; }
  static NoginaOpenName make(const Nat& a, const Nat& c) {
    return NoginaOpenName{pair_nat(a, c)};
  }
};

struct ErshovOpen {
  SemiDecidableName sd;  // the Ershov reading: every SD set is open
};

struct LacombeBasisData {
  MetricSpace space;
  Nat member_realizer;  // basic name -> SD name
  CeName cover;         // whole space as a computable union
  Nat intersector;      // <b1, b2> -> ce name of the intersection cover
};

// name-translation wrapper pair witnessing a basis-numbering change that
// preserves the formal inclusion (round trip b ~ f21(f12(b)))
struct NumberingChange {
  Nat f12;
  Nat f21;
};

struct ModulusSample {
  Nat x, y;
  Rational eps;
};

struct ModulusReport {
  std::uint64_t samples = 0;
  std::uint64_t premise_confirmed = 0;   // d(x,y) < phi(x, eps) confirmed
  std::uint64_t image_confirmed = 0;     // ... and d(fx,fy) < eps confirmed
  std::uint64_t inconclusive = 0;
  std::vector<ModulusSample> violations;  // premise and d(fx,fy) > eps confirmed
};

class TopologyLib {
 public:
  TopologyLib(Kernel& k, const RealsLib& reals, const NumberingsLib& nums,
              const MetricLib& metric);

  // --- membership ------------------------------------------------------------
  Verdict member(const SpreenOpenName& o, const Nat& point, Fuel fuel) const;
  Verdict member(const MetricOpenName& o, const Nat& point, Fuel fuel) const;
  Verdict member(const NoginaOpenName& o, const Nat& point, Fuel fuel) const;
  // Lacombe membership: some enumerated basic contains the point
  Verdict lacombe_member(const LacombeBasisData& lb, const LacombeOpenName& l, const Nat& point,
                         Fuel fuel) const;

  // F-stream of a Spreen open at a point: emissions of F(point) in schedule
  // order (driver view; the in-name view is the same stream)
  std::vector<Nat> f_stream(const SpreenOpenName& o, const Nat& point, Fuel fuel,
                            std::uint64_t max_emissions) const;
  UnionStreamSpec f_stream_spec(const SpreenOpenName& o, const Nat& point) const;

  // --- Spreen algebra -----------------------------------------------------------
  SpreenOpenName basic_as_open(const SpreenBasis& b, const Nat& basic, Fuel fuel = 1000) const;
  SpreenOpenName whole_space_open(const SpreenBasis& b) const;
  SpreenOpenName empty_open() const;
  SpreenOpenName spreen_union(const CeName& opens) const;
  SpreenOpenName spreen_union(const std::vector<SpreenOpenName>& opens) const;
  SpreenOpenName spreen_intersect(const SpreenBasis& b, const SpreenOpenName& o1,
                                  const SpreenOpenName& o2) const;
  // basicPre: codomain basic name -> Spreen open of the domain (a realizer
  // increasing for the formal inclusions, caller contract)
  SpreenOpenName spreen_preimage(const Realizer& f, const Nat& basic_pre,
                                 const SpreenOpenName& o) const;

  // --- direct metric description ---------------------------------------------------
  MetricOpenName metric_open(const SemiDecidableName& a, const Nat& radius_fn) const;
  MetricOpenName interval_open(const MetricSpace& line, const Rational& lo,
                               const Rational& hi) const;
  SpreenOpenName metric_to_spreen(const MetricOpenName& o) const;
  MetricOpenName spreen_to_metric(const MetricSpace& s, const SpreenOpenName& o) const;
  // left-real radius of a metric open at a member point
  LeftReal metric_radius(const MetricOpenName& o, const Nat& point, Fuel fuel) const;

  // --- Lacombe ---------------------------------------------------------------------
  LacombeOpenName lacombe_of_basics(const std::vector<Nat>& basics) const;
  SpreenOpenName lacombe_to_spreen(const LacombeBasisData& lb, const LacombeOpenName& l) const;
  LacombeOpenName spreen_to_lacombe(const SpreenBasis& b, const CeName& dense,
                                    const SpreenOpenName& o) const;
  LacombeBasisData spreen_basis_to_lacombe_basis(const SpreenBasis& b, const CeName& dense) const;
  UnionStreamSpec spreen_to_lacombe_spec(const SpreenOpenName& o, const CeName& dense) const;

  // --- Ershov ----------------------------------------------------------------------
  ErshovOpen ershov_open(const SemiDecidableName& a) const { return ErshovOpen{a}; }
  // preimage of any SD set under a computable map, the Ershov continuity
  SemiDecidableName ershov_preimage(const Realizer& f, const SemiDecidableName& a) const;

  // --- Nogina and the Moschovakis construction ---------------------------------------
  NoginaOpenName nogina_ball_open(const MetricSpace& s, const BallName& ball) const;
  // P_{n,k}: while run(n, n) lasts emit u_{phi_k(t)}, constant after halting
  Nat moschovakis_pnk(ProgramIndex n, ProgramIndex k, const CeName& u) const;
  // the universal dense sequence of names: survivors of the three filters
  Nat universal_dense_seq(const MetricSpace& s, const CeName& u) const;
  std::vector<Nat> universal_dense_names(const MetricSpace& s, const CeName& u, Fuel fuel,
                                         std::uint64_t max_names) const;
  UnionStreamSpec universal_dense_spec(const MetricSpace& s, const CeName& u) const;
  LacombeOpenName nogina_to_lacombe(const MetricSpace& s, const CeName& u,
                                    const NoginaOpenName& o) const;
  UnionStreamSpec nogina_to_lacombe_spec(const MetricSpace& s, const CeName& u,
                                         const NoginaOpenName& o) const;

  // --- formal metric continuity --------------------------------------------------------
  // phi: <point name, left-real epsilon name> -> left-real delta name
  ModulusReport modulus_check(const MetricSpace& s1, const MetricSpace& s2, const Realizer& f,
                              const Nat& phi, const std::vector<ModulusSample>& samples,
                              Fuel fuel) const;

  // --- inclusion harnesses ----------------------------------------------------------------
  // is some stream emission formally above b? (exact tier first)
  bool name_below_stream(const FormalInclusion& incl, const Nat& b,
                         const std::vector<Nat>& stream, Fuel fuel) const;
  // sampled formal inclusion of Spreen opens: membership implication plus
  // stream domination at each sample point
  bool spreen_incl_sampled(const FormalInclusion& incl, const SpreenOpenName& o1,
                           const SpreenOpenName& o2, const std::vector<Nat>& points,
                           std::uint64_t stream_len, Fuel fuel) const;

  // --- basis numbering changes ------------------------------------------------------------
  // transported basis over the changed numbering, per the preserved formal
  // inclusion; incl2(b,b') = incl1(f21 b, f21 b')
  SpreenBasis transport_basis(const SpreenBasis& b, const NumberingChange& ch, Fuel fuel) const;
  // round-trip law b ~ f21(f12(b)) on samples
  bool roundtrip_law(const SpreenBasis& b, const NumberingChange& ch,
                     const std::vector<Nat>& basics, Fuel fuel) const;

  ProgramIndex apply_prog() const { return apply_; }
  ProgramIndex once_prog() const { return once_; }

 private:
  Kernel* kernel_;
  const RealsLib* reals_;
  const NumberingsLib* nums_;
  const MetricLib* metric_;

  ProgramIndex first_;          // x -> unpair(x).first
  ProgramIndex apply_;          // env <f, x>: slot p -> (f(x))(p)
  ProgramIndex apply_flip_;     // env <f, y>: x -> (f(x))(y)
  ProgramIndex once_;           // env v: slot 0 -> v, diverges after
  ProgramIndex once_apply_;     // env <f, x>: slot 0 -> f(x)
  ProgramIndex pos_guard_;      // halts iff the payload c_Q name is positive
  ProgramIndex zip_pair_;       // env <s1, s2>: slot <i,j> -> <s1(i), s2(j)>
  ProgramIndex union_f_;        // env opens-ce: n -> union F-stream name
  ProgramIndex union_f_seq_;
  ProgramIndex inter_f_;        // env <g2, <o1, o2>>: n -> intersection stream
  ProgramIndex inter_f_seq_;
  ProgramIndex preim_f_;        // env <f, basicPre, F>: n -> preimage stream
  ProgramIndex preim_f_seq_;
  ProgramIndex pre_ball_f_;     // env <basicPre, u, n>: slot of basicPre(u).F(n)
  ProgramIndex interval_sd_;    // env <aq, bq>: halts on names inside (a, b)
  ProgramIndex interval_f_;     // env <aq, bq>: n -> left radius min(x-a, b-x)
  ProgramIndex m2s_f_;          // env F: n -> spreen stream of radius balls
  ProgramIndex m2s_seq_;
  ProgramIndex s2m_f_;          // env <dist, F>: n -> left radius via sup
  ProgramIndex s2m_left_;
  ProgramIndex member_at_;      // env <mr, point>: b -> membership run
  ProgramIndex lac_a_;          // env <mr, ce>: point -> halt iff covered
  ProgramIndex lac_f_;          // env <mr, ce>: n -> filtered enumeration
  ProgramIndex lac_f_seq_;
  ProgramIndex s2l_seq_;        // env <A, F, dense>: Lacombe enumeration
  ProgramIndex cover_seq_;      // env <g1, dense>: whole-space cover
  ProgramIndex intersector_;    // env <g2, mr, dense>: <b1,b2> -> ce name
  ProgramIndex intersector_seq_;
  ProgramIndex both_member_;    // env <mr, b1, b2>: u -> halt iff u in both
  ProgramIndex pnk_;            // env <n, k, u>: the P_{n,k} sequence
  ProgramIndex udn_filter_;     // env <n, k, u, dist>: the three filters
  ProgramIndex udn_seq_;        // env <u, limit, dist>: universal dense names
  ProgramIndex n2l_ball_;       // env <C, dist, w>: slot 0 -> centered ball
  ProgramIndex n2l_seq_;        // env <A, C, w-seq, dist>: the Lacombe cover
  ProgramIndex nogina_c_;       // env <dist, ball>: n -> basic around n in the ball
  ProgramIndex transport_g1_;   // env <f12, g1>: G1 of a changed numbering
  ProgramIndex transport_g2_;   // env <f12, f21, g2>: G2 of a changed numbering
  ProgramIndex transport_g2_seq_;
};

}  // namespace efftop
