#pragma once

// Computable metric spaces with dense computable points, the ball numbering
// <point, radius>, the ball formal inclusion d(c1,c2) + r1 <= r2, the Theta
// intersection map, the ball Spreen basis, and Cauchy completion.
//
// Exact-tier checks (deciding the formal inclusion, the Theta oracles, the
// 1/3 lemma) run on the shipped exact spaces: the rational line, the unit
// interval, the rational unit square with the Euclidean metric, discrete
// naturals, and parity-oracle fixtures.

#include <memory>
#include <optional>
#include <vector>

#include "efftop/numberings.hpp"
#include "efftop/reals.hpp"
#include "efftop/sqrtsum.hpp"

namespace efftop {

// ---------------------------------------------------------------------------
// Exact geometry of the built-in spaces.

struct ExactPoint {
  std::vector<Rational> coords;  // 1 entry (line/discrete) or 2 (square)

  bool operator==(const ExactPoint& o) const { return coords == o.coords; }
};

struct ExactBall {
  ExactPoint center;
  Rational radius;
};

class ExactSpace {
 public:
  enum class Kind { line, square, discrete };

  explicit ExactSpace(Kind kind) : kind_(kind) {}

  Kind kind() const { return kind_; }

  ExactPoint decode_point(const Nat& name) const;
  Nat encode_point(const ExactPoint& p) const;

  // exact sign of t0 + sum_i t_i * d(a_i, b_i); at most three distance terms
  struct Term {
    Rational coeff;
    ExactPoint a, b;
  };
  int sign_affine(const Rational& t0, const std::vector<Term>& terms) const;

 private:
  Kind kind_;
};

// ---------------------------------------------------------------------------

struct MetricSpace {
  SpaceHandle handle;
  Nat dist;  // realizer name: <n1, n2> -> Cauchy name of d
  bool dense = true;
  std::optional<Nat> limit;  // limit realizer, when the space admits one
  std::shared_ptr<const ExactSpace> exact;  // null when no exact tier
};

struct BallName {
  Nat name;  // pair <point name, Cauchy radius name>

  Nat center() const { return unpair_nat(name).first; }
  Nat radius() const { return unpair_nat(name).second; }
  static BallName make(const Nat& point, const Nat& radius_cauchy) {
    return BallName{pair_nat(point, radius_cauchy)};
  }
};

// Formal inclusion of a numbered basis: an exact tier that decides the
// relation on exactly presented names and a fuel-bounded tier confirming
// the strict form (sound for the relation) or refuting the strict reverse.
struct FormalInclusion {
  std::function<std::optional<bool>(const Nat&, const Nat&)> exact;
  std::function<Verdict(const Nat&, const Nat&, Fuel)> semi;
};

// A Spreen basis: uniformly semi-decidable basic sets with dense computable
// points, a formal inclusion, G1 covering the space and G2 computing
// intersections, both respecting the formal inclusion.
struct SpreenBasis {
  MetricSpace space;      // carrier (also used for point plumbing)
  Nat member_realizer;    // basic name b -> SD name of beta(b)
  FormalInclusion incl;
  Nat g1;                 // point name -> sequence of basic names
  Nat g2;                 // <n, <b1, b2>> -> sequence of basic names
};

class MetricLib {
 public:
  MetricLib(Kernel& k, const RealsLib& reals, const NumberingsLib& nums);

  // --- shipped spaces -------------------------------------------------------
  MetricSpace rationals() const;
  MetricSpace unit_interval() const;
  MetricSpace unit_square() const;
  MetricSpace discrete_naturals() const;
  // Y = 2X u (2X+1) with the discrete metric; X given by a fixture predicate
  MetricSpace parity_oracle(const std::string& predicate_id) const;
  std::optional<MetricSpace> by_id(const std::string& id) const;

  // --- distance and balls ---------------------------------------------------
  // Cauchy name of d(n1, n2) (pure minting; evaluation is fuel-bounded)
  CauchyReal distance(const MetricSpace& s, const Nat& n1, const Nat& n2) const;
  SemiDecidableName ball_sd(const MetricSpace& s, const BallName& b) const;
  Verdict ball_member(const MetricSpace& s, const BallName& b, const Nat& p, Fuel fuel) const;

  // exact-presented balls <-> ball names
  BallName ball_of_exact(const MetricSpace& s, const ExactBall& b) const;
  std::optional<ExactBall> exact_of_ball(const MetricSpace& s, const BallName& b) const;

  // --- formal inclusion ------------------------------------------------------
  // exact tier: decides d(c1,c2) + r1 <= r2; nullopt when not exact-presented
  std::optional<bool> ball_incl_exact(const MetricSpace& s, const BallName& b1,
                                      const BallName& b2) const;
  bool ball_incl_exact(const MetricSpace& s, const ExactBall& b1, const ExactBall& b2) const;
  // semidecide tier: yes confirms d + r1 < r2, no refutes via r2 < d + r1
  Verdict ball_incl_semidecide(const MetricSpace& s, const BallName& b1, const BallName& b2,
                               Fuel fuel) const;
  FormalInclusion ball_inclusion(const MetricSpace& s) const;

  // --- Theta ------------------------------------------------------------------
  // min(r1 - d(x, c1), r2 - d(x, c2)) as a Cauchy real
  CauchyReal theta(const MetricSpace& s, const Nat& x, const BallName& b1,
                   const BallName& b2) const;

  // --- ball Spreen basis -------------------------------------------------------
  SpreenBasis balls_spreen_basis(const MetricSpace& s) const;

  // --- 1/3 lemma helper --------------------------------------------------------
  // with F(p) = r - d(center, p): does d(x,z) <= F(x)/3 imply
  // d(x,z) + F(x)/3 <= F(z)?  evaluated exactly.
  bool check_third_lemma(const MetricSpace& s, const ExactBall& b, const ExactPoint& x,
                         const ExactPoint& z) const;

  // --- Cauchy completion ---------------------------------------------------------
  // names of the completion are fast point-name sequences of s
  MetricSpace cauchy_completion(const MetricSpace& s) const;
  // constant sequence: embeds an s-name as a completion name
  Nat embed_constant(const Nat& point) const;

  // template indices used by the topology layer
  ProgramIndex dist_cauchy_prog() const { return dist_cauchy_; }
  ProgramIndex ball_sd_prog() const { return ball_sd_; }
  Nat dist_cauchy_name(const MetricSpace& s, const Nat& n1, const Nat& n2) const;

 private:
  Kernel* kernel_;
  const RealsLib* reals_;
  const NumberingsLib* nums_;

  ProgramIndex line_dist_;
  ProgramIndex square_dist_;
  ProgramIndex discrete_dist_;
  ProgramIndex dist_cauchy_;     // env <dist, n1, n2>: precision -> c_Q name
  ProgramIndex ball_sd_;         // env <dist, ball>: halts on members
  ProgramIndex ball_member_realizer_;  // env dist: b -> SD name
  ProgramIndex g1_;              // env <one_R>: n -> const sequence of <n, 1_R>
  ProgramIndex g2_;              // env dist: <n,<b1,b2>> -> const sequence of theta ball
  ProgramIndex completion_dist_; // env <inner dist>: <w1,w2> -> Cauchy name
  ProgramIndex completion_dc_;   // env <inner dist, w1, w2>: precision -> c_Q
  ProgramIndex diag_limit_;      // env seq-of-completion-names: slot -> point name
  ProgramIndex limit_realizer_;  // seq name -> completion name (1 step)
};

}  // namespace efftop
