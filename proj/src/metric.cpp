#include "efftop/metric.hpp"

#include <stdexcept>

namespace efftop {

// ---------------------------------------------------------------------------
// ExactSpace.

ExactPoint ExactSpace::decode_point(const Nat& name) const {
  switch (kind_) {
    case Kind::line:
      return ExactPoint{{cq_decode(name)}};
    case Kind::square: {
      auto [nx, ny] = unpair_nat(name);
      return ExactPoint{{cq_decode(nx), cq_decode(ny)}};
    }
    case Kind::discrete:
      return ExactPoint{{Rational(name)}};
  }
  throw std::logic_error("unreachable");
}

Nat ExactSpace::encode_point(const ExactPoint& p) const {
  switch (kind_) {
    case Kind::line:
      return cq_encode(p.coords.at(0));
    case Kind::square:
      return pair_nat(cq_encode(p.coords.at(0)), cq_encode(p.coords.at(1)));
    case Kind::discrete:
      if (denominator(p.coords.at(0)) != 1 || p.coords.at(0) < 0)
        throw std::invalid_argument("discrete points are naturals");
      return numerator(p.coords.at(0));
  }
  throw std::logic_error("unreachable");
}

int ExactSpace::sign_affine(const Rational& t0, const std::vector<Term>& terms) const {
  if (kind_ == Kind::line || kind_ == Kind::discrete) {
    Rational acc = t0;
    for (const Term& t : terms) {
      if (kind_ == Kind::line) {
        Rational d = t.a.coords.at(0) - t.b.coords.at(0);
        if (d < 0) d = -d;
        acc += t.coeff * d;
      } else {
        acc += t.a == t.b ? Rational(0) : t.coeff;
      }
    }
    return sign_of(acc);
  }
  // square: Euclidean distances are sqrt of rationals
  Rational acc = t0;
  std::vector<std::pair<Rational, Rational>> radicals;  // (coeff, radicand)
  for (const Term& t : terms) {
    Rational dx = t.a.coords.at(0) - t.b.coords.at(0);
    Rational dy = t.a.coords.at(1) - t.b.coords.at(1);
    Rational A = dx * dx + dy * dy;
    if (A == 0) continue;
    if (auto r = rational_sqrt(A)) {
      acc += t.coeff * *r;
      continue;
    }
    bool merged = false;
    for (auto& [c, rad] : radicals)
      if (rad == A) {
        c += t.coeff;
        merged = true;
        break;
      }
    if (!merged) radicals.emplace_back(t.coeff, A);
  }
  switch (radicals.size()) {
    case 0:
      return sign_of(acc);
    case 1:
      return sign1(acc, radicals[0].first, radicals[0].second);
    case 2:
      return sign2(acc, radicals[0].first, radicals[0].second, radicals[1].first,
                   radicals[1].second);
    case 3:
      return sign3(acc, radicals[0].first, radicals[0].second, radicals[1].first,
                   radicals[1].second, radicals[2].first, radicals[2].second);
    default:
      throw std::logic_error("sign_affine supports at most three distance terms");
  }
}

// ---------------------------------------------------------------------------
// MetricLib.

namespace {

State words_state(std::vector<Nat> w) {
  State st;
  st.words = std::move(w);
  return st;
}

// one-simulation-at-a-time pipeline state: [phase, sim]
struct PipelineState {
  std::uint64_t phase = 0;
  Sim sim;

  static PipelineState start(Sim s) { return PipelineState{0, std::move(s)}; }
  static PipelineState parse(const State& st) {
    PipelineState p;
    std::size_t pos = 0;
    p.phase = to_u64(st.words.at(pos++));
    p.sim = Sim::parse(st.words, pos);
    return p;
  }
  State save() const {
    std::vector<Nat> w{Nat(phase)};
    sim.serialize(w);
    return words_state(std::move(w));
  }
};

}  // namespace

MetricLib::MetricLib(Kernel& k, const RealsLib& reals, const NumberingsLib& nums)
    : kernel_(&k), reals_(&reals), nums_(&nums) {
  const ProgramIndex cqc = reals.cq_const_prog();
  const ProgramIndex sqrtp = reals.sqrt_prog();
  const ProgramIndex arith = reals.arith_prog();
  const ProgramIndex ltp = reals.lt_prog();
  const ProgramIndex cst = nums.const_prog();

  line_dist_ = k.register_program(
      "distance |x-y| on rational points", [cqc](const Kernel&, const Nat& in, State) {
        auto [env, args] = unpair_nat(in);
        (void)env;
        auto [n1, n2] = unpair_nat(args);
        Rational d = cq_decode(n1) - cq_decode(n2);
        if (d < 0) d = -d;
        return StepResult::halt(closure(cqc, cq_encode(d)));
      });

  square_dist_ = k.register_program(
      "euclidean distance on rational pairs", [sqrtp](const Kernel&, const Nat& in, State) {
        auto [env, args] = unpair_nat(in);
        (void)env;
        auto [n1, n2] = unpair_nat(args);
        auto [x1, y1] = unpair_nat(n1);
        auto [x2, y2] = unpair_nat(n2);
        Rational dx = cq_decode(x1) - cq_decode(x2);
        Rational dy = cq_decode(y1) - cq_decode(y2);
        return StepResult::halt(closure(sqrtp, cq_encode(dx * dx + dy * dy)));
      });

  discrete_dist_ = k.register_program(
      "discrete distance on naturals", [cqc](const Kernel&, const Nat& in, State) {
        auto [env, args] = unpair_nat(in);
        (void)env;
        auto [n1, n2] = unpair_nat(args);
        return StepResult::halt(closure(cqc, cq_encode(n1 == n2 ? Rational(0) : Rational(1))));
      });

  // env = <dist, n1, n2>: precision -> approximation of d(n1, n2)
  dist_cauchy_ = k.register_program(
      "cauchy view of a distance", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, prec] = unpair_nat(in);
        auto [dist, n1, n2] = unpair3(env);
        PipelineState p = st.empty()
                              ? PipelineState::start(Sim::of_eval(dist, pair_nat(n1, n2)))
                              : PipelineState::parse(st);
        p.sim.tick(kk);
        if (p.sim.done) {
          if (p.phase == 0) {
            p.phase = 1;
            p.sim = Sim::of_eval(p.sim.output, prec);
          } else {
            return StepResult::halt(p.sim.output);
          }
        }
        return StepResult::run_on(p.save());
      });

  // env = <dist, ball>: halts on p iff d(center, p) < radius
  ball_sd_ = k.register_program(
      "ball membership", [ltp, dc = dist_cauchy_](const Kernel& kk, const Nat& in, State st) {
        auto [env, p] = unpair_nat(in);
        auto [dist, ball] = unpair_nat(env);
        auto [center, radius] = unpair_nat(ball);
        Sim sim;
        if (st.empty()) {
          Nat dname = closure(dc, pair3(dist, center, p));
          sim = Sim::of_eval(closure(ltp, pair_nat(dname, radius)), Nat(0));
        } else {
          std::size_t pos = 0;
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) return StepResult::halt(Nat(0));
        std::vector<Nat> w;
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  ball_member_realizer_ = k.register_program(
      "basic name -> membership SD name", [bsd = ball_sd_](const Kernel&, const Nat& in, State) {
        auto [dist, b] = unpair_nat(in);  // env is the dist realizer
        return StepResult::halt(closure(bsd, pair_nat(dist, b)));
      });

  // env = 1_R name: G1(n) = constant sequence of <n, 1_R>
  g1_ = k.register_program("whole-space cover G1", [cst](const Kernel&, const Nat& in, State) {
    auto [one, n] = unpair_nat(in);
    return StepResult::halt(closure(cst, pair_nat(n, one)));
  });

  // env = dist: G2(<n, <b1, b2>>) = constant sequence of <n, theta>
  g2_ = k.register_program(
      "intersection map G2", [arith, dc = dist_cauchy_, cst](const Kernel&, const Nat& in, State) {
        auto [dist, args] = unpair_nat(in);
        auto [n, balls] = unpair_nat(args);
        auto [b1, b2] = unpair_nat(balls);
        auto [c1, r1] = unpair_nat(b1);
        auto [c2, r2] = unpair_nat(b2);
        Nat d1 = closure(dc, pair3(dist, n, c1));
        Nat d2 = closure(dc, pair3(dist, n, c2));
        Nat s1 = closure(arith, pair3(Nat(1), r1, d1));  // r1 - d(x, c1)
        Nat s2 = closure(arith, pair3(Nat(1), r2, d2));
        Nat theta = closure(arith, pair3(Nat(2), s1, s2));  // min
        return StepResult::halt(closure(cst, pair_nat(n, theta)));
      });

  // env = <inner dist, w1, w2>: precision n -> approximation of the lifted
  // distance via the (n+2)-th terms at precision n+2
  completion_dc_ = k.register_program(
      "completion distance approximations", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, prec] = unpair_nat(in);
        auto [inner, w1, w2] = unpair3(env);
        Nat p2 = prec + 2;
        std::uint64_t phase = 0;
        Nat stash;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(w1, p2);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          stash = st.words.at(pos++);
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          switch (phase) {
            case 0:  // term of w1
              stash = sim.output;
              sim = Sim::of_eval(w2, p2);
              phase = 1;
              break;
            case 1:  // term of w2; apply the inner distance realizer
              sim = Sim::of_eval(inner, pair_nat(stash, sim.output));
              phase = 2;
              break;
            case 2:  // got the Cauchy name of the inner distance
              sim = Sim::of_eval(sim.output, p2);
              phase = 3;
              break;
            default:
              return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase), stash};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  completion_dist_ = k.register_program(
      "completion distance realizer", [cdc = completion_dc_](const Kernel&, const Nat& in, State) {
        auto [inner, args] = unpair_nat(in);
        auto [w1, w2] = unpair_nat(args);
        return StepResult::halt(closure(cdc, pair3(inner, w1, w2)));
      });

  // env = sequence of completion names; slot n -> (n+2)-th term of the
  // (n+2)-th name: the completion's limit algorithm
  diag_limit_ = k.register_program(
      "diagonal limit of completion names", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, n] = unpair_nat(in);
        Nat p2 = n + 2;
        PipelineState p =
            st.empty() ? PipelineState::start(Sim::of_eval(env, p2)) : PipelineState::parse(st);
        p.sim.tick(kk);
        if (p.sim.done) {
          if (p.phase == 0) {
            p.phase = 1;
            p.sim = Sim::of_eval(p.sim.output, p2);
          } else {
            return StepResult::halt(p.sim.output);
          }
        }
        return StepResult::run_on(p.save());
      });

  limit_realizer_ = k.register_program(
      "limit realizer of the completion", [dl = diag_limit_](const Kernel&, const Nat& in, State) {
        auto [env, seq] = unpair_nat(in);
        (void)env;
        return StepResult::halt(closure(dl, seq));
      });
}

MetricSpace MetricLib::rationals() const {
  return MetricSpace{SpaceHandle{"rationals", "c_Q names denote rationals; d = |x-y|"},
                     closure(line_dist_, Nat(0)), true, std::nullopt,
                     std::make_shared<ExactSpace>(ExactSpace::Kind::line)};
}

MetricSpace MetricLib::unit_interval() const {
  return MetricSpace{
      SpaceHandle{"unit-interval", "c_Q names denoting rationals in [0,1]; d = |x-y|"},
      closure(line_dist_, Nat(0)), true, std::nullopt,
      std::make_shared<ExactSpace>(ExactSpace::Kind::line)};
}

MetricSpace MetricLib::unit_square() const {
  return MetricSpace{
      SpaceHandle{"unit-square", "pairs of c_Q names in [0,1]^2; euclidean distance"},
      closure(square_dist_, Nat(0)), true, std::nullopt,
      std::make_shared<ExactSpace>(ExactSpace::Kind::square)};
}

MetricSpace MetricLib::discrete_naturals() const {
  return MetricSpace{SpaceHandle{"discrete", "naturals with the discrete metric"},
                     closure(discrete_dist_, Nat(0)), true, std::nullopt,
                     std::make_shared<ExactSpace>(ExactSpace::Kind::discrete)};
}

MetricSpace MetricLib::parity_oracle(const std::string& predicate_id) const {
  return MetricSpace{
      SpaceHandle{"parity-oracle:" + predicate_id,
                  "Y = 2X u (2X+1) for the fixture predicate, discrete metric"},
      closure(discrete_dist_, Nat(0)), true, std::nullopt,
      std::make_shared<ExactSpace>(ExactSpace::Kind::discrete)};
}

std::optional<MetricSpace> MetricLib::by_id(const std::string& id) const {
  if (id == "rationals") return rationals();
  if (id == "unit-interval") return unit_interval();
  if (id == "unit-square") return unit_square();
  if (id == "discrete") return discrete_naturals();
  if (id.rfind("parity-oracle:", 0) == 0) return parity_oracle(id.substr(14));
  return std::nullopt;
}

Nat MetricLib::dist_cauchy_name(const MetricSpace& s, const Nat& n1, const Nat& n2) const {
  return closure(dist_cauchy_, pair3(s.dist, n1, n2));
}

CauchyReal MetricLib::distance(const MetricSpace& s, const Nat& n1, const Nat& n2) const {
  return CauchyReal{dist_cauchy_name(s, n1, n2)};
}

SemiDecidableName MetricLib::ball_sd(const MetricSpace& s, const BallName& b) const {
  return SemiDecidableName{closure(ball_sd_, pair_nat(s.dist, b.name))};
}

Verdict MetricLib::ball_member(const MetricSpace& s, const BallName& b, const Nat& p,
                               Fuel fuel) const {
  return nums_->sd_member(ball_sd(s, b), p, fuel);
}

BallName MetricLib::ball_of_exact(const MetricSpace& s, const ExactBall& b) const {
  if (!s.exact) throw std::invalid_argument("space has no exact tier");
  return BallName::make(s.exact->encode_point(b.center), reals_->constant(b.radius).name);
}

std::optional<ExactBall> MetricLib::exact_of_ball(const MetricSpace& s, const BallName& b) const {
  if (!s.exact) return std::nullopt;
  auto radius = reals_->constant_value(CauchyReal{b.radius()});
  if (!radius) return std::nullopt;
  return ExactBall{s.exact->decode_point(b.center()), *radius};
}

bool MetricLib::ball_incl_exact(const MetricSpace& s, const ExactBall& b1,
                                const ExactBall& b2) const {
  // d(c1, c2) + r1 <= r2
  return s.exact->sign_affine(b1.radius - b2.radius,
                              {{Rational(1), b1.center, b2.center}}) <= 0;
}

std::optional<bool> MetricLib::ball_incl_exact(const MetricSpace& s, const BallName& b1,
                                               const BallName& b2) const {
  auto e1 = exact_of_ball(s, b1), e2 = exact_of_ball(s, b2);
  if (!e1 || !e2) return std::nullopt;
  return ball_incl_exact(s, *e1, *e2);
}

Verdict MetricLib::ball_incl_semidecide(const MetricSpace& s, const BallName& b1,
                                        const BallName& b2, Fuel fuel) const {
  CauchyReal lhs = reals_->add(distance(s, b1.center(), b2.center()), CauchyReal{b1.radius()});
  CauchyReal r2{b2.radius()};
  if (reals_->semidecide_lt(lhs, r2, fuel / 2) == Verdict::yes) return Verdict::yes;
  if (reals_->semidecide_lt(r2, lhs, fuel / 2) == Verdict::yes) return Verdict::no;
  return Verdict::not_yet;
}

FormalInclusion MetricLib::ball_inclusion(const MetricSpace& s) const {
  FormalInclusion f;
  f.exact = [this, s](const Nat& a, const Nat& b) {
    return ball_incl_exact(s, BallName{a}, BallName{b});
  };
  f.semi = [this, s](const Nat& a, const Nat& b, Fuel fuel) {
    return ball_incl_semidecide(s, BallName{a}, BallName{b}, fuel);
  };
  return f;
}

CauchyReal MetricLib::theta(const MetricSpace& s, const Nat& x, const BallName& b1,
                            const BallName& b2) const {
  CauchyReal d1 = distance(s, x, b1.center());
  CauchyReal d2 = distance(s, x, b2.center());
  return reals_->min(reals_->sub(CauchyReal{b1.radius()}, d1),
                     reals_->sub(CauchyReal{b2.radius()}, d2));
}

SpreenBasis MetricLib::balls_spreen_basis(const MetricSpace& s) const {
  SpreenBasis b;
  b.space = s;
  b.member_realizer = closure(ball_member_realizer_, s.dist);
  b.incl = ball_inclusion(s);
  b.g1 = closure(g1_, reals_->constant(Rational(1)).name);
  b.g2 = closure(g2_, s.dist);
  return b;
}

bool MetricLib::check_third_lemma(const MetricSpace& s, const ExactBall& b, const ExactPoint& x,
                                  const ExactPoint& z) const {
  const ExactSpace& g = *s.exact;
  // d(x,z) <= F(x)/3  with  F(p) = r - d(center, p)
  int hyp = g.sign_affine(-b.radius / 3, {{Rational(1), x, z}, {Rational(1, 3), b.center, x}});
  if (hyp > 0) return true;  // vacuous
  // d(x,z) + F(x)/3 <= F(z)
  int concl = g.sign_affine(-2 * b.radius / 3, {{Rational(1), x, z},
                                                {Rational(-1, 3), b.center, x},
                                                {Rational(1), b.center, z}});
  return concl <= 0;
}

MetricSpace MetricLib::cauchy_completion(const MetricSpace& s) const {
  return MetricSpace{SpaceHandle{s.handle.id + ".completion",
                                 "fast cauchy sequences of " + s.handle.id + " names"},
                     closure(completion_dist_, s.dist), s.dense,
                     closure(limit_realizer_, Nat(0)), nullptr};
}

Nat MetricLib::embed_constant(const Nat& point) const {
  return closure(nums_->const_prog(), point);
}

}  // namespace efftop
