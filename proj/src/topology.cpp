#include "efftop/topology.hpp"

namespace efftop {

namespace {

State words_state(std::vector<Nat> w) {
  State st;
  st.words = std::move(w);
  return st;
}

// ---------------------------------------------------------------------------
// Shared spec builders.  The engine-backed sequence programs and the library
// drivers below construct their streams through the same builders, so both
// views of any stream are step-for-step identical.

UnionStreamSpec union_f_spec(ProgramIndex first, ProgramIndex apply, const Nat& opens,
                             const Nat& point) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = opens;
  spec.guard = [point](std::uint64_t, const Nat& open) -> std::optional<std::pair<Nat, Nat>> {
    return std::make_pair(unpair_nat(open).first, point);  // run A_i on the point
  };
  spec.inner = [apply, point](std::uint64_t, const Nat& open) -> std::optional<Nat> {
    return closure(apply, pair_nat(unpair_nat(open).second, point));  // F_i(point) slots
  };
  (void)first;
  return spec;
}

UnionStreamSpec inter_f_spec(ProgramIndex zip, ProgramIndex apply, const Nat& g2, const Nat& o1,
                             const Nat& o2, const Nat& point) {
  Nat s1 = closure(apply, pair_nat(unpair_nat(o1).second, point));
  Nat s2 = closure(apply, pair_nat(unpair_nat(o2).second, point));
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = closure(zip, pair_nat(s1, s2));
  spec.inner = [apply, g2, point](std::uint64_t, const Nat& uw) -> std::optional<Nat> {
    return closure(apply, pair_nat(g2, pair_nat(point, uw)));  // G2(point, u, w) slots
  };
  return spec;
}

UnionStreamSpec preim_f_spec(ProgramIndex apply, ProgramIndex compose, ProgramIndex pre_ball,
                             const Nat& f, const Nat& basic_pre, const Nat& fo,
                             const Nat& point) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  // slots of F_o(f(point))
  spec.outer_src = closure(apply, pair_nat(closure(compose, pair_nat(f, fo)), point));
  spec.inner = [pre_ball, basic_pre, point](std::uint64_t,
                                            const Nat& u) -> std::optional<Nat> {
    return closure(pre_ball, pair3(basic_pre, u, point));
  };
  return spec;
}

UnionStreamSpec m2s_spec(ProgramIndex apply, ProgramIndex pos, ProgramIndex once,
                         ProgramIndex cqc, const Nat& radius_fn, const Nat& point) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = closure(apply, pair_nat(radius_fn, point));  // left-real emissions
  spec.guard = [pos](std::uint64_t, const Nat& q) -> std::optional<std::pair<Nat, Nat>> {
    return std::make_pair(closure(pos, Nat(0)), q);  // keep positive radii only
  };
  spec.inner = [once, cqc, point](std::uint64_t, const Nat& q) -> std::optional<Nat> {
    return closure(once, pair_nat(point, closure(cqc, q)));  // the ball <x, q>
  };
  return spec;
}

UnionStreamSpec s2m_spec(ProgramIndex apply, ProgramIndex to_left, ProgramIndex arith,
                         ProgramIndex dc, const Nat& dist, const Nat& fo, const Nat& point) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = closure(apply, pair_nat(fo, point));  // balls <m, r>
  spec.inner = [to_left, arith, dc, dist, point](std::uint64_t,
                                                 const Nat& ball) -> std::optional<Nat> {
    auto [m, r] = unpair_nat(ball);
    Nat d = closure(dc, pair3(dist, point, m));
    return closure(to_left, closure(arith, pair3(Nat(1), r, d)));  // r - d(x, m)
  };
  return spec;
}

UnionStreamSpec lacombe_filter_spec(ProgramIndex member_at, const Nat& mr, const Nat& ce,
                                    const Nat& point) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = ce;
  spec.guard = [member_at, mr, point](std::uint64_t,
                                      const Nat& b) -> std::optional<std::pair<Nat, Nat>> {
    return std::make_pair(closure(member_at, pair_nat(mr, point)), b);
  };
  spec.emit_on_admission = true;
  return spec;
}

UnionStreamSpec s2l_spec(ProgramIndex apply, const Nat& a, const Nat& fo, const Nat& dense) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = dense;
  spec.guard = [a](std::uint64_t, const Nat& u) -> std::optional<std::pair<Nat, Nat>> {
    return std::make_pair(a, u);
  };
  spec.inner = [apply, fo](std::uint64_t, const Nat& u) -> std::optional<Nat> {
    return closure(apply, pair_nat(fo, u));
  };
  return spec;
}

UnionStreamSpec cover_spec(ProgramIndex apply, const Nat& g1, const Nat& dense) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = dense;
  spec.inner = [apply, g1](std::uint64_t, const Nat& u) -> std::optional<Nat> {
    return closure(apply, pair_nat(g1, u));
  };
  return spec;
}

UnionStreamSpec intersector_spec(ProgramIndex apply, ProgramIndex both, const Nat& g2,
                                 const Nat& mr, const Nat& dense, const Nat& b1,
                                 const Nat& b2) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = dense;
  spec.guard = [both, mr, b1, b2](std::uint64_t,
                                  const Nat& u) -> std::optional<std::pair<Nat, Nat>> {
    return std::make_pair(closure(both, pair3(mr, b1, b2)), u);
  };
  spec.inner = [apply, g2, b1, b2](std::uint64_t, const Nat& u) -> std::optional<Nat> {
    return closure(apply, pair_nat(g2, pair_nat(u, pair_nat(b1, b2))));
  };
  return spec;
}

UnionStreamSpec udn_spec(ProgramIndex iota_prog, ProgramIndex filter, ProgramIndex once_apply,
                         ProgramIndex pnk, const Nat& u, const Nat& limit, const Nat& dist) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = closure(iota_prog, Nat(0));  // all pairs <n, k>
  spec.guard = [filter, u, dist](std::uint64_t,
                                 const Nat& c) -> std::optional<std::pair<Nat, Nat>> {
    auto [n, k] = unpair_nat(c);
    return std::make_pair(closure(filter, pair_nat(pair_nat(n, k), pair_nat(u, dist))), Nat(0));
  };
  spec.inner = [once_apply, pnk, u, limit](std::uint64_t, const Nat& c) -> std::optional<Nat> {
    auto [n, k] = unpair_nat(c);
    Nat pnk_name = closure(pnk, pair3(n, k, u));
    return closure(once_apply, pair_nat(limit, pnk_name));
  };
  return spec;
}

UnionStreamSpec n2l_spec(ProgramIndex ball_once, const Nat& a, const Nat& c, const Nat& wseq,
                         const Nat& dist) {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = wseq;
  spec.guard = [a](std::uint64_t, const Nat& w) -> std::optional<std::pair<Nat, Nat>> {
    return std::make_pair(a, w);
  };
  spec.inner = [ball_once, c, dist](std::uint64_t, const Nat& w) -> std::optional<Nat> {
    return closure(ball_once, pair_nat(c, pair_nat(dist, w)));
  };
  return spec;
}

}  // namespace

// ---------------------------------------------------------------------------

TopologyLib::TopologyLib(Kernel& k, const RealsLib& reals, const NumberingsLib& nums,
                         const MetricLib& metric)
    : kernel_(&k), reals_(&reals), nums_(&nums), metric_(&metric) {
  const ProgramIndex cqc = reals.cq_const_prog();
  const ProgramIndex arith = reals.arith_prog();
  const ProgramIndex ltp = reals.lt_prog();
  const ProgramIndex to_left = reals.to_left_prog();
  const ProgramIndex dc = metric.dist_cauchy_prog();
  const ProgramIndex compose = nums.compose_prog();
  const ProgramIndex identity = nums.identity_prog();

  first_ = k.register_program("first projection", [](const Kernel&, const Nat& in, State) {
    auto [env, x] = unpair_nat(in);
    (void)env;
    return StepResult::halt(unpair_nat(x).first);
  });

  // env = <f, x>: slot p -> (f(x))(p)
  apply_ = k.register_program(
      "apply a function name and stream the result", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, p] = unpair_nat(in);
        auto [f, x] = unpair_nat(env);
        std::uint64_t phase = 0;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(f, x);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            phase = 1;
            sim = Sim::of_eval(sim.output, p);
          } else {
            return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <f, y>: x -> (f(x))(y)
  apply_flip_ = k.register_program(
      "apply a minted name at a fixed argument", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, x] = unpair_nat(in);
        auto [f, y] = unpair_nat(env);
        std::uint64_t phase = 0;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(f, x);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            phase = 1;
            sim = Sim::of_eval(sim.output, y);
          } else {
            return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  once_ = k.register_program(
      "one-element stream", [](const Kernel&, const Nat& in, State st) -> StepResult {
        auto [env, slot] = unpair_nat(in);
        if (slot == 0) return StepResult::halt(env);
        return StepResult::run_on(std::move(st));
      });

  // env = <f, x>: slot 0 -> f(x), diverges after
  once_apply_ = k.register_program(
      "one-element stream of an application", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, slot] = unpair_nat(in);
        if (slot != 0) return StepResult::run_on(std::move(st));
        auto [f, x] = unpair_nat(env);
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(f, x);
        } else {
          std::size_t pos = 0;
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) return StepResult::halt(sim.output);
        std::vector<Nat> w;
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  pos_guard_ = k.register_program(
      "halts iff the rational payload is positive",
      [](const Kernel&, const Nat& in, State st) -> StepResult {
        auto [env, q] = unpair_nat(in);
        (void)env;
        if (cq_decode(q) > 0) return StepResult::halt(Nat(0));
        return StepResult::run_on(std::move(st));
      });

  // env = <s1, s2>: slot <i, j> -> <s1(i), s2(j)>
  zip_pair_ = k.register_program(
      "zip two sequences over pair slots", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, c] = unpair_nat(in);
        auto [s1, s2] = unpair_nat(env);
        auto [i, j] = unpair_nat(c);
        std::uint64_t phase = 0;
        Nat stash;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(s1, i);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          stash = st.words.at(pos++);
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            stash = sim.output;
            phase = 1;
            sim = Sim::of_eval(s2, j);
          } else {
            return StepResult::halt(pair_nat(stash, sim.output));
          }
        }
        std::vector<Nat> w{Nat(phase), stash};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <mr, point>: b -> run the membership SD of b at the point
  member_at_ = k.register_program(
      "membership of a point in a basic name", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, b] = unpair_nat(in);
        auto [mr, point] = unpair_nat(env);
        std::uint64_t phase = 0;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(mr, b);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            phase = 1;
            sim = Sim::of_eval(sim.output, point);
          } else {
            return StepResult::halt(Nat(0));
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <mr, b1, b2>: u -> halt iff u belongs to both basics
  both_member_ = k.register_program(
      "membership in the intersection of two basics",
      [](const Kernel& kk, const Nat& in, State st) {
        auto [env, u] = unpair_nat(in);
        auto [mr, b1, b2] = unpair3(env);
        std::uint64_t phase = 0;
        Nat stash;
        Sim sa, sb;
        if (st.empty()) {
          sa = Sim::of_eval(mr, b1);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          stash = st.words.at(pos++);
          sa = Sim::parse(st.words, pos);
          if (phase == 2) sb = Sim::parse(st.words, pos);
        }
        if (phase < 2) {
          sa.tick(kk);
          if (sa.done) {
            if (phase == 0) {
              stash = sa.output;  // SD name of b1
              phase = 1;
              sa = Sim::of_eval(mr, b2);
            } else {
              // got both SD names: run them jointly on u
              Nat sd2 = sa.output;
              phase = 2;
              sb = Sim::of_eval(sd2, u);
              sa = Sim::of_eval(stash, u);
            }
          }
        } else {
          if (!sa.done)
            sa.tick(kk);
          else
            sb.tick(kk);
          if (sa.done && sb.done) return StepResult::halt(Nat(0));
        }
        std::vector<Nat> w{Nat(phase), stash};
        sa.serialize(w);
        if (phase == 2) sb.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <basicPre, u, n>: slot p of (basicPre(u).F)(n)
  pre_ball_f_ = k.register_program(
      "preimage stream of one basic", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, p] = unpair_nat(in);
        auto [basic_pre, u, n] = unpair3(env);
        std::uint64_t phase = 0;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(basic_pre, u);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            phase = 1;
            sim = Sim::of_eval(unpair_nat(sim.output).second, n);  // F'(n)
          } else if (phase == 1) {
            phase = 2;
            sim = Sim::of_eval(sim.output, p);
          } else {
            return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <aq, bq>: halts on c_Q names strictly between the endpoints
  interval_sd_ = k.register_program(
      "membership in an open rational interval",
      [cqc, ltp](const Kernel& kk, const Nat& in, State st) {
        auto [env, n] = unpair_nat(in);
        auto [aq, bq] = unpair_nat(env);
        Sim sa, sb;
        if (st.empty()) {
          Nat xc = closure(cqc, n);
          sa = Sim::of_eval(closure(ltp, pair_nat(closure(cqc, aq), xc)), Nat(0));
          sb = Sim::of_eval(closure(ltp, pair_nat(xc, closure(cqc, bq))), Nat(0));
        } else {
          std::size_t pos = 0;
          sa = Sim::parse(st.words, pos);
          sb = Sim::parse(st.words, pos);
        }
        if (!sa.done)
          sa.tick(kk);
        else
          sb.tick(kk);
        if (sa.done && sb.done) return StepResult::halt(Nat(0));
        std::vector<Nat> w;
        sa.serialize(w);
        sb.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <aq, bq>: n -> left-real name of min(x - a, b - x)
  interval_f_ = k.register_program(
      "interval radius function", [cqc, arith, to_left, lm = reals.left_min_prog()](
                                      const Kernel&, const Nat& in, State) {
        auto [env, n] = unpair_nat(in);
        auto [aq, bq] = unpair_nat(env);
        Nat xc = closure(cqc, n);
        Nat left = closure(to_left, closure(arith, pair3(Nat(1), xc, closure(cqc, aq))));
        Nat right = closure(to_left, closure(arith, pair3(Nat(1), closure(cqc, bq), xc)));
        return StepResult::halt(closure(lm, pair_nat(left, right)));
      });

  // metric open -> spreen open: wrap positive radius emissions as balls
  m2s_seq_ = k.register_program(
      "spreen stream of a metric open",
      [ap = apply_, pos = pos_guard_, on = once_, cqc](const Kernel& kk, const Nat& in,
                                                       State st) {
        auto [env, j] = unpair_nat(in);
        auto [radius_fn, point] = unpair_nat(env);
        return run_engine_until(kk, std::move(st), m2s_spec(ap, pos, on, cqc, radius_fn, point),
                                to_u64(j));
      });
  m2s_f_ = k.register_program(
      "spreen F of a metric open", [seq = m2s_seq_](const Kernel&, const Nat& in, State) {
        auto [radius_fn, point] = unpair_nat(in);
        return StepResult::halt(closure(seq, pair_nat(radius_fn, point)));
      });

  // spreen open -> metric open: left radius as a floored running sup
  s2m_left_ = k.register_program(
      "left radius of a spreen open",
      [ap = apply_, to_left, arith, dc](const Kernel& kk, const Nat& in, State st) {
        auto [env, slotJ] = unpair_nat(in);
        auto [dist, fo, point] = unpair3(env);
        std::uint64_t j = to_u64(slotJ);
        UnionStreamSpec spec = s2m_spec(ap, to_left, arith, dc, dist, fo, point);
        auto es = EngineState::from(st);
        if (es->extra.empty()) es->extra = {Nat(0), cq_encode(Rational(0))};  // count, best
        std::vector<Emission> ems;
        es->core.tick(kk, spec, ems);
        std::uint64_t count = to_u64(es->extra[0]);
        Nat best = es->extra[1];
        for (auto& e : ems) {
          Rational v = cq_decode(e.value);
          if (v > cq_decode(best)) best = cq_encode(v);
          ++count;
          if (count == j + 1) return StepResult::halt(best);
        }
        es->extra = {Nat(count), best};
        State ns;
        ns.resident = std::move(es);
        return StepResult::run_on(std::move(ns));
      });
  s2m_f_ = k.register_program(
      "metric radius function of a spreen open",
      [seq = s2m_left_](const Kernel&, const Nat& in, State) {
        auto [env, point] = unpair_nat(in);
        auto [dist, fo] = unpair_nat(env);
        return StepResult::halt(closure(seq, pair3(dist, fo, point)));
      });

  // unions
  union_f_seq_ = k.register_program(
      "union F-stream", [fp = first_, ap = apply_](const Kernel& kk, const Nat& in, State st) {
        auto [env, j] = unpair_nat(in);
        auto [opens, point] = unpair_nat(env);
        return run_engine_until(kk, std::move(st), union_f_spec(fp, ap, opens, point),
                                to_u64(j));
      });
  union_f_ = k.register_program(
      "union F", [seq = union_f_seq_](const Kernel&, const Nat& in, State) {
        auto [opens, point] = unpair_nat(in);
        return StepResult::halt(closure(seq, pair_nat(opens, point)));
      });

  // intersections
  inter_f_seq_ = k.register_program(
      "intersection F-stream",
      [zp = zip_pair_, ap = apply_](const Kernel& kk, const Nat& in, State st) {
        auto [env, j] = unpair_nat(in);
        auto [g2, rest] = unpair_nat(env);
        auto [o1, o2, point] = unpair3(rest);
        return run_engine_until(kk, std::move(st), inter_f_spec(zp, ap, g2, o1, o2, point),
                                to_u64(j));
      });
  inter_f_ = k.register_program(
      "intersection F", [seq = inter_f_seq_](const Kernel&, const Nat& in, State) {
        auto [env, point] = unpair_nat(in);
        auto [g2, os] = unpair_nat(env);
        auto [o1, o2] = unpair_nat(os);
        return StepResult::halt(closure(seq, pair_nat(g2, pair3(o1, o2, point))));
      });

  // preimages
  preim_f_seq_ = k.register_program(
      "preimage F-stream", [ap = apply_, compose, pb = pre_ball_f_](const Kernel& kk,
                                                                    const Nat& in, State st) {
        auto [env, j] = unpair_nat(in);
        auto [f, rest] = unpair_nat(env);
        auto [basic_pre, fo, point] = unpair3(rest);
        return run_engine_until(kk, std::move(st),
                                preim_f_spec(ap, compose, pb, f, basic_pre, fo, point),
                                to_u64(j));
      });
  preim_f_ = k.register_program(
      "preimage F", [seq = preim_f_seq_](const Kernel&, const Nat& in, State) {
        auto [env, point] = unpair_nat(in);
        auto [f, rest] = unpair_nat(env);
        auto [basic_pre, fo] = unpair_nat(rest);
        return StepResult::halt(closure(seq, pair_nat(f, pair3(basic_pre, fo, point))));
      });

  // Lacombe membership and filtering
  lac_a_ = k.register_program(
      "membership in a Lacombe open", [ma = member_at_](const Kernel& kk, const Nat& in,
                                                        State st) {
        auto [env, point] = unpair_nat(in);
        auto [mr, ce] = unpair_nat(env);
        return run_engine_until(kk, std::move(st), lacombe_filter_spec(ma, mr, ce, point), 0);
      });
  lac_f_seq_ = k.register_program(
      "Lacombe open filtered at a point", [ma = member_at_](const Kernel& kk, const Nat& in,
                                                            State st) {
        auto [env, j] = unpair_nat(in);
        auto [mr, ce, point] = unpair3(env);
        return run_engine_until(kk, std::move(st), lacombe_filter_spec(ma, mr, ce, point),
                                to_u64(j));
      });
  lac_f_ = k.register_program(
      "spreen F of a Lacombe open", [seq = lac_f_seq_](const Kernel&, const Nat& in, State) {
        auto [env, point] = unpair_nat(in);
        auto [mr, ce] = unpair_nat(env);
        return StepResult::halt(closure(seq, pair3(mr, ce, point)));
      });

  // spreen -> lacombe enumeration
  s2l_seq_ = k.register_program(
      "Lacombe enumeration of a spreen open", [ap = apply_](const Kernel& kk, const Nat& in,
                                                            State st) {
        auto [env, j] = unpair_nat(in);
        auto [a, fo, dense] = unpair3(env);
        return run_engine_until(kk, std::move(st), s2l_spec(ap, a, fo, dense), to_u64(j));
      });

  // whole-space cover and intersector of the induced Lacombe basis
  cover_seq_ = k.register_program(
      "dense cover by G1", [ap = apply_](const Kernel& kk, const Nat& in, State st) {
        auto [env, j] = unpair_nat(in);
        auto [g1, dense] = unpair_nat(env);
        return run_engine_until(kk, std::move(st), cover_spec(ap, g1, dense), to_u64(j));
      });
  intersector_seq_ = k.register_program(
      "dense intersector by G2",
      [ap = apply_, bm = both_member_](const Kernel& kk, const Nat& in, State st) {
        auto [env, j] = unpair_nat(in);
        auto [front, rest] = unpair_nat(env);
        auto [g2, mr] = unpair_nat(front);
        auto [dense, b1, b2] = unpair3(rest);
        return run_engine_until(kk, std::move(st),
                                intersector_spec(ap, bm, g2, mr, dense, b1, b2), to_u64(j));
      });
  intersector_ = k.register_program(
      "intersector realizer", [seq = intersector_seq_](const Kernel&, const Nat& in, State) {
        auto [env, balls] = unpair_nat(in);
        auto [g2mr, dense] = unpair_nat(env);
        auto [b1, b2] = unpair_nat(balls);
        return StepResult::halt(closure(seq, pair_nat(g2mr, pair3(dense, b1, b2))));
      });

  // P_{n,k}: emit u_{phi_k(t)} while run(n, n) lasts, constant afterwards
  pnk_ = k.register_program(
      "Moschovakis P_{n,k}", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, t] = unpair_nat(in);
        auto [n, kk_idx, u] = unpair3(env);
        std::uint64_t phase = 0;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_run(n, n);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        if (phase == 0) {
          // watch run(n, n) for up to t of its own steps
          if (Nat(sim.steps) < t && !sim.done && !sim.dead) sim.tick(kk);
          if (sim.done || sim.dead || Nat(sim.steps) >= t) {
            // index = t if still running, halting stage - 1 if it halted
            Nat idx = sim.done ? Nat(sim.steps - 1) : t;
            phase = 1;
            sim = Sim::of_run(kk_idx, idx);
          }
        } else {
          sim.tick(kk);
          if (sim.done) {
            if (phase == 1) {
              phase = 2;
              sim = Sim::of_eval(u, sim.output);
            } else {
              return StepResult::halt(sim.output);
            }
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // the three selection filters of the universal dense sequence:
  // run(n,n) halts; phi_k total up to the halting stage; the selected
  // subsequence converges faster than 2^-t (finitely many strict checks)
  udn_filter_ = k.register_program(
      "universal dense name filters", [cqc, ltp, dc](const Kernel& kk, const Nat& in, State st) {
        auto [env, arg] = unpair_nat(in);
        (void)arg;
        auto [nk, rest] = unpair_nat(env);
        auto [n, kidx] = unpair_nat(nk);
        auto [u, dist] = unpair_nat(rest);
        std::uint64_t phase = 0, t = 0, tmax = 0;
        std::vector<Nat> names;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_run(n, n);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          t = to_u64(st.words.at(pos++));
          tmax = to_u64(st.words.at(pos++));
          std::size_t cnt = to_u64(st.words.at(pos++));
          for (std::size_t i = 0; i < cnt; ++i) names.push_back(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (phase == 0) {
          if (sim.done) {
            tmax = sim.steps - 1;  // halting stage
            phase = 1;
            t = 0;
            sim = Sim::of_run(kidx, Nat(0));
          }
        } else if (phase == 1) {  // phi_k(t) for t = 0..tmax
          if (sim.done) {
            names.push_back(sim.output);  // stash phi_k(t)
            if (t == tmax) {
              phase = 2;
              t = 0;
              sim = Sim::of_eval(u, names[0]);
            } else {
              ++t;
              sim = Sim::of_run(kidx, Nat(t));
            }
          }
        } else if (phase == 2) {  // u_{phi_k(t)}
          if (sim.done) {
            names[t] = sim.output;  // replace index by the dense name
            if (t == tmax) {
              if (tmax == 0) return StepResult::halt(Nat(0));  // constant sequence
              phase = 3;
              t = 0;
              Nat d = closure(dc, pair3(dist, names[0], names[tmax]));
              Nat eps = closure(cqc, cq_encode(pow2(0)));
              sim = Sim::of_eval(closure(ltp, pair_nat(d, eps)), Nat(0));
            } else {
              ++t;
              sim = Sim::of_eval(u, names[t]);
            }
          }
        } else {  // phase 3: strict d(w_t, w_tmax) < 2^-t for t < tmax
          if (sim.done) {
            if (t + 1 == tmax) return StepResult::halt(Nat(0));
            ++t;
            Nat d = closure(dc, pair3(dist, names[t], names[tmax]));
            Nat eps = closure(cqc, cq_encode(pow2(-static_cast<long>(t))));
            sim = Sim::of_eval(closure(ltp, pair_nat(d, eps)), Nat(0));
          }
        }
        std::vector<Nat> w{Nat(phase), Nat(t), Nat(tmax), Nat(names.size())};
        for (auto& x : names) w.push_back(x);
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  udn_seq_ = k.register_program(
      "universal dense names",
      [identity, fl = udn_filter_, oa = once_apply_, pk = pnk_](const Kernel& kk, const Nat& in,
                                                                State st) {
        auto [env, j] = unpair_nat(in);
        auto [u, rest] = unpair_nat(env);
        auto [limit, dist] = unpair_nat(rest);
        return run_engine_until(kk, std::move(st), udn_spec(identity, fl, oa, pk, u, limit, dist),
                                to_u64(j));
      });

  // env = <C, <dist, w>>: slot 0 is the ball around w given by C's output
  n2l_ball_ = k.register_program(
      "centered ball from a Nogina producer",
      [arith, dc](const Kernel& kk, const Nat& in, State st) -> StepResult {
        auto [env, slot] = unpair_nat(in);
        if (slot != 0) return StepResult::run_on(std::move(st));
        auto [c, rest] = unpair_nat(env);
        auto [dist, w] = unpair_nat(rest);
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(c, w);
        } else {
          std::size_t pos = 0;
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          auto [m, r] = unpair_nat(sim.output);
          Nat d = closure(dc, pair3(dist, m, w));
          return StepResult::halt(pair_nat(w, closure(arith, pair3(Nat(1), r, d))));
        }
        std::vector<Nat> w2;
        sim.serialize(w2);
        return StepResult::run_on(words_state(std::move(w2)));
      });

  n2l_seq_ = k.register_program(
      "Lacombe cover of a Nogina open", [nb = n2l_ball_](const Kernel& kk, const Nat& in,
                                                         State st) {
        auto [env, j] = unpair_nat(in);
        auto [ac, rest] = unpair_nat(env);
        auto [a, c] = unpair_nat(ac);
        auto [wseq, dist] = unpair_nat(rest);
        return run_engine_until(kk, std::move(st), n2l_spec(nb, a, c, wseq, dist), to_u64(j));
      });

  // env = <dist, ball>: C(n) = ball around n of radius r - d(center, n)
  nogina_c_ = k.register_program(
      "Nogina producer of a metric ball", [arith, dc](const Kernel&, const Nat& in, State) {
        auto [env, n] = unpair_nat(in);
        auto [dist, ball] = unpair_nat(env);
        auto [center, r] = unpair_nat(ball);
        Nat d = closure(dc, pair3(dist, center, n));
        return StepResult::halt(pair_nat(n, closure(arith, pair3(Nat(1), r, d))));
      });

  // changed basis numberings
  transport_g1_ = k.register_program(
      "G1 of a changed numbering", [ap = apply_, compose](const Kernel&, const Nat& in, State) {
        auto [env, n] = unpair_nat(in);
        auto [f12, g1] = unpair_nat(env);
        Nat seq = closure(ap, pair_nat(g1, n));
        return StepResult::halt(closure(compose, pair_nat(seq, f12)));
      });
  transport_g2_seq_ = k.register_program(
      "G2 stream of a changed numbering", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, p] = unpair_nat(in);
        auto [fs, rest] = unpair_nat(env);
        auto [f12, f21] = unpair_nat(fs);
        auto [g2, n, balls] = unpair3(rest);
        auto [b1, b2] = unpair_nat(balls);
        std::uint64_t phase = 0;
        Nat stash;
        Sim sim;
        if (st.empty()) {
          sim = Sim::of_eval(f21, b1);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          stash = st.words.at(pos++);
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          switch (phase) {
            case 0:
              stash = sim.output;
              phase = 1;
              sim = Sim::of_eval(f21, b2);
              break;
            case 1:
              phase = 2;
              sim = Sim::of_eval(g2, pair_nat(n, pair_nat(stash, sim.output)));
              break;
            case 2:
              phase = 3;
              sim = Sim::of_eval(sim.output, p);
              break;
            case 3:
              phase = 4;
              sim = Sim::of_eval(f12, sim.output);
              break;
            default:
              return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase), stash};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });
  transport_g2_ = k.register_program(
      "G2 of a changed numbering", [seq = transport_g2_seq_](const Kernel&, const Nat& in,
                                                             State) {
        auto [env, args] = unpair_nat(in);
        auto [fs, g2] = unpair_nat(env);
        auto [n, balls] = unpair_nat(args);
        return StepResult::halt(closure(seq, pair_nat(fs, pair3(g2, n, balls))));
      });
}

// ---------------------------------------------------------------------------
// Membership.

Verdict TopologyLib::member(const SpreenOpenName& o, const Nat& point, Fuel fuel) const {
  return nums_->sd_member(SemiDecidableName{o.a()}, point, fuel);
}

Verdict TopologyLib::member(const MetricOpenName& o, const Nat& point, Fuel fuel) const {
  return nums_->sd_member(SemiDecidableName{o.a()}, point, fuel);
}

Verdict TopologyLib::member(const NoginaOpenName& o, const Nat& point, Fuel fuel) const {
  return nums_->sd_member(SemiDecidableName{o.a()}, point, fuel);
}

Verdict TopologyLib::lacombe_member(const LacombeBasisData& lb, const LacombeOpenName& l,
                                    const Nat& point, Fuel fuel) const {
  Nat name = closure(lac_a_, pair_nat(lb.member_realizer, l.ce.name));
  return eval_name(*kernel_, name, point, fuel).halted() ? Verdict::yes : Verdict::not_yet;
}

UnionStreamSpec TopologyLib::f_stream_spec(const SpreenOpenName& o, const Nat& point) const {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = closure(apply_, pair_nat(o.f(), point));
  spec.emit_on_admission = true;
  return spec;
}

std::vector<Nat> TopologyLib::f_stream(const SpreenOpenName& o, const Nat& point, Fuel fuel,
                                       std::uint64_t max_emissions) const {
  DriveResult r = drive(*kernel_, f_stream_spec(o, point), fuel, max_emissions);
  std::vector<Nat> out;
  for (auto& e : r.emissions) out.push_back(std::move(e.value));
  return out;
}

// ---------------------------------------------------------------------------
// Spreen algebra.

SpreenOpenName TopologyLib::basic_as_open(const SpreenBasis& b, const Nat& basic,
                                          Fuel fuel) const {
  RunResult sd = eval_name(*kernel_, b.member_realizer, basic, fuel);
  // membership realizers are one-step minters for every shipped basis
  Nat a = sd.halted() ? sd.output : Nat(0);
  Nat f = nums_->const_name(nums_->const_name(basic));  // F(n) = (basic, basic, ...)
  return SpreenOpenName::make(a, f);
}

SpreenOpenName TopologyLib::whole_space_open(const SpreenBasis& b) const {
  return SpreenOpenName::make(nums_->sd_whole().name, b.g1);
}

SpreenOpenName TopologyLib::empty_open() const {
  // F is never consulted on the empty set; the empty stream suffices
  return SpreenOpenName::make(nums_->sd_empty().name,
                              nums_->const_name(nums_->ce_of_finite({}).name));
}

SpreenOpenName TopologyLib::spreen_union(const CeName& opens) const {
  CeName a_codes{nums_->map_slots(closure(first_, Nat(0)), opens.name)};
  Nat a = nums_->sd_union_ce(a_codes).name;
  Nat f = closure(union_f_, opens.name);
  return SpreenOpenName::make(a, f);
}

SpreenOpenName TopologyLib::spreen_union(const std::vector<SpreenOpenName>& opens) const {
  std::vector<Nat> names;
  for (auto& o : opens) names.push_back(o.name);
  return spreen_union(nums_->ce_of_finite(names));
}

SpreenOpenName TopologyLib::spreen_intersect(const SpreenBasis& b, const SpreenOpenName& o1,
                                             const SpreenOpenName& o2) const {
  Nat a = nums_->sd_intersect(SemiDecidableName{o1.a()}, SemiDecidableName{o2.a()}).name;
  Nat f = closure(inter_f_, pair_nat(b.g2, pair_nat(o1.name, o2.name)));
  return SpreenOpenName::make(a, f);
}

SpreenOpenName TopologyLib::spreen_preimage(const Realizer& f, const Nat& basic_pre,
                                            const SpreenOpenName& o) const {
  Nat a = closure(nums_->compose_prog(), pair_nat(f.name, o.a()));
  Nat ff = closure(preim_f_, pair_nat(f.name, pair_nat(basic_pre, o.f())));
  return SpreenOpenName::make(a, ff);
}

// ---------------------------------------------------------------------------
// Direct metric description.

MetricOpenName TopologyLib::metric_open(const SemiDecidableName& a, const Nat& radius_fn) const {
  return MetricOpenName::make(a.name, radius_fn);
}

MetricOpenName TopologyLib::interval_open(const MetricSpace& line, const Rational& lo,
                                          const Rational& hi) const {
  (void)line;
  Nat env = pair_nat(cq_encode(lo), cq_encode(hi));
  return MetricOpenName::make(closure(interval_sd_, env), closure(interval_f_, env));
}

SpreenOpenName TopologyLib::metric_to_spreen(const MetricOpenName& o) const {
  return SpreenOpenName::make(o.a(), closure(m2s_f_, o.f()));
}

MetricOpenName TopologyLib::spreen_to_metric(const MetricSpace& s,
                                             const SpreenOpenName& o) const {
  return MetricOpenName::make(o.a(), closure(s2m_f_, pair_nat(s.dist, o.f())));
}

LeftReal TopologyLib::metric_radius(const MetricOpenName& o, const Nat& point, Fuel fuel) const {
  RunResult r = eval_name(*kernel_, o.f(), point, fuel);
  return LeftReal{r.halted() ? r.output : Nat(0)};
}

// ---------------------------------------------------------------------------
// Lacombe.

LacombeOpenName TopologyLib::lacombe_of_basics(const std::vector<Nat>& basics) const {
  return LacombeOpenName{nums_->ce_of_finite(basics)};
}

SpreenOpenName TopologyLib::lacombe_to_spreen(const LacombeBasisData& lb,
                                              const LacombeOpenName& l) const {
  Nat env = pair_nat(lb.member_realizer, l.ce.name);
  return SpreenOpenName::make(closure(lac_a_, env), closure(lac_f_, env));
}

UnionStreamSpec TopologyLib::spreen_to_lacombe_spec(const SpreenOpenName& o,
                                                    const CeName& dense) const {
  return s2l_spec(apply_, o.a(), o.f(), dense.name);
}

LacombeOpenName TopologyLib::spreen_to_lacombe(const SpreenBasis& b, const CeName& dense,
                                               const SpreenOpenName& o) const {
  (void)b;
  return LacombeOpenName{CeName{closure(s2l_seq_, pair3(o.a(), o.f(), dense.name))}};
}

LacombeBasisData TopologyLib::spreen_basis_to_lacombe_basis(const SpreenBasis& b,
                                                            const CeName& dense) const {
  LacombeBasisData lb;
  lb.space = b.space;
  lb.member_realizer = b.member_realizer;
  lb.cover = CeName{closure(cover_seq_, pair_nat(b.g1, dense.name))};
  lb.intersector =
      closure(intersector_, pair_nat(pair_nat(b.g2, b.member_realizer), dense.name));
  return lb;
}

SemiDecidableName TopologyLib::ershov_preimage(const Realizer& f,
                                               const SemiDecidableName& a) const {
  return SemiDecidableName{closure(nums_->compose_prog(), pair_nat(f.name, a.name))};
}

// ---------------------------------------------------------------------------
// Nogina and the Moschovakis construction.

NoginaOpenName TopologyLib::nogina_ball_open(const MetricSpace& s, const BallName& ball) const {
  Nat a = metric_->ball_sd(s, ball).name;
  Nat c = closure(nogina_c_, pair_nat(s.dist, ball.name));
  return NoginaOpenName::make(a, c);
}

Nat TopologyLib::moschovakis_pnk(ProgramIndex n, ProgramIndex k, const CeName& u) const {
  return closure(pnk_, pair3(Nat(n), Nat(k), u.name));
}

UnionStreamSpec TopologyLib::universal_dense_spec(const MetricSpace& s, const CeName& u) const {
  Nat limit = s.limit ? *s.limit : Nat(0);
  return udn_spec(nums_->identity_prog(), udn_filter_, once_apply_, pnk_, u.name, limit, s.dist);
}

Nat TopologyLib::universal_dense_seq(const MetricSpace& s, const CeName& u) const {
  Nat limit = s.limit ? *s.limit : Nat(0);
  return closure(udn_seq_, pair_nat(u.name, pair_nat(limit, s.dist)));
}

std::vector<Nat> TopologyLib::universal_dense_names(const MetricSpace& s, const CeName& u,
                                                    Fuel fuel, std::uint64_t max_names) const {
  DriveResult r = drive(*kernel_, universal_dense_spec(s, u), fuel, max_names);
  std::vector<Nat> out;
  for (auto& e : r.emissions) out.push_back(std::move(e.value));
  return out;
}

UnionStreamSpec TopologyLib::nogina_to_lacombe_spec(const MetricSpace& s, const CeName& u,
                                                    const NoginaOpenName& o) const {
  return n2l_spec(n2l_ball_, o.a(), o.c(), universal_dense_seq(s, u), s.dist);
}

LacombeOpenName TopologyLib::nogina_to_lacombe(const MetricSpace& s, const CeName& u,
                                               const NoginaOpenName& o) const {
  Nat env = pair_nat(pair_nat(o.a(), o.c()), pair_nat(universal_dense_seq(s, u), s.dist));
  return LacombeOpenName{CeName{closure(n2l_seq_, env)}};
}

// ---------------------------------------------------------------------------
// Formal metric continuity.

ModulusReport TopologyLib::modulus_check(const MetricSpace& s1, const MetricSpace& s2,
                                         const Realizer& f, const Nat& phi,
                                         const std::vector<ModulusSample>& samples,
                                         Fuel fuel) const {
  ModulusReport rep;
  for (const ModulusSample& s : samples) {
    ++rep.samples;
    LeftReal eps_left = reals_->left_constant(s.eps);
    RunResult delta = eval_name(*kernel_, phi, pair_nat(s.x, eps_left.name), fuel);
    if (!delta.halted()) {
      ++rep.inconclusive;
      continue;
    }
    CauchyReal dxy = metric_->distance(s1, s.x, s.y);
    Nat premise = reals_->lt_left_name(dxy, LeftReal{delta.output});
    if (!eval_name(*kernel_, premise, Nat(0), fuel).halted()) {
      ++rep.inconclusive;
      continue;
    }
    ++rep.premise_confirmed;
    RunResult fx = nums_->apply_realizer(f, s.x, fuel);
    RunResult fy = nums_->apply_realizer(f, s.y, fuel);
    if (!fx.halted() || !fy.halted()) {
      ++rep.inconclusive;
      continue;
    }
    CauchyReal dimg = metric_->distance(s2, fx.output, fy.output);
    CauchyReal epsc = reals_->constant(s.eps);
    if (reals_->semidecide_lt(dimg, epsc, fuel) == Verdict::yes) {
      ++rep.image_confirmed;
    } else if (reals_->semidecide_lt(epsc, dimg, fuel) == Verdict::yes) {
      rep.violations.push_back(s);
    } else {
      ++rep.inconclusive;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Inclusion harnesses.

bool TopologyLib::name_below_stream(const FormalInclusion& incl, const Nat& b,
                                    const std::vector<Nat>& stream, Fuel fuel) const {
  for (const Nat& u : stream) {
    if (incl.exact) {
      if (auto v = incl.exact(b, u)) {
        if (*v) return true;
        continue;
      }
    }
    if (incl.semi && incl.semi(b, u, fuel) == Verdict::yes) return true;
  }
  return false;
}

bool TopologyLib::spreen_incl_sampled(const FormalInclusion& incl, const SpreenOpenName& o1,
                                      const SpreenOpenName& o2, const std::vector<Nat>& points,
                                      std::uint64_t stream_len, Fuel fuel) const {
  for (const Nat& p : points) {
    if (member(o1, p, fuel) != Verdict::yes) continue;
    if (member(o2, p, fuel) != Verdict::yes) return false;
    std::vector<Nat> s1 = f_stream(o1, p, fuel, stream_len);
    std::vector<Nat> s2 = f_stream(o2, p, fuel, stream_len);
    for (const Nat& u : s1)
      if (!name_below_stream(incl, u, s2, fuel)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Basis numbering changes.

SpreenBasis TopologyLib::transport_basis(const SpreenBasis& b, const NumberingChange& ch,
                                         Fuel fuel) const {
  SpreenBasis t;
  t.space = b.space;
  t.member_realizer = closure(nums_->compose_prog(), pair_nat(ch.f21, b.member_realizer));
  Kernel* kn = kernel_;
  FormalInclusion base = b.incl;
  Nat f21 = ch.f21;
  t.incl.exact = [kn, base, f21, fuel](const Nat& x, const Nat& y) -> std::optional<bool> {
    RunResult rx = eval_name(*kn, f21, x, fuel);
    RunResult ry = eval_name(*kn, f21, y, fuel);
    if (!rx.halted() || !ry.halted() || !base.exact) return std::nullopt;
    return base.exact(rx.output, ry.output);
  };
  t.incl.semi = [kn, base, f21](const Nat& x, const Nat& y, Fuel fl) -> Verdict {
    RunResult rx = eval_name(*kn, f21, x, fl / 4);
    RunResult ry = eval_name(*kn, f21, y, fl / 4);
    if (!rx.halted() || !ry.halted() || !base.semi) return Verdict::not_yet;
    return base.semi(rx.output, ry.output, fl / 2);
  };
  t.g1 = closure(transport_g1_, pair_nat(ch.f12, b.g1));
  t.g2 = closure(transport_g2_, pair_nat(pair_nat(ch.f12, ch.f21), b.g2));
  return t;
}

bool TopologyLib::roundtrip_law(const SpreenBasis& b, const NumberingChange& ch,
                                const std::vector<Nat>& basics, Fuel fuel) const {
  for (const Nat& x : basics) {
    RunResult fwd = eval_name(*kernel_, ch.f12, x, fuel);
    if (!fwd.halted()) return false;
    RunResult back = eval_name(*kernel_, ch.f21, fwd.output, fuel);
    if (!back.halted()) return false;
    // b ~ f21(f12(b)) under the formal inclusion
    auto le = b.incl.exact ? b.incl.exact(x, back.output) : std::nullopt;
    auto ge = b.incl.exact ? b.incl.exact(back.output, x) : std::nullopt;
    if (le && ge) {
      if (!*le || !*ge) return false;
      continue;
    }
    if (b.incl.semi(x, back.output, fuel) != Verdict::yes) return false;
    if (b.incl.semi(back.output, x, fuel) != Verdict::yes) return false;
  }
  return true;
}

}  // namespace efftop
