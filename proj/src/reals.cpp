#include "efftop/reals.hpp"

#include <cctype>

namespace efftop {

// ---------------------------------------------------------------------------
// Rational text forms.

std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += "/";
    s += denominator(q).str();
  }
  return s;
}

RationalParse parse_rational(const std::string& text) {
  RationalParse out;
  std::size_t i = 0;
  auto fail = [&](std::size_t pos) {
    out.value.reset();
    out.error_pos = pos;
    return out;
  };
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail(i);
  Nat num = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    num = num * 10 + (text[i] - '0');
    ++i;
  }
  Nat den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail(i);
    den = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      den = den * 10 + (text[i] - '0');
      ++i;
    }
    if (den == 0) return fail(i - 1);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail(i);
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      ++i;
    }
  }
  if (i != text.size()) return fail(i);
  Rational q(num, den);
  if (neg) q = -q;
  out.value = q;
  return out;
}

// ---------------------------------------------------------------------------
// c_Q codec: <p,q,r> -> (-1)^p q/(r+1).

Rational cq_decode(const Nat& name) {
  auto [p, q, r] = unpair3(name);
  Rational v(q, r + 1);
  if (p % 2 == 1) v = -v;
  return v;
}

Nat cq_encode(const Rational& q) {
  Nat p = q < 0 ? 1 : 0;
  Nat a = boost::multiprecision::abs(numerator(q));
  Nat b = denominator(q);
  return pair3(p, a, b - 1);
}

// ---------------------------------------------------------------------------

namespace {

Rational q_of(const Nat& name) { return cq_decode(name); }

State words_state(std::vector<Nat> w) {
  State st;
  st.words = std::move(w);
  return st;
}

Nat isqrt(const Nat& n) { return boost::multiprecision::sqrt(n); }

}  // namespace

// ---------------------------------------------------------------------------
// RealsLib.

RealsLib::RealsLib(Kernel& k) : kernel_(&k) {
  cq_const_ = k.register_program(
      "cauchy constant: every approximation is the payload rational",
      [](const Kernel&, const Nat& in, State) {
        auto [env, arg] = unpair_nat(in);
        (void)arg;
        return StepResult::halt(env);
      });

  sqrt_ = k.register_program(
      "cauchy sqrt: digit-refined square root of the payload rational",
      [](const Kernel&, const Nat& in, State) {
        auto [env, arg] = unpair_nat(in);
        Rational q = q_of(env);
        if (q < 0) q = 0;
        unsigned m = static_cast<unsigned>(to_u64(arg)) + 1;
        Nat a = numerator(q), b = denominator(q);
        Nat scaled = (a * b) << (2 * m);  // a*b*4^m
        Rational approx(isqrt(scaled), b << m);
        return StepResult::halt(cq_encode(approx));
      });

  // env = <op, a, b>; op 0 add, 1 sub, 2 min; the n-th approximation
  // combines the (n+1)-th approximations of both operands
  arith_ = k.register_program(
      "cauchy arithmetic (add/sub/min)", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, n] = unpair_nat(in);
        auto [op, a, b] = unpair3(env);
        Sim sa, sb;
        if (st.words.empty()) {
          sa = Sim::of_eval(a, n + 1);
          sb = Sim::of_eval(b, n + 1);
        } else {
          std::size_t pos = 0;
          sa = Sim::parse(st.words, pos);
          sb = Sim::parse(st.words, pos);
        }
        if (!sa.done)
          sa.tick(kk);
        else if (!sb.done)
          sb.tick(kk);
        if (sa.done && sb.done) {
          Rational qa = q_of(sa.output), qb = q_of(sb.output);
          Rational r;
          if (op == 0)
            r = qa + qb;
          else if (op == 1)
            r = qa - qb;
          else
            r = qa < qb ? qa : qb;
          return StepResult::halt(cq_encode(r));
        }
        std::vector<Nat> w;
        sa.serialize(w);
        sb.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = <a, b>: halts iff a < b, witnessed at some precision n by
  // approx_a(n) + 2^-n < approx_b(n) - 2^-n.  Each precision round pays n
  // bookkeeping steps so the precision reached stays ~sqrt(fuel) and the
  // exact arithmetic per step stays small.
  lt_ = k.register_program(
      "semidecide a < b over cauchy names", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, arg] = unpair_nat(in);
        (void)arg;
        auto [a, b] = unpair_nat(env);
        std::uint64_t n = 0, delay = 0;
        Sim sa, sb;
        if (st.words.empty()) {
          sa = Sim::of_eval(a, Nat(0));
          sb = Sim::of_eval(b, Nat(0));
        } else {
          std::size_t pos = 0;
          n = to_u64(st.words.at(pos++));
          delay = to_u64(st.words.at(pos++));
          sa = Sim::parse(st.words, pos);
          sb = Sim::parse(st.words, pos);
        }
        if (delay > 0) {
          --delay;
        } else if (!sa.done) {
          sa.tick(kk);
        } else if (!sb.done) {
          sb.tick(kk);
        }
        if (delay == 0 && sa.done && sb.done) {
          // qa + 2^-n < qb - 2^-n, cross-multiplied to integer form
          Rational diff = q_of(sa.output) - q_of(sb.output);
          Nat lhs = numerator(diff) * (Nat(1) << static_cast<unsigned>(n)) +
                    2 * denominator(diff);
          if (lhs < 0) return StepResult::halt(Nat(0));
          ++n;  // retry at the next precision
          delay = n;
          sa = Sim::of_eval(a, Nat(n));
          sb = Sim::of_eval(b, Nat(n));
        }
        std::vector<Nat> w{Nat(n), Nat(delay)};
        sa.serialize(w);
        sb.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  left_const_ = k.register_program(
      "left real of a rational: emits q - 2^-k", [](const Kernel&, const Nat& in, State) {
        auto [env, slot] = unpair_nat(in);
        Rational q = q_of(env);
        long kexp = static_cast<long>(to_u64(slot));
        return StepResult::halt(cq_encode(q - pow2(-kexp)));
      });

  // env = cauchy name; slot n -> max_{k<=n}(approx(k) - 2^-k)
  to_left_ = k.register_program(
      "left real from a cauchy name", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, slotN] = unpair_nat(in);
        std::uint64_t n = to_u64(slotN);
        std::uint64_t kidx = 0;
        bool has_best = false;
        Nat best;
        Sim sim;
        if (st.words.empty()) {
          sim = Sim::of_eval(env, Nat(0));
        } else {
          std::size_t pos = 0;
          kidx = to_u64(st.words.at(pos++));
          has_best = st.words.at(pos++) != 0;
          best = st.words.at(pos++);
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          Rational cand = q_of(sim.output) - pow2(-static_cast<long>(kidx));
          if (!has_best || cand > q_of(best)) {
            best = cq_encode(cand);
            has_best = true;
          }
          if (kidx == n) return StepResult::halt(best);
          ++kidx;
          sim = Sim::of_eval(env, Nat(kidx));
        }
        std::vector<Nat> w{Nat(kidx), Nat(has_best ? 1 : 0), best};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  left_min_ = k.register_program(
      "pointwise min of two left reals", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, slot] = unpair_nat(in);
        auto [a, b] = unpair_nat(env);
        Sim sa, sb;
        if (st.words.empty()) {
          sa = Sim::of_eval(a, slot);
          sb = Sim::of_eval(b, slot);
        } else {
          std::size_t pos = 0;
          sa = Sim::parse(st.words, pos);
          sb = Sim::parse(st.words, pos);
        }
        if (!sa.done)
          sa.tick(kk);
        else if (!sb.done)
          sb.tick(kk);
        if (sa.done && sb.done) {
          Rational qa = q_of(sa.output), qb = q_of(sb.output);
          return StepResult::halt(cq_encode(qa < qb ? qa : qb));
        }
        std::vector<Nat> w;
        sa.serialize(w);
        sb.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });

  // env = ce of left-real codes; slot j -> running max after j+1 merged
  // emissions (dovetailed over the whole family)
  left_sup_ = k.register_program(
      "sup of an enumerable family of left reals",
      [](const Kernel& kk, const Nat& in, State st) {
        auto [env, slotJ] = unpair_nat(in);
        std::uint64_t j = to_u64(slotJ);
        UnionStreamSpec spec;
        spec.seeds = UnionStreamSpec::Seeds::slots;
        spec.outer_src = env;
        spec.inner = [](std::uint64_t, const Nat& seed) -> std::optional<Nat> { return seed; };
        auto es = EngineState::from(st);
        if (es->extra.empty()) es->extra = {Nat(0), Nat(0), Nat(0)};  // count, has, best
        std::vector<Emission> ems;
        es->core.tick(kk, spec, ems);
        std::uint64_t count = to_u64(es->extra[0]);
        bool has = es->extra[1] != 0;
        Nat best = es->extra[2];
        for (auto& e : ems) {
          Rational v = q_of(e.value);
          if (!has || v > q_of(best)) {
            best = cq_encode(v);
            has = true;
          }
          ++count;
          if (count == j + 1) return StepResult::halt(best);
        }
        es->extra = {Nat(count), Nat(has ? 1 : 0), best};
        State ns;
        ns.resident = std::move(es);
        return StepResult::run_on(std::move(ns));
      });

  // env = <x, l>: halts iff x < l, i.e. some emission of l strictly exceeds x
  lt_left_ = k.register_program(
      "semidecide x < l for cauchy x and left real l",
      [lt = lt_, cq = cq_const_](const Kernel& kk, const Nat& in, State st) {
        auto [env, arg] = unpair_nat(in);
        (void)arg;
        auto [x, l] = unpair_nat(env);
        UnionStreamSpec spec;
        spec.seeds = UnionStreamSpec::Seeds::slots;
        spec.outer_src = l;
        spec.guard = [lt, cq, x = x](std::uint64_t,
                                     const Nat& emitted) -> std::optional<std::pair<Nat, Nat>> {
          Nat cname = closure(cq, emitted);  // constant cauchy at the emission
          return std::make_pair(closure(lt, pair_nat(x, cname)), Nat(0));
        };
        spec.emit_on_admission = true;
        return run_engine_until(kk, std::move(st), spec, 0);
      });

  // env = sequence of cauchy names with |x_k - L| <= 2^-k;
  // n-th approximation = (n+2)-th approximation of the (n+2)-th term
  limit_ = k.register_program(
      "limit of a fast cauchy sequence", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, n] = unpair_nat(in);
        Nat prec = n + 2;
        std::uint64_t phase = 0;
        Sim sim;
        if (st.words.empty()) {
          sim = Sim::of_eval(env, prec);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            phase = 1;
            sim = Sim::of_eval(sim.output, prec);
          } else {
            return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });
}

CauchyReal RealsLib::constant(const Rational& q) const {
  return CauchyReal{closure(cq_const_, cq_encode(q))};
}

CauchyReal RealsLib::sqrt_of(const Rational& q) const {
  return CauchyReal{closure(sqrt_, cq_encode(q))};
}

CauchyReal RealsLib::add(const CauchyReal& a, const CauchyReal& b) const {
  return CauchyReal{closure(arith_, pair3(Nat(0), a.name, b.name))};
}

CauchyReal RealsLib::sub(const CauchyReal& a, const CauchyReal& b) const {
  return CauchyReal{closure(arith_, pair3(Nat(1), a.name, b.name))};
}

CauchyReal RealsLib::min(const CauchyReal& a, const CauchyReal& b) const {
  return CauchyReal{closure(arith_, pair3(Nat(2), a.name, b.name))};
}

std::optional<Rational> RealsLib::approx(const CauchyReal& x, std::uint64_t n, Fuel fuel) const {
  RunResult r = eval_name(*kernel_, x.name, Nat(n), fuel);
  if (!r.halted()) return std::nullopt;
  return cq_decode(r.output);
}

std::optional<Rational> RealsLib::constant_value(const CauchyReal& x) const {
  auto [prog, env] = closure_parts(x.name);
  if (prog != cq_const_) return std::nullopt;
  return cq_decode(env);
}

Nat RealsLib::lt_name(const CauchyReal& a, const CauchyReal& b) const {
  return closure(lt_, pair_nat(a.name, b.name));
}

Verdict RealsLib::semidecide_lt(const CauchyReal& a, const CauchyReal& b, Fuel fuel) const {
  RunResult r = eval_name(*kernel_, lt_name(a, b), Nat(0), fuel);
  return r.halted() ? Verdict::yes : Verdict::not_yet;
}

LeftReal RealsLib::left_constant(const Rational& q) const {
  return LeftReal{closure(left_const_, cq_encode(q))};
}

LeftReal RealsLib::cauchy_to_left(const CauchyReal& x) const {
  return LeftReal{closure(to_left_, x.name)};
}

LeftReal RealsLib::left_min(const LeftReal& a, const LeftReal& b) const {
  return LeftReal{closure(left_min_, pair_nat(a.name, b.name))};
}

LeftReal RealsLib::left_sup(const Nat& family_ce) const {
  return LeftReal{closure(left_sup_, family_ce)};
}

std::optional<Rational> RealsLib::left_emit(const LeftReal& l, std::uint64_t slot,
                                            Fuel fuel) const {
  RunResult r = eval_name(*kernel_, l.name, Nat(slot), fuel);
  if (!r.halted()) return std::nullopt;
  return cq_decode(r.output);
}

Nat RealsLib::lt_left_name(const CauchyReal& x, const LeftReal& l) const {
  return closure(lt_left_, pair_nat(x.name, l.name));
}

CauchyReal RealsLib::limit(const Nat& seq_name) const {
  return CauchyReal{closure(limit_, seq_name)};
}

}  // namespace efftop
