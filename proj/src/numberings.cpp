#include "efftop/numberings.hpp"

namespace efftop {

Nat encode_list(const std::vector<Nat>& xs) {
  Nat body = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = pair_nat(*it, body);
  return pair_nat(Nat(xs.size()), body);
}

std::vector<Nat> decode_list(const Nat& n) {
  auto [len, body] = unpair_nat(n);
  std::vector<Nat> out;
  std::uint64_t count = to_u64(len);
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto [head, rest] = unpair_nat(body);
    out.push_back(head);
    body = rest;
  }
  return out;
}

namespace {

State words_state(std::vector<Nat> w) {
  State st;
  st.words = std::move(w);
  return st;
}

}  // namespace

NumberingsLib::NumberingsLib(Kernel& k, const RealsLib&) : kernel_(&k) {
  always_ = k.register_program("halts on every name", [](const Kernel&, const Nat&, State) {
    return StepResult::halt(Nat(0));
  });

  never_ = k.register_program("halts on no name", [](const Kernel&, const Nat&, State st) {
    return StepResult::run_on(std::move(st));
  });

  // env = <a, b>: halt when both SD runs on the argument halt
  sd_and_ = k.register_program(
      "intersection of two semi-decidable sets", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, point] = unpair_nat(in);
        auto [a, b] = unpair_nat(env);
        Sim sa, sb;
        if (st.words.empty()) {
          sa = Sim::of_eval(a, point);
          sb = Sim::of_eval(b, point);
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

  // env = ce of SD codes: halt when any enumerated set admits the argument
  sd_union_ = k.register_program(
      "union of an enumerable family of semi-decidable sets",
      [](const Kernel& kk, const Nat& in, State st) {
        auto [env, point] = unpair_nat(in);
        UnionStreamSpec spec;
        spec.seeds = UnionStreamSpec::Seeds::slots;
        spec.outer_src = env;
        spec.guard = [point = point](std::uint64_t,
                                     const Nat& code) -> std::optional<std::pair<Nat, Nat>> {
          return std::make_pair(code, point);
        };
        spec.emit_on_admission = true;
        return run_engine_until(kk, std::move(st), spec, 0);
      });

  const_ = k.register_program("constant function", [](const Kernel&, const Nat& in, State) {
    auto [env, arg] = unpair_nat(in);
    (void)arg;
    return StepResult::halt(env);
  });

  identity_ = k.register_program("identity function", [](const Kernel&, const Nat& in, State) {
    auto [env, arg] = unpair_nat(in);
    (void)env;
    return StepResult::halt(arg);
  });

  // env = encoded list; slot k halts with the k-th element, diverges past it
  finite_seq_ = k.register_program(
      "finite sequence", [](const Kernel&, const Nat& in, State st) -> StepResult {
        auto [env, slot] = unpair_nat(in);
        auto [len, body] = unpair_nat(env);
        if (slot >= len) return StepResult::run_on(std::move(st));
        Nat b = body;
        for (Nat i = 0; i < slot; ++i) b = unpair_nat(b).second;
        return StepResult::halt(unpair_nat(b).first);
      });

  // env = <a, b>: x -> b(a(x))
  compose_ = k.register_program(
      "composition of two function names", [](const Kernel& kk, const Nat& in, State st) {
        auto [env, x] = unpair_nat(in);
        auto [a, b] = unpair_nat(env);
        std::uint64_t phase = 0;
        Sim sim;
        if (st.words.empty()) {
          sim = Sim::of_eval(a, x);
        } else {
          std::size_t pos = 0;
          phase = to_u64(st.words.at(pos++));
          sim = Sim::parse(st.words, pos);
        }
        sim.tick(kk);
        if (sim.done) {
          if (phase == 0) {
            phase = 1;
            sim = Sim::of_eval(b, sim.output);
          } else {
            return StepResult::halt(sim.output);
          }
        }
        std::vector<Nat> w{Nat(phase)};
        sim.serialize(w);
        return StepResult::run_on(words_state(std::move(w)));
      });
}

Verdict NumberingsLib::sd_member(const SemiDecidableName& a, const Nat& point, Fuel fuel) const {
  RunResult r = eval_name(*kernel_, a.name, point, fuel);
  return r.halted() ? Verdict::yes : Verdict::not_yet;
}

SemiDecidableName NumberingsLib::sd_whole() const {
  return SemiDecidableName{closure(always_, Nat(0))};
}

SemiDecidableName NumberingsLib::sd_empty() const {
  return SemiDecidableName{closure(never_, Nat(0))};
}

SemiDecidableName NumberingsLib::sd_intersect(const SemiDecidableName& a,
                                              const SemiDecidableName& b) const {
  return SemiDecidableName{closure(sd_and_, pair_nat(a.name, b.name))};
}

SemiDecidableName NumberingsLib::sd_union_ce(const CeName& codes) const {
  return SemiDecidableName{closure(sd_union_, codes.name)};
}

UnionStreamSpec NumberingsLib::ce_spec(const CeName& c) const {
  UnionStreamSpec spec;
  spec.seeds = UnionStreamSpec::Seeds::slots;
  spec.outer_src = c.name;
  spec.emit_on_admission = true;
  return spec;
}

std::vector<Nat> NumberingsLib::ce_enumerate(const CeName& c, Fuel fuel,
                                             std::uint64_t max_values) const {
  DriveResult r = drive(*kernel_, ce_spec(c), fuel, max_values);
  std::vector<Nat> out;
  out.reserve(r.emissions.size());
  for (auto& e : r.emissions) out.push_back(std::move(e.value));
  return out;
}

CeName NumberingsLib::ce_of_finite(const std::vector<Nat>& values) const {
  return CeName{closure(finite_seq_, encode_list(values))};
}

std::optional<bool> NumberingsLib::decide(const DecidableName& d, const Nat& point,
                                          Fuel fuel) const {
  RunResult r = eval_name(*kernel_, d.name, point, fuel);
  if (!r.halted()) return std::nullopt;
  return r.output != 0;
}

RunResult NumberingsLib::apply_realizer(const Realizer& r, const Nat& point, Fuel fuel) const {
  return eval_name(*kernel_, r.name, point, fuel);
}

Realizer NumberingsLib::identity_realizer() const {
  return Realizer{closure(identity_, Nat(0))};
}

Realizer NumberingsLib::compose(const Realizer& f, const Realizer& g) const {
  return Realizer{closure(compose_, pair_nat(f.name, g.name))};
}

}  // namespace efftop
