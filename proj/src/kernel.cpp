#include "efftop/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace efftop {

// ---------------------------------------------------------------------------
// Pairing.

Nat pair_nat(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair_nat(const Nat& n) {
  if (n < 0) throw std::invalid_argument("unpair of negative value");
  if (n <= Nat(std::uint64_t(1) << 62)) {
    // fast path: all arithmetic fits in 64 bits
    std::uint64_t v = n.convert_to<std::uint64_t>();
    std::uint64_t w = static_cast<std::uint64_t>(std::sqrt(8.0 * double(v) + 1.0) - 1.0) / 2;
    while (w * (w + 1) / 2 > v) --w;
    while ((w + 1) * (w + 2) / 2 <= v) ++w;
    std::uint64_t t = w * (w + 1) / 2;
    std::uint64_t b = v - t;
    return {Nat(w - b), Nat(b)};
  }
  Nat disc = 8 * n + 1;
  Nat w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  Nat t = w * (w + 1) / 2;
  Nat b = n - t;
  return {w - b, b};
}

Nat pair3(const Nat& a, const Nat& b, const Nat& c) { return pair_nat(a, pair_nat(b, c)); }

std::tuple<Nat, Nat, Nat> unpair3(const Nat& n) {
  auto [a, rest] = unpair_nat(n);
  auto [b, c] = unpair_nat(rest);
  return {a, b, c};
}

std::uint64_t to_u64(const Nat& n) {
  if (n < 0) return 0;
  if (n > Nat(UINT64_MAX)) return UINT64_MAX;
  return n.convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// State.

std::vector<Nat> State::serialized() const {
  if (resident) {
    std::vector<Nat> out;
    resident->serialize(out);
    return out;
  }
  return words;
}

// ---------------------------------------------------------------------------
// Kernel.

ProgramIndex Kernel::register_program(std::string doc, StepFn fn) {
  std::lock_guard<std::mutex> lock(reg_mu_);
  entries_.push_back(std::make_unique<Entry>(Entry{std::move(doc), std::move(fn)}));
  std::size_t idx = entries_.size() - 1;
  count_.store(entries_.size(), std::memory_order_release);
  return idx;
}

std::size_t Kernel::size() const { return count_.load(std::memory_order_acquire); }

const Kernel::Entry* Kernel::entry(ProgramIndex i) const {
  if (i >= size()) return nullptr;
  return entries_[i].get();
}

const std::string& Kernel::doc(ProgramIndex i) const {
  static const std::string unknown = "<unregistered>";
  const Entry* e = entry(i);
  return e ? e->doc : unknown;
}

RunResult Kernel::run(ProgramIndex i, const Nat& input, Fuel fuel) const {
  return resume(i, input, State{}, fuel);
}

RunResult Kernel::resume(ProgramIndex i, const Nat& input, State st, Fuel fuel) const {
  RunResult r;
  const Entry* e = entry(i);
  if (!e) {
    r.status = RunResult::Status::invalid_index;
    return r;
  }
  for (Fuel step = 0; step < fuel; ++step) {
    StepResult sr = e->fn(*this, input, std::move(st));
    ++r.used;
    if (sr.tag == StepResult::Tag::halted) {
      r.status = RunResult::Status::halted;
      r.output = std::move(sr.output);
      return r;
    }
    st = std::move(sr.state);
  }
  r.status = RunResult::Status::running;
  r.state = std::move(st);
  return r;
}

// ---------------------------------------------------------------------------
// Closure names.

Nat closure(ProgramIndex i, const Nat& env) { return pair_nat(Nat(i), env); }

std::pair<ProgramIndex, Nat> closure_parts(const Nat& name) {
  auto [p, env] = unpair_nat(name);
  return {to_u64(p), env};
}

RunResult eval_name(const Kernel& k, const Nat& name, const Nat& arg, Fuel fuel) {
  auto [prog, env] = closure_parts(name);
  return k.run(prog, pair_nat(env, arg), fuel);
}

// ---------------------------------------------------------------------------
// Sim.

Sim Sim::of_run(Nat prog, Nat input) {
  Sim s;
  s.prog = std::move(prog);
  s.input = std::move(input);
  return s;
}

Sim Sim::of_eval(const Nat& name, const Nat& arg) {
  auto [prog, env] = closure_parts(name);
  return of_run(Nat(prog), pair_nat(env, arg));
}

bool Sim::tick(const Kernel& k) {
  if (done || dead) return false;
  if (prog < 0 || prog >= Nat(k.size())) {
    dead = true;
    return false;
  }
  RunResult r = k.resume(to_u64(prog), input, std::move(st), 1);
  ++steps;
  if (r.halted()) {
    done = true;
    output = std::move(r.output);
    st = State{};
    return true;
  }
  st = std::move(r.state);
  return false;
}

void Sim::serialize(std::vector<Nat>& out) const {
  out.push_back(prog);
  out.push_back(input);
  out.push_back(Nat(done ? 1 : 0));
  out.push_back(Nat(dead ? 1 : 0));
  out.push_back(output);
  out.push_back(Nat(steps));
  std::vector<Nat> w = st.serialized();
  out.push_back(Nat(w.size()));
  for (auto& x : w) out.push_back(x);
}

Sim Sim::parse(const std::vector<Nat>& in, std::size_t& pos) {
  Sim s;
  s.prog = in.at(pos++);
  s.input = in.at(pos++);
  s.done = in.at(pos++) != 0;
  s.dead = in.at(pos++) != 0;
  s.output = in.at(pos++);
  s.steps = to_u64(in.at(pos++));
  std::size_t n = to_u64(in.at(pos++));
  s.st.words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.st.words.push_back(in.at(pos++));
  return s;
}

// ---------------------------------------------------------------------------
// UnionStreamCore.

void UnionStreamCore::maybe_spawn_for_stage(const UnionStreamSpec& spec) {
  if (spec.seeds == UnionStreamSpec::Seeds::fixed) {
    if (!seeded_fixed_) {
      seeded_fixed_ = true;
      // seeds of a fixed family are all discovered at stage 0, in order
      for (std::size_t i = 0; i < spec.fixed_seeds.size(); ++i) {
        std::uint64_t idx = seed_count_++;
        // emissions fired during seeding are collected by the caller's tick
        pending_seed_.push_back({idx, spec.fixed_seeds[i]});
      }
    }
    return;
  }
  // one fresh outer slot per stage
  Cell c;
  c.kind = Cell::Kind::outer;
  c.slot = next_outer_;
  c.sim = Sim::of_eval(spec.outer_src, Nat(next_outer_));
  ++next_outer_;
  cells_.push_back(std::move(c));
}

void UnionStreamCore::on_seed(const UnionStreamSpec& spec, std::uint64_t idx, const Nat& seed,
                              std::vector<Emission>& out) {
  if (spec.guard) {
    if (auto g = spec.guard(idx, seed)) {
      Cell gc;
      gc.kind = Cell::Kind::guard;
      gc.seed_idx = idx;
      gc.seed = seed;
      gc.sim = Sim::of_eval(g->first, g->second);
      cells_.push_back(std::move(gc));
      return;
    }
  }
  admit_seed(spec, idx, seed, out);
}

void UnionStreamCore::admit_seed(const UnionStreamSpec& spec, std::uint64_t idx, const Nat& seed,
                                 std::vector<Emission>& out) {
  if (spec.emit_on_admission) {
    Emission e;
    e.seed_idx = idx;
    e.from_inner = false;
    e.value = seed;
    e.at_step = steps_;
    out.push_back(std::move(e));
    ++emitted_;
  }
  if (spec.inner) {
    if (auto stream = spec.inner(idx, seed)) {
      Cell c;
      c.kind = Cell::Kind::inner;
      c.seed_idx = idx;
      c.slot = 0;
      c.seed = seed;
      c.sim = Sim::of_eval(*stream, Nat(0));
      cells_.push_back(std::move(c));
    }
  }
}

void UnionStreamCore::on_halt(const UnionStreamSpec& spec, Cell& c, std::vector<Emission>& out) {
  c.retired = true;
  switch (c.kind) {
    case Cell::Kind::outer: {
      std::uint64_t idx = seed_count_++;
      Nat seed = c.sim.output;
      on_seed(spec, idx, seed, out);
      return;
    }
    case Cell::Kind::guard:
      admit_seed(spec, c.seed_idx, c.seed, out);
      return;
    case Cell::Kind::inner: {
      Emission e;
      e.seed_idx = c.seed_idx;
      e.from_inner = true;
      e.slot = c.slot;
      e.value = spec.transform ? spec.transform(c.seed_idx, c.seed, c.slot, c.sim.output)
                               : c.sim.output;
      e.at_step = steps_;
      out.push_back(std::move(e));
      ++emitted_;
      // next slot of the same stream
      if (auto stream = spec.inner ? spec.inner(c.seed_idx, c.seed) : std::nullopt) {
        Cell nc;
        nc.kind = Cell::Kind::inner;
        nc.seed_idx = c.seed_idx;
        nc.slot = c.slot + 1;
        nc.seed = c.seed;
        nc.sim = Sim::of_eval(*stream, Nat(c.slot + 1));
        cells_.push_back(std::move(nc));
      }
      return;
    }
  }
}

bool UnionStreamCore::tick(const Kernel& k, const UnionStreamSpec& spec,
                           std::vector<Emission>& out) {
  for (;;) {
    if (cursor_ == 0) {
      maybe_spawn_for_stage(spec);
      for (auto& [idx, seed] : pending_seed_) on_seed(spec, idx, seed, out);
      pending_seed_.clear();
      stage_limit_ = cells_.size();  // cells appended mid-stage wait a stage
    }
    while (cursor_ < stage_limit_ && cursor_ < cells_.size()) {
      Cell& c = cells_[cursor_];
      ++cursor_;
      if (c.retired || c.sim.done || c.sim.dead) continue;
      bool halted = c.sim.tick(k);
      ++steps_;  // a dead-index probe also counts as the error-signal step
      if (c.sim.dead) {
        c.retired = true;
        return true;
      }
      if (halted) on_halt(spec, c, out);
      return true;
    }
    // window done: next stage, unless the engine can never act again
    bool any_live = false;
    for (auto& c : cells_)
      if (!c.retired && !c.sim.done && !c.sim.dead) {
        any_live = true;
        break;
      }
    bool more_seeds = spec.seeds == UnionStreamSpec::Seeds::slots || !seeded_fixed_;
    if (!any_live && !more_seeds) return !out.empty();
    ++stage_;
    cursor_ = 0;
  }
}

void UnionStreamCore::serialize(std::vector<Nat>& out) const {
  out.push_back(Nat(stage_));
  out.push_back(Nat(cursor_));
  out.push_back(Nat(stage_limit_));
  out.push_back(Nat(next_outer_));
  out.push_back(Nat(seed_count_));
  out.push_back(Nat(steps_));
  out.push_back(Nat(emitted_));
  out.push_back(Nat(seeded_fixed_ ? 1 : 0));
  out.push_back(Nat(pending_seed_.size()));
  for (auto& [idx, seed] : pending_seed_) {
    out.push_back(Nat(idx));
    out.push_back(seed);
  }
  out.push_back(Nat(cells_.size()));
  for (const Cell& c : cells_) {
    out.push_back(Nat(static_cast<std::uint64_t>(c.kind)));
    out.push_back(Nat(c.seed_idx));
    out.push_back(Nat(c.slot));
    out.push_back(c.seed);
    out.push_back(Nat(c.retired ? 1 : 0));
    c.sim.serialize(out);
  }
}

UnionStreamCore UnionStreamCore::parse(const std::vector<Nat>& in, std::size_t& pos) {
  UnionStreamCore u;
  u.stage_ = to_u64(in.at(pos++));
  u.cursor_ = to_u64(in.at(pos++));
  u.stage_limit_ = to_u64(in.at(pos++));
  u.next_outer_ = to_u64(in.at(pos++));
  u.seed_count_ = to_u64(in.at(pos++));
  u.steps_ = to_u64(in.at(pos++));
  u.emitted_ = to_u64(in.at(pos++));
  u.seeded_fixed_ = in.at(pos++) != 0;
  std::size_t np = to_u64(in.at(pos++));
  for (std::size_t i = 0; i < np; ++i) {
    std::uint64_t idx = to_u64(in.at(pos++));
    Nat seed = in.at(pos++);
    u.pending_seed_.push_back({idx, std::move(seed)});
  }
  std::size_t n = to_u64(in.at(pos++));
  for (std::size_t i = 0; i < n; ++i) {
    Cell c;
    c.kind = static_cast<Cell::Kind>(to_u64(in.at(pos++)));
    c.seed_idx = to_u64(in.at(pos++));
    c.slot = to_u64(in.at(pos++));
    c.seed = in.at(pos++);
    c.retired = in.at(pos++) != 0;
    c.sim = Sim::parse(in, pos);
    u.cells_.push_back(std::move(c));
  }
  return u;
}

// ---------------------------------------------------------------------------
// EngineState.

void EngineState::serialize(std::vector<Nat>& out) const {
  out.push_back(Nat(extra.size()));
  for (auto& x : extra) out.push_back(x);
  core.serialize(out);
}

std::shared_ptr<OpaqueState> EngineState::clone() const {
  return std::make_shared<EngineState>(*this);
}

std::shared_ptr<EngineState> EngineState::from(const State& st) {
  if (st.resident && dynamic_cast<EngineState*>(st.resident.get())) {
    if (st.resident.use_count() == 1)  // sole owner: mutate in place
      return std::static_pointer_cast<EngineState>(st.resident);
    return std::static_pointer_cast<EngineState>(st.resident->clone());
  }
  auto e = std::make_shared<EngineState>();
  if (!st.words.empty()) {
    std::size_t pos = 0;
    std::size_t nx = to_u64(st.words.at(pos++));
    for (std::size_t i = 0; i < nx; ++i) e->extra.push_back(st.words.at(pos++));
    e->core = UnionStreamCore::parse(st.words, pos);
  }
  return e;
}

StepResult run_engine_until(const Kernel& k, State st, const UnionStreamSpec& spec,
                            std::uint64_t target) {
  auto es = EngineState::from(st);
  std::vector<Emission> ems;
  es->core.tick(k, spec, ems);
  if (!ems.empty()) {
    std::uint64_t before = es->core.emissions_fired() - ems.size();
    for (std::size_t j = 0; j < ems.size(); ++j)
      if (before + j == target) return StepResult::halt(ems[j].value);
  }
  State ns;
  ns.resident = std::move(es);
  return StepResult::run_on(std::move(ns));
}

// ---------------------------------------------------------------------------
// Drivers.

DriveResult drive(const Kernel& k, const UnionStreamSpec& spec, Fuel fuel,
                  std::uint64_t max_emissions) {
  StreamDriver d(k, spec);
  return d.pump(fuel, max_emissions);
}

DriveResult StreamDriver::pump(Fuel fuel, std::uint64_t n) {
  DriveResult r;
  if (exhausted_) {
    r.exhausted = true;
    return r;
  }
  while (r.used < fuel && r.emissions.size() < n) {
    std::uint64_t before = core_.steps_done();
    bool more = core_.tick(*kernel_, spec_, r.emissions);
    r.used += core_.steps_done() - before;
    if (!more) {
      exhausted_ = true;
      r.exhausted = true;
      break;
    }
  }
  return r;
}

std::vector<DovetailEmission> dovetail(const Kernel& k, const std::vector<Nat>& task_names,
                                       Fuel fuel, std::uint64_t max_emissions) {
  std::vector<DovetailEmission> out;
  std::vector<std::uint64_t> seen(task_names.size(), 0);
  Fuel spent = 0;
  for (std::uint64_t t = 0; spent < fuel && out.size() < max_emissions; ++t) {
    for (std::uint64_t j = 0; j <= t && j < task_names.size(); ++j) {
      // run task j from scratch with budget t, slot after slot
      Fuel budget = std::min<Fuel>(t, fuel - spent);
      std::uint64_t slot = 0;
      std::uint64_t got = 0;
      while (budget > 0) {
        RunResult r = eval_name(k, task_names[j], Nat(slot), budget);
        spent += r.used;
        budget -= r.used;
        if (!r.halted()) break;
        if (got >= seen[j] && out.size() < max_emissions) {
          out.push_back(DovetailEmission{j, slot, r.output, t});
          ++seen[j];
        }
        ++got;
        ++slot;
      }
      if (spent >= fuel || out.size() >= max_emissions) break;
    }
  }
  return out;
}

}  // namespace efftop
