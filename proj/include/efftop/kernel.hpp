#pragma once

// Fuel-bounded execution of registered step programs, Cantor pairing, and
// the dovetailing scheduler shared by every enumeration in the library.
//
// Names are natural numbers (arbitrary precision: nested pairings outgrow
// 64 bits quickly).  A "program" is a pure step transformer from
// (input, state token) to Halted(output) | Running(next token).  The
// registry is append-only; replaying run(i, n) with equal fuel is
// bit-identical.

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace efftop {

using Nat = boost::multiprecision::cpp_int;  // always >= 0 by convention
using Fuel = std::uint64_t;
using ProgramIndex = std::uint64_t;

// ---------------------------------------------------------------------------
// Cantor pairing.  pair(a,b) = (a+b)(a+b+1)/2 + b, bijective on N^2.
// <a,b,c> is right-associated: pair(a, pair(b, c)).

Nat pair_nat(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair_nat(const Nat& n);
Nat pair3(const Nat& a, const Nat& b, const Nat& c);
std::tuple<Nat, Nat, Nat> unpair3(const Nat& n);

inline Nat nat_of(std::uint64_t v) { return Nat(v); }
std::uint64_t to_u64(const Nat& n);  // clamps to uint64 max

// ---------------------------------------------------------------------------
// Program state tokens.
//
// The canonical token is a vector of naturals.  Programs that maintain big
// simulation structures may additionally keep a resident form; serialize()
// always reproduces the canonical words, so a token can cross process
// boundaries and be resumed bit-identically.

struct OpaqueState {
  virtual ~OpaqueState() = default;
  virtual void serialize(std::vector<Nat>& out) const = 0;
  virtual std::shared_ptr<OpaqueState> clone() const = 0;
};

struct State {
  std::vector<Nat> words;
  std::shared_ptr<OpaqueState> resident;  // optional cache of `words`

  bool empty() const { return words.empty() && !resident; }
  std::vector<Nat> serialized() const;
};

struct StepResult {
  enum class Tag { halted, running };
  Tag tag;
  Nat output;   // meaningful when halted
  State state;  // meaningful when running

  static StepResult halt(Nat out) {
    return StepResult{Tag::halted, std::move(out), {}};
  }
  static StepResult run_on(State st) {
    return StepResult{Tag::running, Nat(0), std::move(st)};
  }
};

class Kernel;

using StepFn = std::function<StepResult(const Kernel&, const Nat& input, State st)>;

// ---------------------------------------------------------------------------
// Registry + runner.

struct RunResult {
  enum class Status { halted, running, invalid_index };
  Status status = Status::running;
  Nat output;       // halted
  State state;      // running
  Fuel used = 0;    // steps actually executed

  bool halted() const { return status == Status::halted; }
};

class Kernel {
 public:
  // Appends a program; the registry never mutates or removes entries.
  ProgramIndex register_program(std::string doc, StepFn fn);

  std::size_t size() const;
  const std::string& doc(ProgramIndex i) const;

  // Runs program i on `input` from a fresh state for at most `fuel` steps.
  RunResult run(ProgramIndex i, const Nat& input, Fuel fuel) const;
  // Resumes from an existing token.
  RunResult resume(ProgramIndex i, const Nat& input, State st, Fuel fuel) const;

 private:
  struct Entry {
    std::string doc;
    StepFn fn;
  };
  // deque-like stability: we grow by node so concurrent lookup of already
  // registered entries stays valid while registration is serialized.
  std::vector<std::unique_ptr<Entry>> entries_;
  mutable std::mutex reg_mu_;
  std::atomic<std::size_t> count_{0};

  const Entry* entry(ProgramIndex i) const;
};

// ---------------------------------------------------------------------------
// Closure names.
//
// Every function-valued name in the library (sequence, Cauchy real, left
// real, semi-decidable set, realizer, radius function, ...) is the pair
// <i, e> of a registered template program i and an environment e; applying
// the name to x runs program i on <e, x>.  This is the Smn convention that
// lets running programs mint new names without touching the registry.

Nat closure(ProgramIndex i, const Nat& env);
std::pair<ProgramIndex, Nat> closure_parts(const Nat& name);

// One fuel-bounded application of a closure name.
RunResult eval_name(const Kernel& k, const Nat& name, const Nat& arg, Fuel fuel);

// ---------------------------------------------------------------------------
// Sim: a resumable inner run, used by composite programs to advance other
// programs one step at a time with the whole simulation recorded in the
// state token.

struct Sim {
  Nat prog;   // registry index (dead if out of range)
  Nat input;
  State st;
  bool done = false;
  bool dead = false;  // invalid index: never halts
  Nat output;
  std::uint64_t steps = 0;

  static Sim of_run(Nat prog, Nat input);
  static Sim of_eval(const Nat& name, const Nat& arg);  // closure application

  // Advances one step if still running; returns true if it halted just now.
  bool tick(const Kernel& k);

  void serialize(std::vector<Nat>& out) const;
  static Sim parse(const std::vector<Nat>& in, std::size_t& pos);
};

// ---------------------------------------------------------------------------
// The dovetailing engine.
//
// Cells are spawned and stepped under one frozen schedule:
//
//   stage s = 0, 1, 2, ...:
//     spawn the outer cell for slot s (when the seed source is a sequence),
//     then step every live cell once, in index order; cells appended during
//     the stage are stepped in the same pass when their index is reached.
//
// Seeds discovered by outer cells may be guarded (a run that must halt
// before the seed is admitted) and may open an inner slot stream whose
// slot p+1 is spawned when slot p halts.  All emissions carry the global
// elementary-step count at which they fired, so any two consumers of the
// same spec observe identical prefixes.

struct UnionStreamSpec {
  enum class Seeds { fixed, slots };
  Seeds seeds = Seeds::fixed;
  Nat outer_src;                // sequence name when seeds == slots
  std::vector<Nat> fixed_seeds; // when seeds == fixed

  // Optional guard: (name, arg) evaluated as eval(name, arg); the seed is
  // admitted when the run halts.  Absent guard admits immediately.
  std::function<std::optional<std::pair<Nat, Nat>>(std::uint64_t idx, const Nat& seed)> guard;

  // Optional inner stream: slot p of seed idx runs eval(stream_name, p).
  std::function<std::optional<Nat>(std::uint64_t idx, const Nat& seed)> inner;

  bool emit_on_admission = false;  // emit the seed value itself when admitted

  // Emission value for inner-slot halts (default: the slot output).
  std::function<Nat(std::uint64_t idx, const Nat& seed, std::uint64_t slot, const Nat& out)>
      transform;
};

struct Emission {
  std::uint64_t seed_idx = 0;
  bool from_inner = false;
  std::uint64_t slot = 0;
  Nat value;
  std::uint64_t at_step = 0;  // global elementary steps executed when fired
};

class UnionStreamCore {
 public:
  UnionStreamCore() = default;

  // Executes exactly one elementary program step (or reports starvation).
  // Emissions fired by that step are appended to `out`.
  // Returns false when the engine is exhausted (no cell can ever run again).
  bool tick(const Kernel& k, const UnionStreamSpec& spec, std::vector<Emission>& out);

  std::uint64_t steps_done() const { return steps_; }
  std::uint64_t emissions_fired() const { return emitted_; }

  void serialize(std::vector<Nat>& out) const;
  static UnionStreamCore parse(const std::vector<Nat>& in, std::size_t& pos);

 private:
  struct Cell {
    enum class Kind { outer, guard, inner };
    Kind kind = Kind::outer;
    std::uint64_t seed_idx = 0;
    std::uint64_t slot = 0;  // inner slot index
    Nat seed;                // guard/inner: the seed value
    Sim sim;
    bool retired = false;
  };

  std::vector<Cell> cells_;
  std::vector<std::pair<std::uint64_t, Nat>> pending_seed_;
  std::uint64_t stage_ = 0;
  std::uint64_t cursor_ = 0;       // next cell index to consider this stage
  std::uint64_t stage_limit_ = 0;  // cells below this index run this stage
  std::uint64_t next_outer_ = 0;   // next outer slot to spawn
  std::uint64_t seed_count_ = 0;   // seeds discovered so far
  std::uint64_t steps_ = 0;
  std::uint64_t emitted_ = 0;
  bool seeded_fixed_ = false;

  void maybe_spawn_for_stage(const UnionStreamSpec& spec);
  void on_seed(const UnionStreamSpec& spec, std::uint64_t idx, const Nat& seed,
               std::vector<Emission>& out);
  void on_halt(const UnionStreamSpec& spec, Cell& c, std::vector<Emission>& out);
  void admit_seed(const UnionStreamSpec& spec, std::uint64_t idx, const Nat& seed,
                  std::vector<Emission>& out);
};

// Wraps a UnionStreamCore as an OpaqueState so engine-backed programs can
// keep the resident form between steps.
struct EngineState final : OpaqueState {
  UnionStreamCore core;
  std::vector<Nat> extra;  // small program-specific scalars

  void serialize(std::vector<Nat>& out) const override;
  std::shared_ptr<OpaqueState> clone() const override;
  static std::shared_ptr<EngineState> from(const State& st);
};

// One program step of an engine-backed computation: restores the engine from
// `st`, ticks once, and halts with the value of emission number `target`
// (0-based) when it fires.  Diverges (keeps running) on shorter streams.
StepResult run_engine_until(const Kernel& k, State st, const UnionStreamSpec& spec,
                            std::uint64_t target);

// ---------------------------------------------------------------------------
// Drivers: run an engine directly (outside any program) with a fuel budget.
// Streams observed here are step-for-step identical with the in-program view
// of the same spec.

struct DriveResult {
  std::vector<Emission> emissions;
  Fuel used = 0;
  bool exhausted = false;
};

DriveResult drive(const Kernel& k, const UnionStreamSpec& spec, Fuel fuel,
                  std::uint64_t max_emissions = UINT64_MAX);

// Resumable driver handle.
class StreamDriver {
 public:
  StreamDriver(const Kernel& k, UnionStreamSpec spec) : kernel_(&k), spec_(std::move(spec)) {}
  // Advance until `n` more emissions fired or `fuel` exhausted.
  DriveResult pump(Fuel fuel, std::uint64_t n = UINT64_MAX);
  std::uint64_t steps_done() const { return core_.steps_done(); }

 private:
  const Kernel* kernel_;
  UnionStreamSpec spec_;
  UnionStreamCore core_;
  bool exhausted_ = false;
};

// ---------------------------------------------------------------------------
// Kernel-level dovetail over a finite family of enumerator tasks.
//
// A task is a sequence name; its sequential execution runs slot 0, then
// slot 1, ... with each emission being the halting output of its slot.
// The schedule is the literal triangular round-robin: stage t runs tasks
// 0..t from scratch for t steps each; emissions not seen at earlier stages
// are appended in (task, slot) order.  A value needing s of task j's own
// steps is therefore merged by stage max(j, s).

struct DovetailEmission {
  std::uint64_t task = 0;
  std::uint64_t slot = 0;
  Nat value;
  std::uint64_t at_stage = 0;  // stage at which the merge first saw it
};

std::vector<DovetailEmission> dovetail(const Kernel& k,
                                       const std::vector<Nat>& task_names,
                                       Fuel fuel,
                                       std::uint64_t max_emissions = UINT64_MAX);

}  // namespace efftop
