// The two-phase engine. Learning extends the oracle, its weights, contexts
// and the user's dynamics; simulation walks the oracle by sampling the
// traversal distribution, decays the chosen link, and emits a rescaled note.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "improv/core_model.h"
#include "improv/dynamics.h"
#include "improv/factor_oracle.h"
#include "improv/prob_model.h"

namespace improv {

struct SessionOptions {
  /// Step the simulation on ticks without user input. When false, only input
  /// ticks may emit.
  bool step_on_silence = true;

  bool operator==(const SessionOptions&) const = default;
};

struct SessionSnapshot {
  struct WeightedLink {
    State from;
    Symbol sym;
    State to;
    std::uint64_t w;
    bool operator==(const WeightedLink&) const = default;
  };

  Params params;
  std::uint64_t seed = 0;
  std::uint64_t tick = 0;
  std::uint64_t go = 0;
  bool started = false;
  std::optional<State> k;
  std::optional<double> user_avg;
  std::optional<double> comp_avg;
  std::size_t m = 0;
  std::vector<WeightedLink> links;  // ordered by (from, sym)
  std::vector<std::uint64_t> totals;
  std::vector<State> suffix;
  std::vector<std::uint32_t> lrs;

  bool operator==(const SessionSnapshot&) const = default;
};

class ImprovSession {
 public:
  /// Throws std::invalid_argument if params violate their invariants.
  ImprovSession(const Params& params, std::uint64_t seed, SessionOptions options = {});

  /// Adds one user note. Throws InvalidEvent and leaves the session unchanged
  /// if the event is invalid.
  void learn(const NoteEvent& e);

  /// One simulation step; nothing until n notes have been learned.
  std::optional<NoteEvent> step();

  /// One time-unit: learn the input (if any), then step. The step in the
  /// tick that learns the n-th note stays silent; improvisation begins on the
  /// following tick.
  std::optional<NoteEvent> tick(const std::optional<NoteEvent>& input);

  /// Updates the live-tunable parameters. Throws std::invalid_argument.
  void set_alpha(double alpha);
  void set_beta(Ratio beta);
  void set_tau(std::uint32_t tau);

  SessionSnapshot snapshot() const;

  const Params& params() const { return params_; }
  const SessionOptions& options() const { return options_; }
  const Oracle& oracle() const { return oracle_; }
  const LinkWeights& weights() const { return weights_; }
  const DynamicsWindow& user_dynamics() const { return user_dyn_; }
  const DynamicsWindow& computer_dynamics() const { return comp_dyn_; }
  std::optional<State> position() const;
  std::uint64_t go() const { return go_; }
  bool started() const { return started_; }
  std::uint64_t tick_index() const { return tick_index_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t emissions() const { return emissions_; }
  std::uint64_t decays() const { return decays_; }
  std::uint64_t fallback_resets() const { return fallback_resets_; }

 private:
  Params params_;
  SessionOptions options_;
  std::uint64_t seed_;
  Oracle oracle_;
  LinkWeights weights_;
  DynamicsWindow user_dyn_;
  DynamicsWindow comp_dyn_;
  Rng rng_;
  State k_ = 0;
  std::uint64_t go_ = 0;
  bool started_ = false;
  std::uint64_t tick_index_ = 0;
  std::uint64_t emissions_ = 0;
  std::uint64_t decays_ = 0;
  std::uint64_t fallback_resets_ = 0;
};

inline ImprovSession session_new(const Params& p, std::uint64_t seed) {
  return ImprovSession(p, seed);
}

}  // namespace improv
