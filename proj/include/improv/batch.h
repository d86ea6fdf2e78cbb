// Offline drivers: replay an event file through a session, and time it.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "improv/improviser.h"
#include "improv/stream_io.h"

namespace improv {

struct BatchConfig {
  Params params;
  std::uint64_t seed = 0;
  SessionOptions options;
  /// Last tick to run (inclusive). Defaults to the last input tick.
  std::optional<std::uint64_t> max_tick;
};

/// Calls tick() for t = 0..max_tick, feeding each input at its own tick.
/// Inputs after max_tick are not fed. `on_tick`, when set, runs after every
/// tick with the tick index and the tick's output.
ImprovSession replay(const BatchConfig& cfg, std::span<const TimedEvent> input,
                     const std::function<void(std::uint64_t, const std::optional<NoteEvent>&)>&
                         on_tick = {});

/// Emissions stamped with the tick that produced them.
std::vector<TimedEvent> run_batch(const BatchConfig& cfg, std::span<const TimedEvent> input);

struct BenchReport {
  std::uint64_t ticks = 0;
  std::uint64_t learns = 0;
  std::uint64_t emissions = 0;
  double mean_ms = 0;
  double p50_ms = 0;
  double p95_ms = 0;
  double max_ms = 0;
  std::vector<double> samples_ms;
};

/// Wall time of each tick() call only; no I/O inside the timed region.
BenchReport bench(const BatchConfig& cfg, std::span<const TimedEvent> input);

/// Summary without the raw samples unless asked.
nlohmann::json to_json(const BenchReport& r, bool include_samples = false);

}  // namespace improv
