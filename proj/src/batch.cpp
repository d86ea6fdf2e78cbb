#include "improv/batch.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace improv {

namespace {

std::uint64_t last_tick(const BatchConfig& cfg, std::span<const TimedEvent> input) {
  if (cfg.max_tick) return *cfg.max_tick;
  return input.empty() ? 0 : input.back().t;
}

template <typename Body>
void drive(const BatchConfig& cfg, std::span<const TimedEvent> input, Body&& body) {
  if (input.empty() && !cfg.max_tick) return;
  const std::uint64_t end = last_tick(cfg, input);
  std::size_t next = 0;
  for (std::uint64_t t = 0; t <= end; ++t) {
    std::optional<NoteEvent> in;
    if (next < input.size() && input[next].t == t) in = input[next++].event;
    body(t, in);
  }
}

// Nearest-rank percentile of sorted samples.
double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * sorted.size()));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

ImprovSession replay(
    const BatchConfig& cfg, std::span<const TimedEvent> input,
    const std::function<void(std::uint64_t, const std::optional<NoteEvent>&)>& on_tick) {
  ImprovSession session(cfg.params, cfg.seed, cfg.options);
  drive(cfg, input, [&](std::uint64_t t, const std::optional<NoteEvent>& in) {
    auto out = session.tick(in);
    if (on_tick) on_tick(t, out);
  });
  return session;
}

std::vector<TimedEvent> run_batch(const BatchConfig& cfg, std::span<const TimedEvent> input) {
  std::vector<TimedEvent> output;
  replay(cfg, input, [&](std::uint64_t t, const std::optional<NoteEvent>& out) {
    if (out) output.push_back({t, *out});
  });
  return output;
}

BenchReport bench(const BatchConfig& cfg, std::span<const TimedEvent> input) {
  using Clock = std::chrono::steady_clock;
  BenchReport report;
  ImprovSession session(cfg.params, cfg.seed, cfg.options);
  drive(cfg, input, [&](std::uint64_t, const std::optional<NoteEvent>& in) {
    const auto start = Clock::now();
    auto out = session.tick(in);
    const auto stop = Clock::now();
    report.samples_ms.push_back(
        std::chrono::duration<double, std::milli>(stop - start).count());
    if (in) ++report.learns;
    if (out) ++report.emissions;
  });

  report.ticks = report.samples_ms.size();
  if (report.ticks == 0) return report;
  std::vector<double> sorted = report.samples_ms;
  std::sort(sorted.begin(), sorted.end());
  report.mean_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  report.p50_ms = percentile(sorted, 0.50);
  report.p95_ms = percentile(sorted, 0.95);
  report.max_ms = sorted.back();
  return report;
}

nlohmann::json to_json(const BenchReport& r, bool include_samples) {
  nlohmann::json j{{"ticks", r.ticks},     {"learns", r.learns}, {"emissions", r.emissions},
                   {"mean_ms", r.mean_ms}, {"p50_ms", r.p50_ms}, {"p95_ms", r.p95_ms},
                   {"max_ms", r.max_ms}};
  if (include_samples) j["samples_ms"] = r.samples_ms;
  return j;
}

}  // namespace improv
