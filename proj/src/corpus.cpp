#include "improv/corpus.h"

#include <algorithm>
#include <array>

#include "improv/core_model.h"

namespace improv::corpus {

namespace {

int draw(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

constexpr std::array<int, 5> kDurations = {125, 250, 375, 500, 1000};

}  // namespace

std::vector<TimedEvent> random_walk(std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TimedEvent> out;
  out.reserve(length);
  int pitch = 60;
  for (std::size_t i = 0; i < length; ++i) {
    pitch = std::clamp(pitch + draw(rng, -4, 4), 36, 96);
    const int dur = kDurations[rng.next_u64() % kDurations.size()];
    out.push_back({i, NoteEvent{pitch, dur, draw(rng, 30, 120)}});
  }
  return out;
}

std::vector<TimedEvent> repeated_motifs(std::size_t length, std::uint64_t seed) {
  static constexpr std::array<std::array<int, 4>, 3> kMotifs = {{
      {60, 62, 64, 65},
      {67, 65, 64, 62},
      {60, 64, 67, 72},
  }};
  Rng rng(seed);
  std::vector<TimedEvent> out;
  out.reserve(length);
  while (out.size() < length) {
    const auto& motif = kMotifs[rng.next_u64() % kMotifs.size()];
    const int shift = (rng.uniform() < 0.2) ? draw(rng, -2, 2) : 0;
    for (int p : motif) {
      if (out.size() == length) break;
      const int dur = kDurations[rng.next_u64() % kDurations.size()];
      out.push_back({out.size(), NoteEvent{p + shift, dur, draw(rng, 50, 110)}});
    }
  }
  return out;
}

std::vector<TimedEvent> happy_birthday() {
  return {
      {0, {67, 375, 80}},  {1, {67, 125, 60}}, {2, {69, 500, 100}},
      {3, {67, 500, 90}},  {4, {72, 500, 100}}, {5, {71, 1000, 60}},
  };
}

}  // namespace improv::corpus
