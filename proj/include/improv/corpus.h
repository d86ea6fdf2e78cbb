// Synthetic input streams for tests, benchmarks and demos. A real piece can
// be substituted by writing it out in the event file format.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "improv/stream_io.h"

namespace improv::corpus {

/// Bounded random walk in pitch with random durations and velocities, one
/// note per tick starting at tick 0.
std::vector<TimedEvent> random_walk(std::size_t length, std::uint64_t seed);

/// A handful of short motifs repeated with occasional variation; rich in
/// repeated suffixes.
std::vector<TimedEvent> repeated_motifs(std::size_t length, std::uint64_t seed);

/// The six-note Happy Birthday opening as (pitch, dur_ms, vel) tuples:
/// G G A G C B.
std::vector<TimedEvent> happy_birthday();

}  // namespace improv::corpus
