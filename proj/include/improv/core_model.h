// Shared domain types: note events, engine parameters, and the seeded
// generator used wherever the engine makes a random choice.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace improv {

/// One sounding note. Pitch doubles as the oracle alphabet symbol.
struct NoteEvent {
  int pitch = 60;
  int dur_ms = 500;
  int vel = 100;

  bool operator==(const NoteEvent&) const = default;
};

enum class EventField { kPitch, kDurMs, kVel };

std::string_view field_name(EventField f);

struct Violation {
  EventField field;
  std::string message;
};

/// Empty when every NoteEvent invariant holds, otherwise the first offending
/// field (checked in pitch, dur_ms, vel order).
std::optional<Violation> validate_event(const NoteEvent& e);

class InvalidEvent : public std::invalid_argument {
 public:
  explicit InvalidEvent(Violation v);
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Exact fraction used for the decay factor so weight updates stay integral.
struct Ratio {
  std::uint32_t num = 4;
  std::uint32_t den = 5;

  double value() const { return static_cast<double>(num) / den; }
  std::string str() const;
  bool operator==(const Ratio&) const = default;

  /// Parses "NUM/DEN" (base 10, no spaces). Throws std::invalid_argument.
  static Ratio parse(std::string_view text);
};

struct Params {
  double alpha = 0.5;        // recombination factor
  Ratio beta{4, 5};          // decay applied to a chosen link
  std::uint64_t gamma = 10'000;   // weight of a non-first link from a state
  std::uint64_t c = 1'000'000;    // weight of the first link from a state
  std::uint32_t tau = 16;    // dynamics window length
  std::uint32_t n = 10;      // notes learned before improvising

  bool operator==(const Params&) const = default;

  /// Description of the first violated invariant, if any.
  std::optional<std::string> check() const;
};

/// splitmix64. Value type; copies continue independently.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) from the top 53 bits of the next output.
  double uniform();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

inline Rng rng_new(std::uint64_t seed) { return Rng(seed); }

}  // namespace improv
