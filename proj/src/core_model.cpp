#include "improv/core_model.h"

#include <charconv>

namespace improv {

std::string_view field_name(EventField f) {
  switch (f) {
    case EventField::kPitch:
      return "pitch";
    case EventField::kDurMs:
      return "dur_ms";
    case EventField::kVel:
      return "vel";
  }
  return "?";
}

std::optional<Violation> validate_event(const NoteEvent& e) {
  if (e.pitch < 0 || e.pitch > 127) {
    return Violation{EventField::kPitch,
                     "pitch " + std::to_string(e.pitch) + " outside 0..127"};
  }
  if (e.dur_ms < 1) {
    return Violation{EventField::kDurMs,
                     "dur_ms " + std::to_string(e.dur_ms) + " must be >= 1"};
  }
  if (e.vel < 1 || e.vel > 127) {
    return Violation{EventField::kVel,
                     "vel " + std::to_string(e.vel) + " outside 1..127"};
  }
  return std::nullopt;
}

InvalidEvent::InvalidEvent(Violation v)
    : std::invalid_argument("invalid event: " + v.message),
      violation_(std::move(v)) {}

std::string Ratio::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

Ratio Ratio::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("ratio must be NUM/DEN: " + std::string(text));
  }
  auto parse_part = [&](std::string_view part) {
    std::uint32_t v = 0;
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (part.empty() || ec != std::errc() || ptr != end) {
      throw std::invalid_argument("bad ratio component: " + std::string(text));
    }
    return v;
  };
  Ratio r{parse_part(text.substr(0, slash)), parse_part(text.substr(slash + 1))};
  if (r.den == 0) throw std::invalid_argument("ratio denominator is zero");
  return r;
}

std::optional<std::string> Params::check() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) return "alpha must lie in [0,1]";
  if (beta.den == 0 || beta.num == 0 || beta.num >= beta.den) {
    return "beta must lie strictly between 0 and 1";
  }
  if (gamma < 1) return "gamma must be >= 1";
  if (c < gamma) return "c must be >= gamma";
  if (tau < 1) return "tau must be >= 1";
  if (n < 1) return "n must be >= 1";
  return std::nullopt;
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace improv
