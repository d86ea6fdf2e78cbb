// Message protocol of the live service, independent of the transport. One
// ProtocolSession per client connection owns one ImprovSession.

#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "improv/improviser.h"

namespace improv {

inline constexpr int kProtocolVersion = 1;

/// Hands out per-session seeds for clients that do not supply one.
class SeedCounter {
 public:
  explicit SeedCounter(std::uint64_t first = 1) : next_(first) {}
  std::uint64_t take() { return next_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> next_;
};

class ProtocolSession {
 public:
  ProtocolSession(const Params& defaults, SessionOptions options, std::uint64_t seed);

  /// Greeting sent when the connection opens.
  nlohmann::json hello() const;

  /// Handles one inbound frame. Every frame yields exactly one response:
  ///   note_in          -> note_out, or ack (no emission this tick)
  ///   set_params       -> ack echoing alpha/beta/tau, or error
  ///   snapshot_request -> snapshot
  ///   hello            -> hello (optionally re-seeding a fresh session)
  ///   anything else    -> error
  nlohmann::json handle(std::string_view frame);

  /// A tick without user input (metronome); note_out if it emitted.
  std::optional<nlohmann::json> silent_tick();

  const ImprovSession& session() const { return session_; }

 private:
  nlohmann::json on_hello(const nlohmann::json& msg);
  nlohmann::json on_note_in(const nlohmann::json& msg);
  nlohmann::json on_set_params(const nlohmann::json& msg);
  nlohmann::json note_out(const NoteEvent& e) const;

  Params defaults_;
  SessionOptions options_;
  ImprovSession session_;
};

nlohmann::json error_message(std::string_view text);

}  // namespace improv
