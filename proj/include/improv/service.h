// Live improvisation service: WebSocket sessions plus a plain HTTP health
// check on the same port.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "improv/improviser.h"

namespace improv {

struct ServiceConfig {
  std::string address = "127.0.0.1";
  std::uint16_t port = 8765;  // 0 picks a free port
  Params defaults;
  SessionOptions options;
  std::uint64_t first_seed = 1;
  /// When set, every session also ticks silently at this period.
  std::optional<std::chrono::milliseconds> metronome;
  unsigned threads = 2;
};

class Service {
 public:
  /// Binds and listens. Throws std::runtime_error if the port is unavailable.
  explicit Service(ServiceConfig cfg);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  std::uint16_t port() const;

  /// Runs the I/O threads in the background; stop() joins them.
  void start();
  /// Runs on the calling thread (plus extra workers) until SIGINT/SIGTERM
  /// or stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace improv
