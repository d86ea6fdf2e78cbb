// Line-oriented event files: one "t pitch dur_ms vel" record per line,
// '#' comment lines, '\n' line ends. Output streams use the same format.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "improv/core_model.h"

namespace improv {

struct TimedEvent {
  std::uint64_t t = 0;
  NoteEvent event;

  bool operator==(const TimedEvent&) const = default;
};

class StreamParseError : public std::runtime_error {
 public:
  StreamParseError(std::size_t line, std::string field, const std::string& what);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// Fields may be separated by any run of spaces or tabs; blank lines and
/// lines whose first non-blank character is '#' are skipped. Ticks must be
/// strictly increasing (at most one input per tick). Throws StreamParseError
/// at the first violation.
std::vector<TimedEvent> parse_stream(std::string_view text);
std::vector<TimedEvent> parse_stream(std::istream& in);

/// Canonical form: single spaces, no comments, one '\n' per record.
std::string write_stream(std::span<const TimedEvent> events);
void write_stream(std::ostream& out, std::span<const TimedEvent> events);

std::vector<TimedEvent> read_stream_file(const std::string& path);
void write_stream_file(const std::string& path, std::span<const TimedEvent> events);

}  // namespace improv
