#include "improv/stream_io.h"

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

namespace improv {

namespace {

constexpr std::array<const char*, 4> kFields = {"t", "pitch", "dur_ms", "vel"};

bool is_blank(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, const char* field) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw StreamParseError(line_no, field,
                           "not a base-10 integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

StreamParseError::StreamParseError(std::size_t line, std::string field,
                                   const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + field + ": " + what),
      line_(line),
      field_(std::move(field)) {}

std::vector<TimedEvent> parse_stream(std::string_view text) {
  std::vector<TimedEvent> events;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    ++line_no;

    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != kFields.size()) {
      throw StreamParseError(line_no, "record",
                             "expected 4 fields, found " + std::to_string(fields.size()));
    }

    TimedEvent te;
    te.t = parse_number<std::uint64_t>(fields[0], line_no, kFields[0]);
    te.event.pitch = parse_number<int>(fields[1], line_no, kFields[1]);
    te.event.dur_ms = parse_number<int>(fields[2], line_no, kFields[2]);
    te.event.vel = parse_number<int>(fields[3], line_no, kFields[3]);
    if (auto v = validate_event(te.event)) {
      throw StreamParseError(line_no, std::string(field_name(v->field)), v->message);
    }
    if (!events.empty()) {
      if (te.t == events.back().t) {
        throw StreamParseError(line_no, "t", "duplicate tick " + std::to_string(te.t));
      }
      if (te.t < events.back().t) {
        throw StreamParseError(line_no, "t", "unsorted tick " + std::to_string(te.t));
      }
    }
    events.push_back(te);
  }
  return events;
}

std::vector<TimedEvent> parse_stream(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_stream(std::string_view(text));
}

void write_stream(std::ostream& out, std::span<const TimedEvent> events) {
  for (const auto& te : events) {
    out << te.t << ' ' << te.event.pitch << ' ' << te.event.dur_ms << ' ' << te.event.vel
        << '\n';
  }
}

std::string write_stream(std::span<const TimedEvent> events) {
  std::ostringstream out;
  write_stream(out, events);
  return out.str();
}

std::vector<TimedEvent> read_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_stream(in);
}

void write_stream_file(const std::string& path, std::span<const TimedEvent> events) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_stream(out, events);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace improv
