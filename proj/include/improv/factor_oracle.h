// On-line Factor Oracle over pitch symbols, with suffix links and the
// repeated-suffix length (context) of every state.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "improv/core_model.h"

namespace improv {

using State = std::int32_t;
using Symbol = int;

struct Transition {
  Symbol symbol;
  State target;
};

/// Result of one insertion: the new state and the source state of every
/// factor link the insertion created, primary link first, then in walk order.
struct Insertion {
  State state;
  std::vector<State> link_sources;
};

class Oracle {
 public:
  Oracle();

  /// Appends e.pitch. Throws InvalidEvent (oracle unchanged) if e is invalid.
  Insertion add_symbol(const NoteEvent& e);

  std::size_t state_count() const { return suffix_.size(); }
  /// Number of learned symbols m; states are 0..m.
  State last_state() const { return static_cast<State>(suffix_.size()) - 1; }

  std::optional<State> transition(State from, Symbol sym) const;
  /// Out-links of a state, ordered by symbol.
  std::span<const Transition> out_links(State s) const { return links_.at(s); }

  State suffix(State s) const { return suffix_.at(s); }
  std::uint32_t lrs(State s) const { return lrs_.at(s); }
  /// Event learned at state s (1 <= s <= m).
  const NoteEvent& payload(State s) const { return payload_.at(s); }

  std::size_t link_count() const { return link_count_; }
  /// Suffix links followed during all insertions so far, including the
  /// repeated-suffix length computation.
  std::uint64_t walk_steps() const { return walk_steps_; }

  bool recognizes(std::span<const Symbol> word) const;

 private:
  void add_link(State from, Symbol sym, State to);
  std::uint32_t length_common_suffix(State pi1, State pi2);

  std::vector<std::vector<Transition>> links_;
  std::vector<State> suffix_;
  std::vector<std::uint32_t> lrs_;
  std::vector<NoteEvent> payload_;  // index 0 unused
  std::size_t link_count_ = 0;
  std::uint64_t walk_steps_ = 0;
};

inline Oracle oracle_new() { return Oracle(); }

/// Brute-force longest suffix of seq[1..i] (1-based) that also occurs as a
/// factor of seq[1..i-1]. Cubic; meant for checking. Throws std::out_of_range
/// unless 1 <= i <= seq.size().
std::size_t naive_lrs(std::span<const Symbol> seq, std::size_t i);

struct OracleSnapshot {
  struct Link {
    State from;
    Symbol sym;
    State to;
    bool operator==(const Link&) const = default;
  };

  std::size_t m = 0;
  std::vector<Link> links;  // ordered by (from, sym)
  std::vector<State> suffix;
  std::vector<std::uint32_t> lrs;

  bool operator==(const OracleSnapshot&) const = default;
};

OracleSnapshot inspect(const Oracle& o);

}  // namespace improv
