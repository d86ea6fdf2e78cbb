#include "improv/factor_oracle.h"

#include <algorithm>
#include <stdexcept>

namespace improv {

namespace {

auto symbol_less = [](const Transition& t, Symbol s) { return t.symbol < s; };

}  // namespace

Oracle::Oracle() : links_(1), suffix_{-1}, lrs_{0}, payload_(1) {}

std::optional<State> Oracle::transition(State from, Symbol sym) const {
  const auto& out = links_.at(from);
  auto it = std::lower_bound(out.begin(), out.end(), sym, symbol_less);
  if (it == out.end() || it->symbol != sym) return std::nullopt;
  return it->target;
}

void Oracle::add_link(State from, Symbol sym, State to) {
  auto& out = links_[from];
  auto it = std::lower_bound(out.begin(), out.end(), sym, symbol_less);
  out.insert(it, Transition{sym, to});
  ++link_count_;
}

Insertion Oracle::add_symbol(const NoteEvent& e) {
  if (auto v = validate_event(e)) throw InvalidEvent(std::move(*v));

  const Symbol sym = e.pitch;
  const State i = last_state();
  const State fresh = i + 1;

  links_.emplace_back();
  payload_.push_back(e);

  Insertion ins{fresh, {i}};
  add_link(i, sym, fresh);

  // pi1 tracks the last state that received a new link.
  State pi1 = i;
  State j = suffix_[i];
  ++walk_steps_;
  while (j > -1 && !transition(j, sym)) {
    add_link(j, sym, fresh);
    ins.link_sources.push_back(j);
    pi1 = j;
    j = suffix_[j];
    ++walk_steps_;
  }
  const State s = (j == -1) ? 0 : *transition(j, sym);
  suffix_.push_back(s);

  std::uint32_t repeated = 0;
  if (s != 0) repeated = length_common_suffix(pi1, s - 1) + 1;
  lrs_.push_back(repeated);
  return ins;
}

// Common suffix length of the prefixes ending at pi1 and pi2, where pi2 sits
// on the suffix chain that meets S(pi1).
std::uint32_t Oracle::length_common_suffix(State pi1, State pi2) {
  if (pi2 == suffix_[pi1]) return lrs_[pi1];
  while (pi2 > 0 && suffix_[pi2] != suffix_[pi1]) {
    pi2 = suffix_[pi2];
    ++walk_steps_;
  }
  return std::min(lrs_[pi1], lrs_[pi2]);
}

bool Oracle::recognizes(std::span<const Symbol> word) const {
  State cur = 0;
  for (Symbol sym : word) {
    auto next = transition(cur, sym);
    if (!next) return false;
    cur = *next;
  }
  return true;
}

std::size_t naive_lrs(std::span<const Symbol> seq, std::size_t i) {
  if (i < 1 || i > seq.size()) throw std::out_of_range("naive_lrs: position");
  const auto prefix = seq.first(i - 1);
  std::size_t best = 0;
  for (std::size_t len = 1; len < i; ++len) {
    const auto suffix = seq.subspan(i - len, len);
    for (std::size_t at = 0; at + len <= prefix.size(); ++at) {
      if (std::equal(suffix.begin(), suffix.end(), prefix.begin() + at)) {
        best = len;
        break;
      }
    }
  }
  return best;
}

OracleSnapshot inspect(const Oracle& o) {
  OracleSnapshot snap;
  snap.m = static_cast<std::size_t>(o.last_state());
  snap.links.reserve(o.link_count());
  for (State s = 0; s <= o.last_state(); ++s) {
    for (const auto& t : o.out_links(s)) snap.links.push_back({s, t.symbol, t.target});
    snap.suffix.push_back(o.suffix(s));
    snap.lrs.push_back(o.lrs(s));
  }
  return snap;
}

}  // namespace improv
