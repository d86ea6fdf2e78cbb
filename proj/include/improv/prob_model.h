// Integer link weights with exact per-state totals, and the traversal
// distribution mixing a state's own links with those of its suffix target.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "improv/core_model.h"
#include "improv/factor_oracle.h"

namespace improv {

struct WeightEntry {
  Symbol symbol;
  std::uint64_t weight;
};

/// Invariant: for every state, the weights of its out-links sum to total().
class LinkWeights {
 public:
  /// Weight c for a state's first link, gamma afterwards. Throws
  /// std::logic_error if the link is already weighted.
  void register_link(State state, Symbol symbol, const Params& p);

  /// w <- max(1, floor(w * beta)). Throws std::out_of_range for an unknown link.
  void apply_decay(State state, Symbol symbol, const Params& p);

  /// Throws std::out_of_range for an unknown link.
  std::uint64_t weight(State state, Symbol symbol) const;
  /// Zero for states with no weighted links.
  std::uint64_t total(State state) const;
  /// Entries of a state ordered by symbol; empty for unknown states.
  std::span<const WeightEntry> entries(State state) const;

  std::size_t state_count() const { return totals_.size(); }

 private:
  WeightEntry* find(State state, Symbol symbol);
  const WeightEntry* find(State state, Symbol symbol) const;

  std::vector<std::vector<WeightEntry>> entries_;
  std::vector<std::uint64_t> totals_;
};

/// One continuation: take the factor link labelled `symbol` leaving `source`.
/// prob = branch_share * weight / branch_total.
struct Choice {
  State source;
  Symbol symbol;
  State target;
  double prob;
  std::uint64_t weight;
  std::uint64_t branch_total;
  double branch_share;
};

/// Ordered by source ascending, then symbol ascending. Empty when no link is
/// reachable from k or S(k).
using Distribution = std::vector<Choice>;

/// Throws std::out_of_range if k is not a state of o.
Distribution phi(const Oracle& o, const LinkWeights& lw, State k, double alpha);

/// Inverse-transform sampling with exactly one uniform draw. Throws
/// std::invalid_argument on an empty distribution.
const Choice& sample(std::span<const Choice> dist, Rng& rng);

}  // namespace improv
