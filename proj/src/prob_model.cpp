#include "improv/prob_model.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace improv {

namespace {

auto entry_less = [](const WeightEntry& e, Symbol s) { return e.symbol < s; };

std::string link_name(State state, Symbol symbol) {
  return "(" + std::to_string(state) + ", " + std::to_string(symbol) + ")";
}

}  // namespace

WeightEntry* LinkWeights::find(State state, Symbol symbol) {
  return const_cast<WeightEntry*>(std::as_const(*this).find(state, symbol));
}

const WeightEntry* LinkWeights::find(State state, Symbol symbol) const {
  if (state < 0 || static_cast<std::size_t>(state) >= entries_.size()) return nullptr;
  const auto& row = entries_[state];
  auto it = std::lower_bound(row.begin(), row.end(), symbol, entry_less);
  if (it == row.end() || it->symbol != symbol) return nullptr;
  return &*it;
}

void LinkWeights::register_link(State state, Symbol symbol, const Params& p) {
  if (state < 0) throw std::out_of_range("register_link: negative state");
  if (static_cast<std::size_t>(state) >= entries_.size()) {
    entries_.resize(state + 1);
    totals_.resize(state + 1, 0);
  }
  auto& row = entries_[state];
  auto it = std::lower_bound(row.begin(), row.end(), symbol, entry_less);
  if (it != row.end() && it->symbol == symbol) {
    throw std::logic_error("register_link: duplicate link " + link_name(state, symbol));
  }
  const std::uint64_t w = row.empty() ? p.c : p.gamma;
  row.insert(it, WeightEntry{symbol, w});
  totals_[state] += w;
}

void LinkWeights::apply_decay(State state, Symbol symbol, const Params& p) {
  WeightEntry* e = find(state, symbol);
  if (!e) throw std::out_of_range("apply_decay: unknown link " + link_name(state, symbol));
  // floor(w * num / den) without overflow: both remainder terms are < 2^32.
  const std::uint64_t w = e->weight;
  const std::uint64_t scaled = (w / p.beta.den) * p.beta.num +
                               (w % p.beta.den) * p.beta.num / p.beta.den;
  const std::uint64_t next = std::max<std::uint64_t>(1, scaled);
  totals_[state] -= e->weight - next;
  e->weight = next;
}

std::uint64_t LinkWeights::weight(State state, Symbol symbol) const {
  const WeightEntry* e = find(state, symbol);
  if (!e) throw std::out_of_range("weight: unknown link " + link_name(state, symbol));
  return e->weight;
}

std::uint64_t LinkWeights::total(State state) const {
  if (state < 0 || static_cast<std::size_t>(state) >= totals_.size()) return 0;
  return totals_[state];
}

std::span<const WeightEntry> LinkWeights::entries(State state) const {
  if (state < 0 || static_cast<std::size_t>(state) >= entries_.size()) return {};
  return entries_[state];
}

Distribution phi(const Oracle& o, const LinkWeights& lw, State k, double alpha) {
  if (k < 0 || static_cast<std::size_t>(k) >= o.state_count()) {
    throw std::out_of_range("phi: state " + std::to_string(k) + " not in oracle");
  }
  const State back = o.suffix(k);
  const bool own = !o.out_links(k).empty() && lw.total(k) > 0;
  const bool via_suffix =
      back >= 0 && !o.out_links(back).empty() && lw.total(back) > 0;

  const double own_mix = own ? 1.0 : 0.0;
  // Without own links the suffix branch is the whole distribution, whatever
  // alpha is.
  double suffix_mix = 0.0;
  if (via_suffix) suffix_mix = own ? alpha * (o.lrs(k) + 1.0) : 1.0;
  const double mix_total = own_mix + suffix_mix;

  Distribution dist;
  if (mix_total <= 0.0) return dist;

  auto append_branch = [&](State source, double mix) {
    // A branch holding all of the mass gets share exactly 1.
    const double share = (mix == mix_total) ? 1.0 : mix / mix_total;
    const std::uint64_t total = lw.total(source);
    for (const auto& t : o.out_links(source)) {
      const std::uint64_t w = lw.weight(source, t.symbol);
      const double within = static_cast<double>(w) / static_cast<double>(total);
      dist.push_back(Choice{source, t.symbol, t.target, share * within, w, total, share});
    }
  };
  // S(k) < k, so the suffix branch comes first in canonical order.
  if (suffix_mix > 0.0) append_branch(back, suffix_mix);
  if (own) append_branch(k, own_mix);
  return dist;
}

const Choice& sample(std::span<const Choice> dist, Rng& rng) {
  if (dist.empty()) throw std::invalid_argument("sample: empty distribution");
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (const auto& c : dist) {
    cumulative += c.prob;
    if (u < cumulative) return c;
  }
  // Rounding left the cumulative sum a hair below u; take the last mass.
  for (auto it = dist.rbegin(); it != dist.rend(); ++it) {
    if (it->prob > 0.0) return *it;
  }
  return dist.back();
}

}  // namespace improv
