#include "improv/improviser.h"

#include <iostream>
#include <stdexcept>

namespace improv {

namespace {

const Params& checked(const Params& p) {
  if (auto err = p.check()) throw std::invalid_argument("invalid params: " + *err);
  return p;
}

}  // namespace

ImprovSession::ImprovSession(const Params& params, std::uint64_t seed,
                             SessionOptions options)
    : params_(checked(params)),
      options_(options),
      seed_(seed),
      user_dyn_(params.tau),
      comp_dyn_(params.tau),
      rng_(seed) {}

void ImprovSession::learn(const NoteEvent& e) {
  if (auto v = validate_event(e)) throw InvalidEvent(std::move(*v));

  const Insertion ins = oracle_.add_symbol(e);
  for (State source : ins.link_sources) {
    weights_.register_link(source, e.pitch, params_);
  }
  user_dyn_.push(e.vel);
  ++go_;
  if (!started_ && go_ == params_.n) {
    started_ = true;
    k_ = static_cast<State>(params_.n);
  }
}

std::optional<NoteEvent> ImprovSession::step() {
  if (!started_) return std::nullopt;

  Distribution dist = phi(oracle_, weights_, k_, params_.alpha);
  if (dist.empty()) {
    ++fallback_resets_;
    std::clog << "improv: empty distribution at state " << k_ << ", resetting to "
              << params_.n << '\n';
    k_ = static_cast<State>(params_.n);
    dist = phi(oracle_, weights_, k_, params_.alpha);
    if (dist.empty()) return std::nullopt;
  }

  const Choice choice = sample(dist, rng_);
  weights_.apply_decay(choice.source, choice.symbol, params_);
  ++decays_;
  k_ = choice.target;

  NoteEvent out = oracle_.payload(choice.target);
  const Factor f = compute_factor(user_dyn_, comp_dyn_);
  out.vel = rescale(out.vel, f.value);
  comp_dyn_.push(out.vel);
  ++emissions_;
  return out;
}

std::optional<NoteEvent> ImprovSession::tick(const std::optional<NoteEvent>& input) {
  std::optional<NoteEvent> out;
  bool reached_gate = false;
  if (input) {
    const bool was_started = started_;
    learn(*input);
    reached_gate = !was_started && started_;
  }
  if (!reached_gate && (input || options_.step_on_silence)) out = step();
  ++tick_index_;
  return out;
}

void ImprovSession::set_alpha(double alpha) {
  Params next = params_;
  next.alpha = alpha;
  params_ = checked(next);
}

void ImprovSession::set_beta(Ratio beta) {
  Params next = params_;
  next.beta = beta;
  params_ = checked(next);
}

void ImprovSession::set_tau(std::uint32_t tau) {
  Params next = params_;
  next.tau = tau;
  checked(next);
  user_dyn_.resize(tau);
  comp_dyn_.resize(tau);
  params_ = next;
}

std::optional<State> ImprovSession::position() const {
  if (!started_) return std::nullopt;
  return k_;
}

SessionSnapshot ImprovSession::snapshot() const {
  SessionSnapshot snap;
  snap.params = params_;
  snap.seed = seed_;
  snap.tick = tick_index_;
  snap.go = go_;
  snap.started = started_;
  snap.k = position();
  snap.user_avg = user_dyn_.average();
  snap.comp_avg = comp_dyn_.average();

  const OracleSnapshot o = inspect(oracle_);
  snap.m = o.m;
  snap.links.reserve(o.links.size());
  for (const auto& l : o.links) {
    snap.links.push_back({l.from, l.sym, l.to, weights_.weight(l.from, l.sym)});
  }
  for (State s = 0; s <= oracle_.last_state(); ++s) snap.totals.push_back(weights_.total(s));
  snap.suffix = o.suffix;
  snap.lrs = o.lrs;
  return snap;
}

}  // namespace improv
