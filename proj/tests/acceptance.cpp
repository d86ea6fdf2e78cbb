// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Run from the build directory; the latency report is archived as
// bench_report.json next to it.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "improv/batch.h"
#include "improv/corpus.h"
#include "improv/dynamics.h"
#include "improv/factor_oracle.h"
#include "improv/improviser.h"
#include "improv/prob_model.h"
#include "improv/stream_io.h"
#include "oracle_helpers.h"

using namespace improv;
using improv::testing::build;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// Every sequence over {0,1,2} of length 1..8.
std::vector<std::vector<Symbol>> ternary_sequences() {
  std::vector<std::vector<Symbol>> out;
  for (std::size_t len = 1; len <= 8; ++len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<Symbol> seq(len);
      std::size_t c = code;
      for (auto& s : seq) {
        s = static_cast<Symbol>(c % 3);
        c /= 3;
      }
      out.push_back(std::move(seq));
    }
  }
  return out;
}

// All words spelled by paths from state 0.
void recognized_words(const Oracle& o, State at, std::vector<Symbol>& word,
                      const std::function<void(const std::vector<Symbol>&)>& visit) {
  for (const auto& t : o.out_links(at)) {
    word.push_back(t.symbol);
    visit(word);
    recognized_words(o, t.target, word, visit);
    word.pop_back();
  }
}

Outcome factor_completeness() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t sequences = 0, factors = 0, failures = 0;
  for (const auto& seq : ternary_sequences()) {
    const Oracle o = build(seq);
    for (const auto& f : improv::testing::all_factors(seq)) {
      ++factors;
      if (!o.recognizes(f)) ++failures;
    }
    ++sequences;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 60.0,
          std::to_string(sequences) + " sequences, " + std::to_string(factors) +
              " factors, " + std::to_string(failures) + " unrecognized, " + fmt(secs) + " s"};
}

Outcome over_recognition() {
  std::size_t witnesses = 0;
  std::string example;
  for (const auto& seq : ternary_sequences()) {
    const Oracle o = build(seq);
    std::vector<Symbol> word;
    recognized_words(o, 0, word, [&](const std::vector<Symbol>& w) {
      if (!improv::testing::is_factor(seq, w)) {
        if (witnesses++ == 0) {
          std::ostringstream os;
          for (Symbol s : seq) os << "abc"[s];
          os << " accepts ";
          for (Symbol s : w) os << "abc"[s];
          example = os.str();
        }
      }
    });
  }
  return {witnesses >= 1, std::to_string(witnesses) + " recognized non-factors, e.g. " + example};
}

Outcome link_bound_linearity() {
  std::mt19937_64 gen(1);
  const std::vector<int> alphabets{1, 2, 3, 4, 12, 128};
  std::size_t bad = 0;
  double worst_ratio = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int alphabet = alphabets[trial % alphabets.size()];
    std::vector<Symbol> seq(200);
    for (auto& s : seq) s = static_cast<Symbol>(gen() % alphabet);
    const Oracle o = build(seq);
    const std::size_t m = seq.size();
    std::size_t suffix_links = 0;
    for (State i = 1; i <= o.last_state(); ++i) suffix_links += o.suffix(i) >= 0;
    const double ratio = static_cast<double>(o.walk_steps()) / m;
    worst_ratio = std::max(worst_ratio, ratio);
    if (o.link_count() > 2 * m - 1 || suffix_links != m || o.walk_steps() > 4 * m) ++bad;
  }
  return {bad == 0, "1000 sequences of length 200, " + std::to_string(bad) +
                        " violations, max walk steps per symbol " + fmt(worst_ratio)};
}

Outcome lrs_consistency() {
  std::mt19937_64 gen(2);
  std::size_t checked = 0, inconsistent = 0, above_naive = 0, strictly_below = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int alphabet = 2 + trial % 4;
    std::vector<Symbol> seq(1 + gen() % 64);
    for (auto& s : seq) s = static_cast<Symbol>(gen() % alphabet);
    const Oracle o = build(seq);
    for (State i = 1; i <= o.last_state(); ++i) {
      ++checked;
      const std::size_t lrs = o.lrs(i);
      if (!improv::testing::same_suffix(seq, i, o.suffix(i), lrs)) ++inconsistent;
      const std::size_t naive = naive_lrs(seq, i);
      if (lrs > naive) ++above_naive;
      if (lrs < naive) ++strictly_below;
    }
  }
  return {inconsistent == 0 && above_naive == 0,
          std::to_string(checked) + " states, " + std::to_string(inconsistent) +
              " inconsistent, " + std::to_string(above_naive) + " above brute force, " +
              std::to_string(strictly_below) + " strictly below (reported only)"};
}

bool sums_exact(const ImprovSession& s) {
  for (State st = 0; st <= s.oracle().last_state(); ++st) {
    std::uint64_t sum = 0;
    for (const auto& e : s.weights().entries(st)) sum += e.weight;
    if (sum != s.weights().total(st)) return false;
  }
  return true;
}

Outcome weight_sum_invariant() {
  std::mt19937_64 gen(3);
  std::size_t operations = 0, violations = 0;
  for (int session = 0; session < 20; ++session) {
    Params p;
    p.n = 1 + gen() % 10;
    p.alpha = (gen() % 101) / 100.0;
    p.beta = Ratio{static_cast<std::uint32_t>(1 + gen() % 99), 100};
    p.gamma = 1 + gen() % 10'000;
    p.c = p.gamma * (1 + gen() % 200);
    ImprovSession s(p, gen());
    for (int op = 0; op < 500; ++op) {
      if (gen() % 2 == 0) {
        s.learn({static_cast<int>(48 + gen() % 12), 1 + static_cast<int>(gen() % 1000),
                 1 + static_cast<int>(gen() % 127)});
      } else {
        s.step();
      }
      ++operations;
      if (!sums_exact(s)) ++violations;
    }
  }
  return {violations == 0 && operations == 10'000,
          std::to_string(operations) + " learn/step operations, " + std::to_string(violations) +
              " states with inexact totals"};
}

Outcome phi_normalization() {
  std::mt19937_64 gen(4);
  std::size_t distributions = 0, off = 0, table_checks = 0, table_failures = 0;
  double worst = 0;

  for (int trial = 0; trial < 100; ++trial) {
    Params p;
    p.n = 1000;  // learning only; decays below are applied directly
    p.gamma = 1 + gen() % 1000;
    p.c = p.gamma + gen() % 1'000'000;
    p.beta = Ratio{static_cast<std::uint32_t>(1 + gen() % 9), 10};
    Oracle o;
    LinkWeights lw;
    std::vector<Symbol> seq(2 + gen() % 60);
    for (auto& sym : seq) {
      sym = static_cast<Symbol>(gen() % (2 + trial % 5));
      const Insertion ins = o.add_symbol({sym, 100, 64});
      for (State src : ins.link_sources) lw.register_link(src, sym, p);
    }
    // Randomize the integer arrays through decays.
    Rng rng(gen());
    for (int d = 0; d < 200; ++d) {
      const auto k = static_cast<State>(gen() % o.state_count());
      const Distribution dist = phi(o, lw, k, (gen() % 101) / 100.0);
      if (dist.empty()) continue;
      double total = 0;
      for (const auto& c : dist) total += c.prob;
      ++distributions;
      worst = std::max(worst, std::abs(total - 1.0));
      if (std::abs(total - 1.0) > 1e-9) ++off;
      const Choice& c = sample(dist, rng);
      lw.apply_decay(c.source, c.symbol, p);
    }

    // Last state: its distribution is exactly its suffix target's own links.
    const State last = o.last_state();
    const State back = o.suffix(last);
    const Distribution at_last = phi(o, lw, last, (gen() % 101) / 100.0);
    const auto own = lw.entries(back);
    bool same = at_last.size() == own.size();
    for (std::size_t i = 0; same && i < own.size(); ++i) {
      const Choice& c = at_last[i];
      same = c.source == back && c.symbol == own[i].symbol && c.weight == own[i].weight &&
             c.branch_total == lw.total(back) && c.branch_share == 1.0 &&
             c.prob == static_cast<double>(own[i].weight) / static_cast<double>(lw.total(back));
    }
    ++table_checks;
    if (!same) ++table_failures;
  }
  return {off == 0 && table_failures == 0,
          std::to_string(distributions) + " distributions, max |sum-1| " + fmt(worst, 3) + "; " +
              std::to_string(table_checks) + " last-state checks, " +
              std::to_string(table_failures) + " mismatches"};
}

Outcome decay_sequence() {
  Params p;  // c = 1e6, beta = 4/5
  Oracle o;
  LinkWeights lw;
  for (Symbol sym : {0, 1, 0, 2, 1}) {
    const Insertion ins = o.add_symbol({sym, 100, 64});
    for (State src : ins.link_sources) lw.register_link(src, sym, p);
  }
  const State k = 0;
  const Symbol target = 0;  // first link from state 0, weight c
  std::uint64_t expected = lw.weight(k, target);
  double previous_mass = 2.0;
  std::size_t weight_mismatches = 0, mass_increases = 0;
  for (int t = 1; t <= 20; ++t) {
    const Distribution d = phi(o, lw, k, p.alpha);
    double mass = 0;
    for (const auto& c : d) {
      if (c.source == k && c.symbol == target) mass = c.prob;
    }
    if (mass > previous_mass) ++mass_increases;
    previous_mass = mass;

    lw.apply_decay(k, target, p);
    expected = std::max<std::uint64_t>(1, expected * p.beta.num / p.beta.den);
    if (lw.weight(k, target) != expected) ++weight_mismatches;
  }
  return {weight_mismatches == 0 && mass_increases == 0,
          "w_20 = " + std::to_string(lw.weight(k, target)) + " (expected " +
              std::to_string(expected) + "), " + std::to_string(mass_increases) +
              " mass increases"};
}

Outcome dynamics_example() {
  DynamicsWindow w(4);
  std::vector<std::string> problems;
  auto expect = [&](int v, std::uint64_t sum, double avg, double tol) {
    const double got = w.push(v);
    if (w.sum() != sum) problems.push_back("sum after " + std::to_string(v));
    if (std::abs(got - avg) > tol) problems.push_back("avg after " + std::to_string(v));
  };
  w.push(28);
  expect(28, 56, 28.0, 0.0);
  expect(38, 94, 31.33, 0.01);
  expect(25, 119, 29.75, 0.0);
  expect(40, 131, 32.75, 0.0);
  expect(30, 133, 33.25, 0.0);
  // 29.75 exactly as a rational: 119/4 with four elements.
  return {problems.empty(),
          problems.empty() ? "56/2, 94/3, 119/4, 131/4, 133/4" : problems.front()};
}

Outcome rescale_example() {
  const std::vector<int> in{54, 65, 30, 58, 91};
  const std::vector<int> want{16, 19, 9, 17, 26};
  std::vector<int> got;
  std::string shown;
  for (int v : in) {
    got.push_back(rescale(v, 0.29));
    shown += std::to_string(got.back()) + " ";
  }
  return {got == want, "factor 0.29 -> " + shown};
}

Outcome determinism() {
  BatchConfig cfg;
  cfg.seed = 0xC0FFEE;
  const auto input = corpus::repeated_motifs(300, 5);
  write_stream_file("acceptance_run_1.txt", run_batch(cfg, input));
  write_stream_file("acceptance_run_2.txt", run_batch(cfg, input));
  auto slurp = [](const char* p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const std::string a = slurp("acceptance_run_1.txt");
  const std::string b = slurp("acceptance_run_2.txt");
  const auto lines = std::count(a.begin(), a.end(), '\n');
  return {!a.empty() && a == b,
          std::to_string(lines) + " emitted records, files " + (a == b ? "identical" : "differ")};
}

Outcome latency() {
  BatchConfig cfg;
  cfg.seed = 7;
  const auto input = corpus::random_walk(300, 7);
  const BenchReport r = bench(cfg, input);
  std::ofstream("bench_report.json") << to_json(r, true).dump(2) << '\n';
  return {r.ticks >= 300 && r.mean_ms < 30.0 && r.p95_ms < 1.0,
          std::to_string(r.ticks) + " ticks, mean " + fmt(r.mean_ms) + " ms, p50 " +
              fmt(r.p50_ms) + " ms, p95 " + fmt(r.p95_ms) + " ms, max " + fmt(r.max_ms) +
              " ms (bench_report.json)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"factor completeness (alphabet 3, length <= 8)", factor_completeness},
      {"over-recognition witness", over_recognition},
      {"link bound and linear construction", link_bound_linearity},
      {"lrs self-consistency and brute-force bound", lrs_consistency},
      {"weight-sum invariant under learn/step", weight_sum_invariant},
      {"phi normalization and last-state equivalence", phi_normalization},
      {"decay sequence and non-increasing mass", decay_sequence},
      {"dynamics worked example (tau = 4)", dynamics_example},
      {"rescale worked example (factor 0.29)", rescale_example},
      {"batch determinism (300 events)", determinism},
      {"tick latency (300 events)", latency},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << o.detail << '\n';
    failed += !o.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
