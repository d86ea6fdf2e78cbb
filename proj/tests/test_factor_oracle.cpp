#include "doctest.h"

#include <random>
#include <vector>

#include "improv/factor_oracle.h"
#include "oracle_helpers.h"

using namespace improv;
using improv::testing::build;

namespace {
constexpr Symbol a = 0;
constexpr Symbol b = 1;
}  // namespace

TEST_CASE("oracle_new: single state, no links") {
  const Oracle o = oracle_new();
  CHECK(o.last_state() == 0);
  CHECK(o.state_count() == 1);
  CHECK(o.suffix(0) == -1);
  CHECK(o.lrs(0) == 0);
  CHECK(o.link_count() == 0);
  CHECK(o.recognizes(std::vector<Symbol>{}));
}

TEST_CASE("add_symbol: 'ab' hand trace") {
  const Oracle o = build({a, b});
  CHECK(o.transition(0, a) == 1);
  CHECK(o.transition(1, b) == 2);
  CHECK(o.transition(0, b) == 2);
  CHECK(o.suffix(1) == 0);
  CHECK(o.suffix(2) == 0);
  CHECK(o.link_count() == 3);
}

TEST_CASE("add_symbol: 'aa' hand trace") {
  const Oracle o = build({a, a});
  CHECK(o.suffix(2) == 1);
  CHECK(o.lrs(2) == 1);
  CHECK(o.link_count() == 2);
}

TEST_CASE("add_symbol: 'aab' hand trace") {
  const Oracle o = build({a, a, b});
  CHECK(o.transition(2, b) == 3);
  CHECK(o.transition(1, b) == 3);
  CHECK(o.transition(0, b) == 3);
  CHECK(o.suffix(3) == 0);
  CHECK(o.lrs(3) == 0);
}

TEST_CASE("add_symbol: reports created link sources in order") {
  Oracle o = build({a, a});
  const Insertion ins = o.add_symbol({b, 10, 10});
  CHECK(ins.state == 3);
  CHECK(ins.link_sources == std::vector<State>{2, 1, 0});
}

TEST_CASE("add_symbol: invalid event leaves the oracle unchanged") {
  Oracle o = build({a, b});
  const auto before = inspect(o);
  CHECK_THROWS_AS(o.add_symbol({200, 10, 10}), InvalidEvent);
  CHECK_THROWS_AS(o.add_symbol({60, 0, 10}), InvalidEvent);
  CHECK(inspect(o) == before);
}

TEST_CASE("add_symbol: payload lives on the new state") {
  Oracle o;
  o.add_symbol({67, 375, 80});
  o.add_symbol({67, 125, 60});
  CHECK(o.payload(1) == NoteEvent{67, 375, 80});
  CHECK(o.payload(2) == NoteEvent{67, 125, 60});
}

TEST_CASE("recognizes") {
  const Oracle abbab = build({a, b, b, a, b});
  CHECK(abbab.recognizes(std::vector<Symbol>{b, a}));
  CHECK(abbab.recognizes(std::vector<Symbol>{}));
  const Oracle ab = build({a, b});
  CHECK_FALSE(ab.recognizes(std::vector<Symbol>{b, a}));
  CHECK(ab.recognizes(std::vector<Symbol>{a, b}));
}

TEST_CASE("naive_lrs") {
  const std::vector<Symbol> aa{a, a}, ab{a, b}, one{a};
  CHECK(naive_lrs(aa, 2) == 1);
  CHECK(naive_lrs(ab, 2) == 0);
  CHECK(naive_lrs(one, 1) == 0);
  CHECK_THROWS_AS(naive_lrs(one, 0), std::out_of_range);
  CHECK_THROWS_AS(naive_lrs(one, 2), std::out_of_range);
  const std::vector<Symbol> abcab{0, 1, 2, 0, 1};
  CHECK(naive_lrs(abcab, 5) == 2);
}

TEST_CASE("inspect") {
  const auto fresh = inspect(Oracle{});
  CHECK(fresh.m == 0);
  CHECK(fresh.links.empty());
  CHECK(fresh.suffix == std::vector<State>{-1});
  CHECK(fresh.lrs == std::vector<std::uint32_t>{0});

  const auto ab = inspect(build({a, b}));
  CHECK(ab.m == 2);
  const std::vector<OracleSnapshot::Link> expected{{0, a, 1}, {0, b, 2}, {1, b, 2}};
  CHECK(ab.links == expected);
  CHECK(ab.suffix == std::vector<State>{-1, 0, 0});
}

TEST_CASE("properties on random sequences") {
  std::mt19937_64 gen(20241015);
  for (int trial = 0; trial < 300; ++trial) {
    const int alphabet = 2 + trial % 4;
    const std::size_t len = 1 + gen() % 40;
    std::vector<Symbol> seq(len);
    for (auto& s : seq) s = static_cast<Symbol>(gen() % alphabet);
    const Oracle o = build(seq);
    const auto m = static_cast<State>(len);

    CHECK(o.link_count() <= 2 * len - 1);
    for (State i = 0; i <= m; ++i) {
      for (const auto& t : o.out_links(i)) REQUIRE(t.target > i);
    }
    for (State i = 1; i <= m; ++i) {
      REQUIRE(o.suffix(i) >= 0);
      REQUIRE(o.suffix(i) < i);
      REQUIRE(o.transition(i - 1, seq[i - 1]) == i);
      REQUIRE(o.lrs(i) <= static_cast<std::uint32_t>(i - 1));
      REQUIRE(improv::testing::same_suffix(seq, i, o.suffix(i), o.lrs(i)));
      REQUIRE(o.lrs(i) <= naive_lrs(seq, i));
    }
  }
}
