#include "improv/snapshot_json.h"

namespace improv {

using nlohmann::json;

namespace {

template <typename T>
json nullable(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> read_nullable(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

void to_json(json& j, const Params& p) {
  j = json{{"alpha", p.alpha}, {"beta", p.beta.str()}, {"gamma", p.gamma},
           {"c", p.c},         {"tau", p.tau},         {"n", p.n}};
}

void from_json(const json& j, Params& p) {
  p.alpha = j.at("alpha").get<double>();
  p.beta = Ratio::parse(j.at("beta").get<std::string>());
  p.gamma = j.at("gamma").get<std::uint64_t>();
  p.c = j.at("c").get<std::uint64_t>();
  p.tau = j.at("tau").get<std::uint32_t>();
  p.n = j.at("n").get<std::uint32_t>();
}

void to_json(json& j, const OracleSnapshot& s) {
  json links = json::array();
  for (const auto& l : s.links) links.push_back({{"from", l.from}, {"sym", l.sym}, {"to", l.to}});
  j = json{{"m", s.m}, {"links", std::move(links)}, {"suffix", s.suffix}, {"lrs", s.lrs}};
}

void from_json(const json& j, OracleSnapshot& s) {
  s.m = j.at("m").get<std::size_t>();
  s.links.clear();
  for (const auto& l : j.at("links")) {
    s.links.push_back({l.at("from").get<State>(), l.at("sym").get<Symbol>(),
                       l.at("to").get<State>()});
  }
  s.suffix = j.at("suffix").get<std::vector<State>>();
  s.lrs = j.at("lrs").get<std::vector<std::uint32_t>>();
}

void to_json(json& j, const SessionSnapshot& s) {
  json links = json::array();
  for (const auto& l : s.links) {
    links.push_back({{"from", l.from}, {"sym", l.sym}, {"to", l.to}, {"w", l.w}});
  }
  j = json{{"type", "snapshot"},
           {"m", s.m},
           {"k", nullable(s.k)},
           {"go", s.go},
           {"user_avg", nullable(s.user_avg)},
           {"comp_avg", nullable(s.comp_avg)},
           {"links", std::move(links)},
           {"suffix", s.suffix},
           {"lrs", s.lrs},
           {"totals", s.totals},
           {"tick", s.tick},
           {"started", s.started},
           {"seed", s.seed},
           {"params", s.params}};
}

void from_json(const json& j, SessionSnapshot& s) {
  s.m = j.at("m").get<std::size_t>();
  s.k = read_nullable<State>(j, "k");
  s.go = j.at("go").get<std::uint64_t>();
  s.user_avg = read_nullable<double>(j, "user_avg");
  s.comp_avg = read_nullable<double>(j, "comp_avg");
  s.links.clear();
  for (const auto& l : j.at("links")) {
    s.links.push_back({l.at("from").get<State>(), l.at("sym").get<Symbol>(),
                       l.at("to").get<State>(), l.at("w").get<std::uint64_t>()});
  }
  s.suffix = j.at("suffix").get<std::vector<State>>();
  s.lrs = j.at("lrs").get<std::vector<std::uint32_t>>();
  s.totals = j.at("totals").get<std::vector<std::uint64_t>>();
  s.tick = j.at("tick").get<std::uint64_t>();
  s.started = j.at("started").get<bool>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.params = j.at("params").get<Params>();
}

}  // namespace improv
