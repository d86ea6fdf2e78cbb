// improv: replay, benchmark, inspect, or serve the improvisation engine.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "improv/batch.h"
#include "improv/corpus.h"
#include "improv/service.h"
#include "improv/snapshot_json.h"
#include "improv/stream_io.h"

namespace {

struct ParamFlags {
  double alpha = improv::Params{}.alpha;
  std::string beta = improv::Params{}.beta.str();
  std::uint64_t gamma = improv::Params{}.gamma;
  std::uint64_t c = improv::Params{}.c;
  std::uint32_t tau = improv::Params{}.tau;
  std::uint32_t n = improv::Params{}.n;
  bool step_on_silence = true;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "Recombination factor in [0,1]")->capture_default_str();
    app->add_option("--beta", beta, "Decay factor as NUM/DEN")->capture_default_str();
    app->add_option("--gamma", gamma, "Weight of a new non-first link")->capture_default_str();
    app->add_option("--c", c, "Weight of a state's first link")->capture_default_str();
    app->add_option("--tau", tau, "Dynamics window length")->capture_default_str();
    app->add_option("--n", n, "Notes learned before improvising")->capture_default_str();
    app->add_option("--step-on-silence", step_on_silence,
                    "Step the simulation on ticks without input")
        ->capture_default_str();
  }

  improv::Params params() const {
    improv::Params p;
    p.alpha = alpha;
    p.beta = improv::Ratio::parse(beta);
    p.gamma = gamma;
    p.c = c;
    p.tau = tau;
    p.n = n;
    if (auto err = p.check()) throw std::invalid_argument("invalid parameters: " + *err);
    return p;
  }
};

struct BatchFlags {
  ParamFlags params;
  std::string input;
  std::uint64_t seed = 0;
  std::uint64_t max_tick = 0;
  CLI::Option* max_tick_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--input", input, "Event file (t pitch dur_ms vel per line)")->required();
    app->add_option("--seed", seed, "Generator seed")->capture_default_str();
    max_tick_opt = app->add_option("--max-tick", max_tick, "Last tick to run (inclusive)");
    params.attach(app);
  }

  improv::BatchConfig config() const {
    improv::BatchConfig cfg;
    cfg.params = params.params();
    cfg.seed = seed;
    cfg.options.step_on_silence = params.step_on_silence;
    if (max_tick_opt && max_tick_opt->count() > 0) cfg.max_tick = max_tick;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-time machine improvisation engine"};
  app.require_subcommand(1);

  BatchFlags run_flags;
  std::string output;
  auto* run = app.add_subcommand("run", "Replay an event file and write the improvised stream");
  run_flags.attach(run);
  run->add_option("--output", output, "Output event file")->required();

  BatchFlags bench_flags;
  std::string report_path;
  bool with_samples = false;
  auto* bench = app.add_subcommand("bench", "Time every tick of a replay");
  bench_flags.attach(bench);
  bench->add_option("--report", report_path, "Also write the JSON report here");
  bench->add_flag("--samples", with_samples, "Include per-tick samples in the report");

  BatchFlags inspect_flags;
  std::uint64_t at_tick = 0;
  auto* inspect = app.add_subcommand("inspect", "Print the session snapshot after a tick");
  inspect_flags.attach(inspect);
  inspect->add_option("--at-tick", at_tick, "Tick after which to snapshot")->required();

  ParamFlags serve_params;
  improv::ServiceConfig serve_cfg;
  std::uint32_t metronome_ms = 0;
  auto* serve = app.add_subcommand("serve", "Run the live WebSocket service");
  serve_params.attach(serve);
  serve->add_option("--address", serve_cfg.address, "Listen address")->capture_default_str();
  serve->add_option("--port", serve_cfg.port, "Listen port")->capture_default_str();
  serve->add_option("--first-seed", serve_cfg.first_seed, "Seed of the first session")
      ->capture_default_str();
  serve->add_option("--metronome-ms", metronome_ms, "Silent tick period (0 = off)");
  serve->add_option("--threads", serve_cfg.threads, "I/O threads")->capture_default_str();

  std::string synth_kind = "random-walk";
  std::size_t synth_length = 300;
  std::uint64_t synth_seed = 1;
  std::string synth_output;
  auto* synth = app.add_subcommand("synth", "Write a synthetic input stream");
  synth->add_option("--kind", synth_kind, "random-walk, motifs or happy-birthday")
      ->check(CLI::IsMember({"random-walk", "motifs", "happy-birthday"}))
      ->capture_default_str();
  synth->add_option("--length", synth_length, "Number of notes")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
  synth->add_option("--output", synth_output, "Output event file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto input = improv::read_stream_file(run_flags.input);
      const auto out = improv::run_batch(run_flags.config(), input);
      improv::write_stream_file(output, out);
    } else if (*bench) {
      const auto input = improv::read_stream_file(bench_flags.input);
      const auto report = improv::bench(bench_flags.config(), input);
      const auto j = improv::to_json(report, with_samples);
      std::cout << j.dump(2) << '\n';
      if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!(f << j.dump(2) << '\n')) throw std::runtime_error("cannot write " + report_path);
      }
    } else if (*inspect) {
      const auto input = improv::read_stream_file(inspect_flags.input);
      auto cfg = inspect_flags.config();
      cfg.max_tick = at_tick;
      const auto session = improv::replay(cfg, input);
      std::cout << nlohmann::json(session.snapshot()).dump(2) << '\n';
    } else if (*synth) {
      std::vector<improv::TimedEvent> events;
      if (synth_kind == "random-walk") {
        events = improv::corpus::random_walk(synth_length, synth_seed);
      } else if (synth_kind == "motifs") {
        events = improv::corpus::repeated_motifs(synth_length, synth_seed);
      } else {
        events = improv::corpus::happy_birthday();
      }
      improv::write_stream_file(synth_output, events);
    } else if (*serve) {
      serve_cfg.defaults = serve_params.params();
      serve_cfg.options.step_on_silence = serve_params.step_on_silence;
      if (metronome_ms > 0) serve_cfg.metronome = std::chrono::milliseconds(metronome_ms);
      improv::Service service(serve_cfg);
      std::clog << "improv: listening on " << serve_cfg.address << ":" << service.port() << '\n';
      service.run();
    }
  } catch (const std::exception& e) {
    std::cerr << "improv: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
