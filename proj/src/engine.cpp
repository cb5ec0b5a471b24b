#include "racelab/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "racelab/djitp.hpp"
#include "racelab/orderedlist.hpp"
#include "racelab/sampling.hpp"
#include "racelab/uclock.hpp"

namespace racelab {

EngineConfig EngineConfig::for_trace(const Trace& trace, DetectionMode mode) {
  EngineConfig cfg;
  cfg.threads = trace.num_threads();
  cfg.locks = trace.num_locks();
  cfg.vars = trace.num_vars();
  cfg.mode = mode;
  return cfg;
}

Engine::Engine(const EngineConfig& cfg) : cfg_(cfg), history_(cfg.threads, cfg.vars, cfg.mode) {
  metrics_.threads = cfg.threads;
}

std::vector<RaceReport> Engine::process(const Event& ev) {
  ++metrics_.events_total;
  std::vector<RaceReport> races;
  switch (ev.op) {
    case OpKind::Acquire:
      ++metrics_.acquires_total;
      on_acquire(ev);
      break;
    case OpKind::Release:
      ++metrics_.releases_total;
      on_release(ev);
      break;
    case OpKind::Read:
    case OpKind::Write:
      ++metrics_.accesses_total;
      if (ev.marked) ++metrics_.accesses_sampled;
      on_access(ev, races);
      std::sort(races.begin(), races.end());
      races.erase(std::unique(races.begin(), races.end()), races.end());
      metrics_.race_count += races.size();
      break;
  }
  return races;
}

const RunMetrics& Engine::metrics() const {
  metrics_.race_checks = history_.checks();
  return metrics_;
}

std::string_view engine_token(EngineKind k) {
  switch (k) {
    case EngineKind::Djitp: return "djitp";
    case EngineKind::Sampling: return "sampling";
    case EngineKind::Uclock: return "uclock";
    case EngineKind::OrderedList: return "orderedlist";
  }
  return "?";
}

EngineKind parse_engine(std::string_view token) {
  for (EngineKind k : all_engines())
    if (engine_token(k) == token) return k;
  throw std::invalid_argument("unknown engine '" + std::string(token) + "'");
}

const std::vector<EngineKind>& all_engines() {
  static const std::vector<EngineKind> kinds{EngineKind::Djitp, EngineKind::Sampling, EngineKind::Uclock,
                                             EngineKind::OrderedList};
  return kinds;
}

std::unique_ptr<Engine> make_engine(EngineKind kind, const EngineConfig& cfg) {
  switch (kind) {
    case EngineKind::Djitp: return std::make_unique<DjitpEngine>(cfg);
    case EngineKind::Sampling: return std::make_unique<SamplingEngine>(cfg);
    case EngineKind::Uclock: return std::make_unique<UclockEngine>(cfg);
    case EngineKind::OrderedList: return std::make_unique<OrderedListEngine>(cfg);
  }
  throw std::invalid_argument("unknown engine kind");
}

AnalysisResult run_engine(Engine& engine, const Trace& trace) {
  AnalysisResult result;
  for (const Event& ev : trace.events()) {
    auto races = engine.process(ev);
    result.races.insert(result.races.end(), races.begin(), races.end());
  }
  result.metrics = engine.metrics();
  return result;
}

AnalysisResult analyze(EngineKind kind, const Trace& trace, const EngineConfig& cfg) {
  auto engine = make_engine(kind, cfg);
  return run_engine(*engine, trace);
}

}  // namespace racelab
