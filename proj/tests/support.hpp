#ifndef RACELAB_TESTS_SUPPORT_HPP
#define RACELAB_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "racelab/engine.hpp"
#include "racelab/oracle.hpp"
#include "racelab/trace.hpp"

namespace racelab::testing {

/// Two threads, four nested locks, sampled writes at events 5, 15 and 16.
inline constexpr const char* kFig2Text =
    "T1|acq(l4)\n"
    "T1|acq(l3)\n"
    "T1|acq(l2)\n"
    "T1|acq(l1)\n"
    "T1|w(x)|*\n"
    "T1|rel(l1)\n"
    "T1|w(x)\n"
    "T2|acq(l1)\n"
    "T2|w(x)\n"
    "T1|rel(l2)\n"
    "T1|w(x)\n"
    "T2|acq(l2)\n"
    "T1|rel(l3)\n"
    "T2|acq(l3)\n"
    "T1|w(x)|*\n"
    "T1|w(x)|*\n"
    "T1|rel(l4)\n"
    "T2|acq(l4)\n";

inline Trace fig2() { return parse_trace(kFig2Text); }

inline Trace all_marked(const Trace& trace) { return trace.with_marks(std::vector<bool>(trace.size(), true)); }

inline Trace sampled(const Trace& trace, double rate, std::uint64_t seed) {
  return apply_sampling(trace, SamplingPolicy::bernoulli(rate, seed));
}

/// Random generator configuration with every dimension in [1, max_dim].
inline GenConfig random_config(std::mt19937_64& rng, std::size_t max_dim, std::size_t min_events,
                               std::size_t max_events) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<std::size_t> len(min_events, max_events);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GenConfig cfg;
  cfg.threads = dim(rng);
  cfg.locks = dim(rng);
  cfg.vars = dim(rng);
  cfg.events = len(rng);
  cfg.p_sync = 0.1 + 0.5 * unit(rng);
  cfg.contention = unit(rng);
  cfg.accesses_per_cs = 4.0 * unit(rng);
  return cfg;
}

inline std::vector<Trace> random_suite(std::size_t count, std::size_t max_events, std::uint64_t seed,
                                       std::size_t max_dim = 8) {
  std::mt19937_64 rng(seed);
  std::vector<Trace> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const GenConfig cfg = random_config(rng, max_dim, 2, max_events);
    out.push_back(generate_trace(cfg, rng()));
  }
  return out;
}

/// Races and the per-event timestamp of the event's thread.
struct Replay {
  oracle::RaceSet races;
  std::vector<VectorClock> stamps;
};

inline Replay replay(Engine& engine, const Trace& trace) {
  Replay r;
  for (const Event& ev : trace.events()) {
    for (const RaceReport& rep : engine.process(ev)) r.races.emplace(rep.event_index, rep.kind);
    r.stamps.push_back(engine.timestamp(ev.thread));
  }
  return r;
}

inline Replay replay(EngineKind kind, const Trace& trace, EngineConfig cfg) {
  auto engine = make_engine(kind, cfg);
  return replay(*engine, trace);
}

inline Event make_event(std::size_t index, ThreadId t, OpKind op, ObjectIndex obj, bool marked = false) {
  return Event{index, t, op, obj, marked};
}

}  // namespace racelab::testing

#endif  // RACELAB_TESTS_SUPPORT_HPP
