#include "racelab/djitp.hpp"

namespace racelab {

DjitpEngine::DjitpEngine(const EngineConfig& cfg) : Engine(cfg) {
  s_.thread_clock.assign(cfg.threads, VectorClock(cfg.threads));
  for (ThreadId t = 0; t < cfg.threads; ++t) s_.thread_clock[t].set(t, 1);
  s_.lock_clock.assign(cfg.locks, VectorClock(cfg.threads));
  s_.last_was_release.assign(cfg.threads, false);
}

VectorClock DjitpEngine::timestamp(ThreadId t) const {
  VectorClock c = s_.thread_clock[t];
  // A release's own time is the one it published, before the increment.
  if (s_.last_was_release[t]) c.set(t, c[t] - 1);
  return c;
}

void DjitpEngine::on_acquire(const Event& ev) {
  s_.thread_clock[ev.thread].join_with(s_.lock_clock[ev.object]);
  s_.last_was_release[ev.thread] = false;
  ++metrics_.full_traversals;
}

void DjitpEngine::on_release(const Event& ev) {
  VectorClock& c = s_.thread_clock[ev.thread];
  s_.lock_clock[ev.object] = c;
  c.increment(ev.thread);
  s_.last_was_release[ev.thread] = true;
  ++metrics_.releases_copied;
  ++metrics_.full_traversals;
  ++metrics_.epoch_increments;
}

void DjitpEngine::on_access(const Event& ev, std::vector<RaceReport>& races) {
  const VectorClock& c = s_.thread_clock[ev.thread];
  s_.last_was_release[ev.thread] = false;
  history_.on_access(ev, true, [&c](ThreadId u) { return c[u]; }, c[ev.thread], races);
}

}  // namespace racelab
