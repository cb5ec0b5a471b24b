#include "racelab/sampling.hpp"

namespace racelab {

SamplingState::SamplingState(std::size_t threads, std::size_t locks)
    : thread_clock(threads, VectorClock(threads)),
      epoch(threads, 1),
      new_sample(threads, false),
      lock_clock(locks, VectorClock(threads)) {}

VectorClock SamplingState::effective(ThreadId t) const {
  VectorClock c = thread_clock[t];
  if (new_sample[t]) c.set(t, epoch[t]);
  return c;
}

void sampled_access(SamplingState& s, AccessHistory& history, const Event& ev, std::vector<RaceReport>& races) {
  const ThreadId t = ev.thread;
  const VectorClock& c = s.thread_clock[t];
  const Time e = s.epoch[t];
  history.on_access(ev, ev.marked, [&](ThreadId u) { return u == t ? e : c[u]; }, e, races);
  if (ev.marked) s.new_sample[t] = true;
}

SamplingEngine::SamplingEngine(const EngineConfig& cfg) : Engine(cfg), s_(cfg.threads, cfg.locks) {}

void SamplingEngine::on_acquire(const Event& ev) {
  s_.thread_clock[ev.thread].join_with(s_.lock_clock[ev.object]);
  ++metrics_.full_traversals;
}

void SamplingEngine::on_release(const Event& ev) {
  const ThreadId t = ev.thread;
  if (s_.new_sample[t]) {
    s_.thread_clock[t].set(t, s_.epoch[t]);
    ++s_.epoch[t];
    s_.new_sample[t] = false;
    ++metrics_.epoch_increments;
  }
  s_.lock_clock[ev.object] = s_.thread_clock[t];
  ++metrics_.releases_copied;
  ++metrics_.full_traversals;
}

void SamplingEngine::on_access(const Event& ev, std::vector<RaceReport>& races) {
  sampled_access(s_, history_, ev, races);
}

}  // namespace racelab
