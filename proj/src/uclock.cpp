#include "racelab/uclock.hpp"

namespace racelab {

UclockState::UclockState(std::size_t threads, std::size_t locks)
    : SamplingState(threads, locks),
      thread_fresh(threads, VectorClock(threads)),
      lock_fresh(locks, VectorClock(threads)),
      last_releaser(locks, kNoThread) {}

VectorClock UclockState::effective_fresh(ThreadId t) const {
  VectorClock u = thread_fresh[t];
  if (new_sample[t]) u.increment(t);
  return u;
}

UclockEngine::UclockEngine(const EngineConfig& cfg) : Engine(cfg), s_(cfg.threads, cfg.locks) {}

void UclockEngine::on_acquire(const Event& ev) {
  const ThreadId t = ev.thread;
  const ObjectIndex l = ev.object;
  VectorClock& fresh = s_.thread_fresh[t];
  if (cfg_.skipping) {
    const std::int64_t lr = s_.last_releaser[l];
    if (lr == kNoThread || s_.lock_fresh[l][static_cast<ThreadId>(lr)] <= fresh[static_cast<ThreadId>(lr)]) {
      ++metrics_.acquires_skipped;
      return;
    }
  }
  fresh.join_with(s_.lock_fresh[l]);
  VectorClock& c = s_.thread_clock[t];
  const VectorClock& cl = s_.lock_clock[l];
  for (ThreadId u = 0; u < c.width(); ++u) {
    if (cl[u] > c[u]) {
      c.set(u, cl[u]);
      fresh.increment(t);
    }
  }
  ++metrics_.full_traversals;
}

void UclockEngine::on_release(const Event& ev) {
  const ThreadId t = ev.thread;
  const ObjectIndex l = ev.object;
  s_.last_releaser[l] = t;
  if (s_.new_sample[t]) {
    s_.thread_clock[t].set(t, s_.epoch[t]);
    s_.thread_fresh[t].increment(t);
    ++s_.epoch[t];
    s_.new_sample[t] = false;
    ++metrics_.epoch_increments;
  }
  if (cfg_.skipping && s_.thread_fresh[t][t] == s_.lock_fresh[l][t]) return;
  s_.lock_clock[l] = s_.thread_clock[t];
  s_.lock_fresh[l] = s_.thread_fresh[t];
  ++metrics_.releases_copied;
  ++metrics_.full_traversals;
}

void UclockEngine::on_access(const Event& ev, std::vector<RaceReport>& races) {
  sampled_access(s_, history_, ev, races);
}

}  // namespace racelab
