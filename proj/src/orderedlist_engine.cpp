#include "racelab/orderedlist.hpp"

#include <cassert>

namespace racelab {

OlistState::OlistState(std::size_t n_threads, std::size_t n_locks) {
  threads.resize(n_threads);
  for (OlistThread& th : threads) {
    th.fresh = VectorClock(n_threads);
    th.list = OwnedList(n_threads);
  }
  auto bottom = std::make_shared<const OrderedList>(n_threads);
  locks.assign(n_locks, OlistLock{bottom, -1, std::nullopt, std::nullopt});
}

Time OlistState::own_time(ThreadId t) const {
  const OlistThread& th = threads[t];
  return th.pending_local ? *th.pending_local : th.list.list().get(t);
}

VectorClock OlistState::effective(ThreadId t) const {
  const OlistThread& th = threads[t];
  VectorClock c = th.list.list().snapshot();
  c.set(t, th.new_sample ? th.epoch : own_time(t));
  return c;
}

OrderedListEngine::OrderedListEngine(const EngineConfig& cfg)
    : Engine(cfg), s_(cfg.threads, cfg.locks), deep_per_thread_(cfg.threads, 0) {}

void OrderedListEngine::make_exclusive(ThreadId t) {
  OlistThread& th = s_.threads[t];
  if (th.list.shared()) {
    th.list.deep_copy();
    ++metrics_.deep_copies;
    ++metrics_.full_traversals;
    ++deep_per_thread_[t];
  }
  if (th.pending_local) {
    th.list.set(t, *th.pending_local);
    th.pending_local.reset();
  }
}

bool OrderedListEngine::merge(ThreadId t, ThreadId owner, Time value) {
  const Time known = owner == t ? s_.own_time(t) : s_.threads[t].list.list().get(owner);
  if (value <= known) return false;
  make_exclusive(t);
  OlistThread& th = s_.threads[t];
  th.list.set(owner, value);
  th.fresh.increment(t);
  return true;
}

void OrderedListEngine::on_acquire(const Event& ev) {
  const ThreadId t = ev.thread;
  OlistThread& th = s_.threads[t];
  const OlistLock& lock = s_.locks[ev.object];
  if (!lock.fresh || lock.last_releaser < 0) {
    ++metrics_.acquires_skipped;
    return;
  }
  const auto lr = static_cast<ThreadId>(lock.last_releaser);
  const Time lock_fresh = *lock.fresh;
  if (lock_fresh <= th.fresh[lr]) {
    ++metrics_.acquires_skipped;
    return;
  }
  assert(lr != t);
  const std::size_t d = lock_fresh - th.fresh[lr];
  th.fresh.set(lr, lock_fresh);

  // Keep the view alive even if merging replaces nothing it points to.
  const ListView view = lock.view;
  assert(view.get() != &th.list.list());
  if (cfg_.local_epoch_opt && lock.releaser_epoch) merge(t, lr, *lock.releaser_epoch);
  const std::size_t visited = view->for_prefix(d, [&](ThreadId owner, Time value) { merge(t, owner, value); });
  metrics_.nodes_visited += visited;
  metrics_.entries_saved += cfg_.threads - visited;
}

void OrderedListEngine::on_release(const Event& ev) {
  const ThreadId t = ev.thread;
  OlistThread& th = s_.threads[t];
  if (th.new_sample) {
    if (cfg_.local_epoch_opt) {
      th.pending_local = th.epoch;
    } else {
      if (th.list.shared()) ++metrics_.releases_copied;
      make_exclusive(t);
      th.list.set(t, th.epoch);
    }
    ++th.epoch;
    th.fresh.increment(t);
    th.new_sample = false;
    ++metrics_.epoch_increments;
  }
  OlistLock& lock = s_.locks[ev.object];
  lock.view = th.list.shallow_copy();
  lock.last_releaser = t;
  lock.fresh = th.fresh[t];
  if (cfg_.local_epoch_opt) lock.releaser_epoch = s_.own_time(t);
  ++metrics_.shallow_copies;
}

void OrderedListEngine::on_access(const Event& ev, std::vector<RaceReport>& races) {
  const ThreadId t = ev.thread;
  OlistThread& th = s_.threads[t];
  const OrderedList& list = th.list.list();
  const Time e = th.epoch;
  history_.on_access(ev, ev.marked, [&](ThreadId u) { return u == t ? e : list.get(u); }, e, races);
  if (ev.marked) th.new_sample = true;
}

}  // namespace racelab
