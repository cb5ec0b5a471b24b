#ifndef RACELAB_ORDEREDLIST_HPP
#define RACELAB_ORDEREDLIST_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "racelab/engine.hpp"
#include "racelab/olist.hpp"

namespace racelab {

struct OlistThread {
  VectorClock fresh;
  OwnedList list;
  Time epoch = 1;
  bool new_sample = false;
  std::optional<Time> pending_local;  // own time not yet written to the list (local-epoch optimization)
};

struct OlistLock {
  ListView view;
  std::int64_t last_releaser = -1;
  std::optional<Time> fresh;           // releaser's own freshness at the last release
  std::optional<Time> releaser_epoch;  // releaser's own time, local-epoch optimization only
};

struct OlistState {
  std::vector<OlistThread> threads;
  std::vector<OlistLock> locks;

  OlistState() = default;
  OlistState(std::size_t threads, std::size_t locks);

  /// Own time as the list would hold it with any pending epoch folded in.
  Time own_time(ThreadId t) const;
  VectorClock effective(ThreadId t) const;
};

/// Sampling timestamps kept in move-to-front ordered lists. Releases publish
/// shallow copies; acquires read only the prefix that changed since the
/// acquirer last heard from the releaser.
class OrderedListEngine final : public Engine {
 public:
  explicit OrderedListEngine(const EngineConfig& cfg);

  std::string_view name() const override { return "orderedlist"; }
  VectorClock timestamp(ThreadId t) const override { return s_.effective(t); }

  const OlistState& state() const { return s_; }
  OlistState& state() { return s_; }

  /// Deep copies performed on behalf of each thread.
  const std::vector<std::uint64_t>& deep_copies_per_thread() const { return deep_per_thread_; }

 protected:
  void on_acquire(const Event& ev) override;
  void on_release(const Event& ev) override;
  void on_access(const Event& ev, std::vector<RaceReport>& races) override;

 private:
  void make_exclusive(ThreadId t);
  bool merge(ThreadId t, ThreadId owner, Time value);

  OlistState s_;
  std::vector<std::uint64_t> deep_per_thread_;
};

}  // namespace racelab

#endif  // RACELAB_ORDEREDLIST_HPP
