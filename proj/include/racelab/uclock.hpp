#ifndef RACELAB_UCLOCK_HPP
#define RACELAB_UCLOCK_HPP

#include <cstdint>
#include <vector>

#include "racelab/sampling.hpp"

namespace racelab {

inline constexpr std::int64_t kNoThread = -1;

struct UclockState : SamplingState {
  std::vector<VectorClock> thread_fresh;  // per thread: known change counts of every thread's clock
  std::vector<VectorClock> lock_fresh;
  std::vector<std::int64_t> last_releaser;  // kNoThread until the first release

  UclockState() = default;
  UclockState(std::size_t threads, std::size_t locks);

  /// Freshness including the change a pending sample has made to the own component.
  VectorClock effective_fresh(ThreadId t) const;
};

/// Sampling timestamps plus freshness counters that let acquires and release
/// copies carrying no new information be skipped.
class UclockEngine final : public Engine {
 public:
  explicit UclockEngine(const EngineConfig& cfg);

  std::string_view name() const override { return "uclock"; }
  VectorClock timestamp(ThreadId t) const override { return s_.effective(t); }

  const UclockState& state() const { return s_; }
  UclockState& state() { return s_; }

 protected:
  void on_acquire(const Event& ev) override;
  void on_release(const Event& ev) override;
  void on_access(const Event& ev, std::vector<RaceReport>& races) override;

 private:
  UclockState s_;
};

}  // namespace racelab

#endif  // RACELAB_UCLOCK_HPP
