#ifndef RACELAB_SAMPLING_HPP
#define RACELAB_SAMPLING_HPP

#include <vector>

#include "racelab/engine.hpp"

namespace racelab {

struct SamplingState {
  std::vector<VectorClock> thread_clock;
  std::vector<Time> epoch;        // local time of the thread's next sampled event, starts at 1
  std::vector<bool> new_sample;   // a sampled access happened since the thread's last release
  std::vector<VectorClock> lock_clock;

  SamplingState() = default;
  SamplingState(std::size_t threads, std::size_t locks);

  /// Thread clock with the own component taken from the current epoch when a
  /// sample is pending.
  VectorClock effective(ThreadId t) const;
};

/// Sampling timestamps: local time advances only at the first release after
/// a sampled access, and only sampled accesses enter the histories.
class SamplingEngine final : public Engine {
 public:
  explicit SamplingEngine(const EngineConfig& cfg);

  std::string_view name() const override { return "sampling"; }
  VectorClock timestamp(ThreadId t) const override { return s_.effective(t); }

  const SamplingState& state() const { return s_; }
  SamplingState& state() { return s_; }

 protected:
  void on_acquire(const Event& ev) override;
  void on_release(const Event& ev) override;
  void on_access(const Event& ev, std::vector<RaceReport>& races) override;

 private:
  SamplingState s_;
};

/// Access handling common to the vector-clock sampling engines.
void sampled_access(SamplingState& s, AccessHistory& history, const Event& ev, std::vector<RaceReport>& races);

}  // namespace racelab

#endif  // RACELAB_SAMPLING_HPP
