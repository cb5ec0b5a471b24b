#ifndef RACELAB_DJITP_HPP
#define RACELAB_DJITP_HPP

#include <vector>

#include "racelab/engine.hpp"

namespace racelab {

struct DjitpState {
  std::vector<VectorClock> thread_clock;  // own component starts at 1
  std::vector<VectorClock> lock_clock;
  std::vector<bool> last_was_release;
};

/// Full happens-before detection; every access is checked and recorded,
/// regardless of sample marks.
class DjitpEngine final : public Engine {
 public:
  explicit DjitpEngine(const EngineConfig& cfg);

  std::string_view name() const override { return "djitp"; }
  VectorClock timestamp(ThreadId t) const override;

  const DjitpState& state() const { return s_; }
  DjitpState& state() { return s_; }

 protected:
  void on_acquire(const Event& ev) override;
  void on_release(const Event& ev) override;
  void on_access(const Event& ev, std::vector<RaceReport>& races) override;

 private:
  DjitpState s_;
};

}  // namespace racelab

#endif  // RACELAB_DJITP_HPP
