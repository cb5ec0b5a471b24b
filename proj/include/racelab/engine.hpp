#ifndef RACELAB_ENGINE_HPP
#define RACELAB_ENGINE_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "racelab/access_history.hpp"
#include "racelab/clocks.hpp"
#include "racelab/metrics.hpp"
#include "racelab/trace.hpp"

namespace racelab {

struct EngineConfig {
  std::size_t threads = 0;
  std::size_t locks = 0;
  std::size_t vars = 0;
  DetectionMode mode = DetectionMode::SampledOnly;
  bool local_epoch_opt = true;  // orderedlist only
  bool skipping = true;         // uclock only; false replays every join and copy

  static EngineConfig for_trace(const Trace& trace, DetectionMode mode = DetectionMode::SampledOnly);
};

/// Streaming analysis over one trace. Events must be fed in trace order.
class Engine {
 public:
  explicit Engine(const EngineConfig& cfg);
  virtual ~Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  virtual std::string_view name() const = 0;

  /// Races detected at `ev`, deduplicated and sorted.
  std::vector<RaceReport> process(const Event& ev);

  /// Timestamp of the most recently processed event of thread t.
  virtual VectorClock timestamp(ThreadId t) const = 0;

  const RunMetrics& metrics() const;
  const EngineConfig& config() const { return cfg_; }
  const AccessHistory& history() const { return history_; }

 protected:
  virtual void on_acquire(const Event& ev) = 0;
  virtual void on_release(const Event& ev) = 0;
  virtual void on_access(const Event& ev, std::vector<RaceReport>& races) = 0;

  EngineConfig cfg_;
  AccessHistory history_;
  mutable RunMetrics metrics_;
};

enum class EngineKind { Djitp, Sampling, Uclock, OrderedList };

std::string_view engine_token(EngineKind k);
/// Throws std::invalid_argument for unknown tokens.
EngineKind parse_engine(std::string_view token);
const std::vector<EngineKind>& all_engines();

std::unique_ptr<Engine> make_engine(EngineKind kind, const EngineConfig& cfg);

struct AnalysisResult {
  std::vector<RaceReport> races;
  RunMetrics metrics;
};

/// Feeds every event of `trace` through `engine`.
AnalysisResult run_engine(Engine& engine, const Trace& trace);
AnalysisResult analyze(EngineKind kind, const Trace& trace, const EngineConfig& cfg);

}  // namespace racelab

#endif  // RACELAB_ENGINE_HPP
