#ifndef RACELAB_TOOLS_CLI_HPP
#define RACELAB_TOOLS_CLI_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "racelab/engine.hpp"
#include "racelab/trace.hpp"

namespace racelab::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitClean = 0;
inline constexpr int kExitFound = 1;  // races (analyze) or a divergence (diff)
inline constexpr int kExitError = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// First disagreement between an engine and its reference.
struct Divergence {
  std::string engine;
  std::string what;  // "races" or "timestamp"
  std::size_t event_index = 0;
  std::string expected;
  std::string actual;
};

struct DiffOptions {
  DetectionMode mode = DetectionMode::SampledOnly;
  /// The declarative reference runs only up to this many events; beyond it
  /// engines are compared against the plain sampling engine.
  std::size_t oracle_limit = 2000;
};

/// Runs every engine on `trace` (marks already materialized) and compares
/// race sets and per-event timestamps. Empty when all agree.
std::optional<Divergence> diff_engines(const Trace& trace, const DiffOptions& opts = {});

std::string render(const Divergence& d);

}  // namespace racelab::cli

#endif  // RACELAB_TOOLS_CLI_HPP
