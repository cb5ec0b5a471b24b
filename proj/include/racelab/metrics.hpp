#ifndef RACELAB_METRICS_HPP
#define RACELAB_METRICS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace racelab {

/// Operation counters shared by all engines. Fields an engine does not use
/// stay zero.
struct RunMetrics {
  std::uint64_t events_total = 0;
  std::uint64_t accesses_total = 0;
  std::uint64_t accesses_sampled = 0;
  std::uint64_t acquires_total = 0;
  std::uint64_t acquires_skipped = 0;
  std::uint64_t releases_total = 0;
  std::uint64_t releases_copied = 0;
  std::uint64_t deep_copies = 0;
  std::uint64_t shallow_copies = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t full_traversals = 0;
  std::uint64_t entries_saved = 0;
  std::uint64_t race_count = 0;
  std::uint64_t epoch_increments = 0;
  std::uint64_t race_checks = 0;

  /// Width used by saving_ratio.
  std::uint64_t threads = 0;

  double skip_ratio() const;
  double saving_ratio() const;

  RunMetrics& operator+=(const RunMetrics& other);
  bool operator==(const RunMetrics&) const = default;
};

/// One emitted row.
struct RunRecord {
  std::string engine;
  std::string trace;
  std::optional<double> rate;  // empty when marks came from the trace file
  std::uint64_t seed = 0;
  RunMetrics metrics;
  std::optional<double> seconds;  // wall time, only when requested
};

enum class MetricsFormat { Json, Csv };

/// Column order of the CSV output and key order of the JSON output.
std::vector<std::string> metric_fields(bool with_timing = false);

std::string to_json(const RunRecord& record);
std::string csv_header(bool with_timing = false);
std::string csv_row(const RunRecord& record, bool with_timing = false);

/// JSON: one object per line. CSV: header then one row per record.
void emit(std::ostream& out, const std::vector<RunRecord>& records, MetricsFormat format, bool with_timing = false);

}  // namespace racelab

#endif  // RACELAB_METRICS_HPP
