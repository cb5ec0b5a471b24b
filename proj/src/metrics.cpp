#include "racelab/metrics.hpp"

#include <iomanip>
#include <sstream>

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
#include "json.hpp"
#pragma GCC diagnostic pop

namespace racelab {

double RunMetrics::skip_ratio() const {
  return acquires_total == 0 ? 0.0 : static_cast<double>(acquires_skipped) / static_cast<double>(acquires_total);
}

double RunMetrics::saving_ratio() const {
  const std::uint64_t processed = acquires_total - acquires_skipped;
  const std::uint64_t all = threads * processed;
  return all == 0 ? 0.0 : static_cast<double>(entries_saved) / static_cast<double>(all);
}

RunMetrics& RunMetrics::operator+=(const RunMetrics& o) {
  events_total += o.events_total;
  accesses_total += o.accesses_total;
  accesses_sampled += o.accesses_sampled;
  acquires_total += o.acquires_total;
  acquires_skipped += o.acquires_skipped;
  releases_total += o.releases_total;
  releases_copied += o.releases_copied;
  deep_copies += o.deep_copies;
  shallow_copies += o.shallow_copies;
  nodes_visited += o.nodes_visited;
  full_traversals += o.full_traversals;
  entries_saved += o.entries_saved;
  race_count += o.race_count;
  epoch_increments += o.epoch_increments;
  race_checks += o.race_checks;
  if (threads == 0) threads = o.threads;
  return *this;
}

namespace {

using Json = nlohmann::ordered_json;

Json to_object(const RunRecord& r, bool with_timing) {
  const RunMetrics& m = r.metrics;
  Json j;
  j["engine"] = r.engine;
  j["trace"] = r.trace;
  j["rate"] = r.rate ? Json(*r.rate) : Json(nullptr);
  j["seed"] = r.seed;
  j["events_total"] = m.events_total;
  j["accesses_total"] = m.accesses_total;
  j["accesses_sampled"] = m.accesses_sampled;
  j["acquires_total"] = m.acquires_total;
  j["acquires_skipped"] = m.acquires_skipped;
  j["releases_total"] = m.releases_total;
  j["releases_copied"] = m.releases_copied;
  j["deep_copies"] = m.deep_copies;
  j["shallow_copies"] = m.shallow_copies;
  j["nodes_visited"] = m.nodes_visited;
  j["full_traversals"] = m.full_traversals;
  j["entries_saved"] = m.entries_saved;
  j["race_count"] = m.race_count;
  j["epoch_increments"] = m.epoch_increments;
  j["race_checks"] = m.race_checks;
  j["skip_ratio"] = m.skip_ratio();
  j["saving_ratio"] = m.saving_ratio();
  if (with_timing) j["seconds"] = r.seconds ? Json(*r.seconds) : Json(nullptr);
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> metric_fields(bool with_timing) {
  std::vector<std::string> fields;
  const Json sample = to_object(RunRecord{}, with_timing);
  for (const auto& [key, value] : sample.items()) fields.push_back(key);
  return fields;
}

std::string to_json(const RunRecord& record) { return to_object(record, record.seconds.has_value()).dump(); }

std::string csv_header(bool with_timing) {
  std::string out;
  for (const std::string& f : metric_fields(with_timing)) {
    if (!out.empty()) out += ',';
    out += f;
  }
  return out;
}

std::string csv_row(const RunRecord& record, bool with_timing) {
  std::ostringstream out;
  bool first = true;
  const Json object = to_object(record, with_timing);
  for (const auto& [key, value] : object.items()) {
    if (!first) out << ',';
    first = false;
    if (value.is_string()) out << csv_escape(value.get<std::string>());
    else if (value.is_null()) out << "";
    else if (value.is_number_float()) out << std::setprecision(10) << value.get<double>();
    else out << value.dump();
  }
  return out.str();
}

void emit(std::ostream& out, const std::vector<RunRecord>& records, MetricsFormat format, bool with_timing) {
  if (format == MetricsFormat::Csv) {
    out << csv_header(with_timing) << '\n';
    for (const RunRecord& r : records) out << csv_row(r, with_timing) << '\n';
    return;
  }
  for (const RunRecord& r : records) out << to_object(r, with_timing).dump() << '\n';
}

}  // namespace racelab
