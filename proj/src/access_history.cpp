#include "racelab/access_history.hpp"

namespace racelab {

std::string_view race_kind_name(RaceKind k) {
  switch (k) {
    case RaceKind::WriteWrite: return "write-write";
    case RaceKind::WriteRead: return "write-read";
    case RaceKind::ReadWrite: return "read-write";
  }
  return "?";
}

std::string render(const RaceReport& r, const Trace& trace) {
  return "RACE " + std::string(race_kind_name(r.kind)) + " at e" + std::to_string(r.event_index) + " on " +
         trace.var_name(r.var);
}

}  // namespace racelab
