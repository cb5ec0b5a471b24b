#ifndef RACELAB_ORACLE_HPP
#define RACELAB_ORACLE_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "racelab/access_history.hpp"
#include "racelab/clocks.hpp"
#include "racelab/trace.hpp"

namespace racelab::oracle {

/// Reflexive-transitive happens-before relation over the events of a trace,
/// stored as one predecessor bitset per event.
class HbMatrix {
 public:
  HbMatrix() = default;
  explicit HbMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }

  /// 0-based event positions; true iff event i happens before (or is) event j.
  bool hb(std::size_t i, std::size_t j) const { return (bits_[j * words_ + i / 64] >> (i % 64)) & 1u; }
  void add(std::size_t i, std::size_t j) { bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64); }
  /// Adds every predecessor of `from` to the predecessors of `to`.
  void absorb(std::size_t from, std::size_t to);

  template <class Fn>
  void for_each_pred(std::size_t j, Fn&& fn) const {
    const std::uint64_t* row = &bits_[j * words_];
    for (std::size_t w = 0; w < words_; ++w) {
      for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) fn(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
    }
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Program order plus an edge from every release to every later acquire of
/// the same lock, transitively closed.
HbMatrix hb_closure(const Trace& trace);

/// Per-event declarative timestamps. Index i describes event i+1. The sample
/// set is the trace's marks.
struct Tables {
  std::vector<Time> lt_ft;
  std::vector<VectorClock> ct_ft;
  std::vector<Time> lt_smp;
  std::vector<VectorClock> ct_smp;
  std::vector<std::uint64_t> vt;
  std::vector<VectorClock> u;
  std::vector<bool> rel_after;  // release that is the first in its thread after a sampled event
  std::uint64_t vtwork = 0;
};

Tables declarative_timestamps(const Trace& trace, const HbMatrix& hb);
Tables declarative_timestamps(const Trace& trace);

/// Component-level changes made to any thread or lock clock by a replay of
/// the sampling-timestamp algorithm.
std::uint64_t vtwork(const Trace& trace);

enum class RaceScope {
  SampledOnly,  // later event in S, earlier event in S
  Extended,     // later event anywhere, earlier event in S
  FirstAccess,  // Extended, restricted to events a first-access filter inspects
};

using RaceSet = std::set<std::pair<std::size_t, RaceKind>>;

/// Later events of conflicting, happens-before-unordered pairs whose earlier
/// event is sampled.
RaceSet racy_events(const Trace& trace, const HbMatrix& hb, RaceScope scope);
RaceSet racy_events(const Trace& trace, RaceScope scope);

/// Events the first-access filter inspects: sampled accesses, unsampled reads
/// preceded by a sampled write to the same variable since the thread's
/// previous read of it, and unsampled writes preceded by any sampled access to
/// the variable since the thread's previous write of it.
std::vector<bool> first_access_checked(const Trace& trace);

RaceSet to_race_set(const std::vector<RaceReport>& reports);
std::set<std::size_t> event_indices(const RaceSet& races);

}  // namespace racelab::oracle

#endif  // RACELAB_ORACLE_HPP
