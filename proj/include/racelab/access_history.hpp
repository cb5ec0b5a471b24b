#ifndef RACELAB_ACCESS_HISTORY_HPP
#define RACELAB_ACCESS_HISTORY_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "racelab/clocks.hpp"
#include "racelab/trace.hpp"

namespace racelab {

/// Named earlier-later: a read that races with an earlier write is write-read.
enum class RaceKind : std::uint8_t { WriteWrite, WriteRead, ReadWrite };

std::string_view race_kind_name(RaceKind k);

struct RaceReport {
  std::size_t event_index = 0;  // the later event of the pair
  ObjectIndex var = 0;
  RaceKind kind = RaceKind::WriteWrite;

  auto operator<=>(const RaceReport&) const = default;
};

/// "RACE <kind> at e<idx> on <var>"
std::string render(const RaceReport& r, const Trace& trace);

enum class DetectionMode { SampledOnly, Extended };

/// Summary of the sampled accesses to one variable.
struct VarHistory {
  VectorClock cw;  // join of the effective timestamps of sampled writes
  VectorClock cr;  // per thread, epoch of its latest sampled read
  std::uint64_t gen_r = 0;
  std::uint64_t gen_w = 0;
  std::uint64_t gen_any = 0;
  std::vector<std::uint64_t> seen_r;  // extended mode: gen_w at the thread's last read check
  std::vector<std::uint64_t> seen_w;  // extended mode: gen_any at the thread's last write check

  explicit VarHistory(std::size_t threads = 0)
      : cw(threads), cr(threads), seen_r(threads, 0), seen_w(threads, 0) {}
};

/// Per-variable histories and race checks. `Eff` is any callable mapping a
/// thread id to the accessing event's effective timestamp component.
class AccessHistory {
 public:
  AccessHistory(std::size_t threads, std::size_t vars, DetectionMode mode)
      : threads_(threads), vars_(vars, VarHistory(threads)), mode_(mode) {}

  DetectionMode mode() const { return mode_; }
  const VarHistory& var(ObjectIndex x) const { return vars_[x]; }
  std::uint64_t checks() const { return checks_; }

  /// Appends the races detected at `ev` to `out`; `sampled` says whether the
  /// event updates the history.
  template <class Eff>
  void on_access(const Event& ev, bool sampled, const Eff& eff, Time epoch, std::vector<RaceReport>& out) {
    VarHistory& h = vars_[ev.object];
    const ThreadId t = ev.thread;
    if (ev.op == OpKind::Read) {
      if (sampled) {
        check(h.cw, eff, ev, RaceKind::WriteRead, out);
        h.cr.set(t, epoch);
        ++h.gen_r;
        ++h.gen_any;
        h.seen_r[t] = h.gen_w;
      } else if (mode_ == DetectionMode::Extended && h.seen_r[t] < h.gen_w) {
        check(h.cw, eff, ev, RaceKind::WriteRead, out);
        h.seen_r[t] = h.gen_w;
      }
      return;
    }
    if (sampled) {
      check_write(h, eff, ev, out);
      for (ThreadId u = 0; u < threads_; ++u) {
        const Time v = u == t ? epoch : eff(u);
        if (v > h.cw[u]) h.cw.set(u, v);
      }
      ++h.gen_w;
      ++h.gen_any;
      h.seen_w[t] = h.gen_any;
    } else if (mode_ == DetectionMode::Extended && h.seen_w[t] < h.gen_any) {
      check_write(h, eff, ev, out);
      h.seen_w[t] = h.gen_any;
    }
  }

 private:
  template <class Eff>
  static bool exceeds(const VectorClock& c, const Eff& eff, std::size_t width) {
    for (ThreadId u = 0; u < width; ++u)
      if (c[u] > eff(u)) return true;
    return false;
  }

  template <class Eff>
  void check(const VectorClock& c, const Eff& eff, const Event& ev, RaceKind kind, std::vector<RaceReport>& out) {
    ++checks_;
    if (exceeds(c, eff, threads_)) out.push_back({ev.index, ev.object, kind});
  }

  template <class Eff>
  void check_write(const VarHistory& h, const Eff& eff, const Event& ev, std::vector<RaceReport>& out) {
    ++checks_;
    if (exceeds(h.cr, eff, threads_)) out.push_back({ev.index, ev.object, RaceKind::ReadWrite});
    if (exceeds(h.cw, eff, threads_)) out.push_back({ev.index, ev.object, RaceKind::WriteWrite});
  }

  std::size_t threads_;
  std::vector<VarHistory> vars_;
  DetectionMode mode_;
  std::uint64_t checks_ = 0;
};

}  // namespace racelab

#endif  // RACELAB_ACCESS_HISTORY_HPP
