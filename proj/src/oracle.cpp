#include "racelab/oracle.hpp"

#include <algorithm>

namespace racelab::oracle {

void HbMatrix::absorb(std::size_t from, std::size_t to) {
  for (std::size_t w = 0; w < words_; ++w) bits_[to * words_ + w] |= bits_[from * words_ + w];
}

HbMatrix hb_closure(const Trace& trace) {
  const std::size_t n = trace.size();
  HbMatrix hb(n);
  std::vector<std::int64_t> last_of_thread(trace.num_threads(), -1);
  std::vector<std::vector<std::size_t>> releases(trace.num_locks());
  for (std::size_t j = 0; j < n; ++j) {
    const Event& e = trace[j];
    hb.add(j, j);
    if (last_of_thread[e.thread] >= 0) hb.absorb(static_cast<std::size_t>(last_of_thread[e.thread]), j);
    if (e.op == OpKind::Acquire)
      for (std::size_t r : releases[e.object]) hb.absorb(r, j);
    if (e.op == OpKind::Release) releases[e.object].push_back(j);
    last_of_thread[e.thread] = static_cast<std::int64_t>(j);
  }
  return hb;
}

namespace {

std::size_t count_diff(const VectorClock& a, const VectorClock& b) {
  std::size_t d = 0;
  for (ThreadId t = 0; t < a.width(); ++t)
    if (a[t] != b[t]) ++d;
  return d;
}

}  // namespace

Tables declarative_timestamps(const Trace& trace, const HbMatrix& hb) {
  const std::size_t n = trace.size();
  const std::size_t T = trace.num_threads();
  Tables tab;
  tab.lt_ft.resize(n);
  tab.lt_smp.resize(n);
  tab.rel_after.assign(n, false);
  tab.ct_ft.assign(n, VectorClock(T));
  tab.ct_smp.assign(n, VectorClock(T));
  tab.vt.assign(n, 0);
  tab.u.assign(n, VectorClock(T));

  // Local times along each thread.
  std::vector<Time> releases_before(T, 0);
  std::vector<Time> rel_after_before(T, 0);
  std::vector<bool> sample_since_release(T, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Event& e = trace[i];
    tab.lt_ft[i] = releases_before[e.thread] + 1;
    tab.lt_smp[i] = rel_after_before[e.thread] + 1;
    if (e.marked) sample_since_release[e.thread] = true;
    if (e.op == OpKind::Release) {
      ++releases_before[e.thread];
      if (sample_since_release[e.thread]) {
        tab.rel_after[i] = true;
        ++rel_after_before[e.thread];
        sample_since_release[e.thread] = false;
      }
    }
  }

  // Maxima over happens-before predecessors.
  for (std::size_t j = 0; j < n; ++j) {
    VectorClock& ft = tab.ct_ft[j];
    VectorClock& smp = tab.ct_smp[j];
    hb.for_each_pred(j, [&](std::size_t i) {
      const Event& f = trace[i];
      if (tab.lt_ft[i] > ft[f.thread]) ft.set(f.thread, tab.lt_ft[i]);
      if (f.marked && tab.lt_smp[i] > smp[f.thread]) smp.set(f.thread, tab.lt_smp[i]);
    });
  }

  // Change counts along each thread, starting from bottom before its first event.
  std::vector<std::int64_t> prev(T, -1);
  const VectorClock bottom(T);
  for (std::size_t j = 0; j < n; ++j) {
    const ThreadId t = trace[j].thread;
    if (prev[t] < 0) {
      tab.vt[j] = count_diff(bottom, tab.ct_smp[j]);
    } else {
      const auto p = static_cast<std::size_t>(prev[t]);
      tab.vt[j] = tab.vt[p] + count_diff(tab.ct_smp[p], tab.ct_smp[j]);
    }
    prev[t] = static_cast<std::int64_t>(j);
  }

  for (std::size_t j = 0; j < n; ++j) {
    VectorClock& u = tab.u[j];
    hb.for_each_pred(j, [&](std::size_t i) {
      const ThreadId t = trace[i].thread;
      if (tab.vt[i] > u[t]) u.set(t, tab.vt[i]);
    });
  }

  tab.vtwork = vtwork(trace);
  return tab;
}

Tables declarative_timestamps(const Trace& trace) { return declarative_timestamps(trace, hb_closure(trace)); }

std::uint64_t vtwork(const Trace& trace) {
  const std::size_t T = trace.num_threads();
  std::vector<VectorClock> thread_clock(T, VectorClock(T));
  std::vector<VectorClock> lock_clock(trace.num_locks(), VectorClock(T));
  std::vector<Time> epoch(T, 1);
  std::vector<bool> pending(T, false);
  std::uint64_t work = 0;
  for (const Event& e : trace.events()) {
    const ThreadId t = e.thread;
    switch (e.op) {
      case OpKind::Acquire:
        work += thread_clock[t].join_with(lock_clock[e.object]);
        break;
      case OpKind::Release:
        if (pending[t]) {
          thread_clock[t].set(t, epoch[t]);
          ++work;
          ++epoch[t];
          pending[t] = false;
        }
        work += count_diff(lock_clock[e.object], thread_clock[t]);
        lock_clock[e.object] = thread_clock[t];
        break;
      case OpKind::Read:
      case OpKind::Write:
        if (e.marked) pending[t] = true;
        break;
    }
  }
  return work;
}

std::vector<bool> first_access_checked(const Trace& trace) {
  const std::size_t n = trace.size();
  std::vector<bool> checked(n, false);
  // Per (thread, var): whether a qualifying sampled access happened since the
  // thread's previous read / write of the variable.
  const std::size_t T = trace.num_threads();
  const std::size_t V = trace.num_vars();
  std::vector<bool> write_since_read(T * V, false);
  std::vector<bool> access_since_write(T * V, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Event& e = trace[i];
    if (!is_access(e.op)) continue;
    const std::size_t key = e.thread * V + e.object;
    if (e.op == OpKind::Read) {
      checked[i] = e.marked || write_since_read[key];
      write_since_read[key] = false;
    } else {
      checked[i] = e.marked || access_since_write[key];
      access_since_write[key] = false;
    }
    if (e.marked) {
      for (ThreadId t = 0; t < T; ++t) {
        if (e.op == OpKind::Write) write_since_read[t * V + e.object] = true;
        access_since_write[t * V + e.object] = true;
      }
      // A sampled write is itself the thread's latest write.
      if (e.op == OpKind::Write) access_since_write[key] = false;
    }
  }
  return checked;
}

namespace {

void check_against(const Trace& trace, const HbMatrix& hb, const std::vector<std::size_t>& earlier, std::size_t j,
                   RaceSet& races) {
  const Event& e = trace[j];
  for (std::size_t i : earlier) {
    const Event& f = trace[i];
    if (f.thread == e.thread) continue;
    if (f.op == OpKind::Read && e.op == OpKind::Read) continue;
    if (hb.hb(i, j)) continue;
    RaceKind kind = RaceKind::WriteWrite;
    if (f.op == OpKind::Write && e.op == OpKind::Read) kind = RaceKind::WriteRead;
    else if (f.op == OpKind::Read && e.op == OpKind::Write) kind = RaceKind::ReadWrite;
    races.emplace(e.index, kind);
  }
}

}  // namespace

RaceSet racy_events(const Trace& trace, const HbMatrix& hb, RaceScope scope) {
  const std::size_t n = trace.size();
  std::vector<bool> inspected(n, true);
  if (scope == RaceScope::FirstAccess) inspected = first_access_checked(trace);
  std::vector<std::vector<std::size_t>> sampled_on(trace.num_vars());
  RaceSet races;
  for (std::size_t j = 0; j < n; ++j) {
    const Event& e = trace[j];
    if (!is_access(e.op)) continue;
    const bool candidate = inspected[j] && (scope != RaceScope::SampledOnly || e.marked);
    if (candidate) check_against(trace, hb, sampled_on[e.object], j, races);
    if (e.marked) sampled_on[e.object].push_back(j);
  }
  return races;
}

RaceSet racy_events(const Trace& trace, RaceScope scope) { return racy_events(trace, hb_closure(trace), scope); }

RaceSet to_race_set(const std::vector<RaceReport>& reports) {
  RaceSet out;
  for (const RaceReport& r : reports) out.emplace(r.event_index, r.kind);
  return out;
}

std::set<std::size_t> event_indices(const RaceSet& races) {
  std::set<std::size_t> out;
  for (const auto& [index, kind] : races) out.insert(index);
  return out;
}

}  // namespace racelab::oracle
