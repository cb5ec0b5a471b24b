#include "racelab/trace.hpp"

#include <random>

namespace racelab {

void GenConfig::validate() const {
  if (threads == 0 || locks == 0 || vars == 0 || events == 0)
    throw std::invalid_argument("generator counts must be at least 1");
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p_sync)) throw std::invalid_argument("p_sync must be in [0,1]");
  if (!prob(contention)) throw std::invalid_argument("contention must be in [0,1]");
  if (!(accesses_per_cs >= 0.0)) throw std::invalid_argument("accesses_per_cs must be non-negative");
}

namespace {

class Generator {
 public:
  Generator(const GenConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), rng_(seed), holder_(cfg.locks, -1), held_(cfg.threads), acquired_(cfg.locks, false) {
    unacquired_ = cfg.locks;
  }

  Trace run() {
    for (std::size_t i = 0; i < cfg_.events; ++i) step(cfg_.events - i);
    return std::move(builder_).build();
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  bool coin(double p) { return uniform() < p; }

  void step(std::size_t remaining) {
    // Keep enough budget to close every open section and to touch every lock once.
    if (remaining < 2 * unacquired_ + held_total_ + 2) {
      forced_step(remaining);
      return;
    }
    const auto t = static_cast<ThreadId>(pick(cfg_.threads));
    auto& stack = held_[t];
    if (!stack.empty()) {
      if (coin(1.0 / (1.0 + cfg_.accesses_per_cs))) {
        release(t);
        return;
      }
      if (coin(cfg_.p_sync) && try_acquire(t)) return;
      access(t);
      return;
    }
    if (coin(cfg_.p_sync) && try_acquire(t)) return;
    access(t);
  }

  void forced_step(std::size_t remaining) {
    if (unacquired_ > 0 && remaining >= held_total_ + 2) {
      for (ObjectIndex l = 0; l < cfg_.locks; ++l) {
        if (!acquired_[l] && holder_[l] < 0) {
          acquire(static_cast<ThreadId>(pick(cfg_.threads)), l);
          return;
        }
      }
    }
    if (held_total_ > 0) {
      std::vector<ThreadId> holders;
      for (ThreadId t = 0; t < cfg_.threads; ++t)
        if (!held_[t].empty()) holders.push_back(t);
      release(holders[pick(holders.size())]);
      return;
    }
    access(static_cast<ThreadId>(pick(cfg_.threads)));
  }

  bool try_acquire(ThreadId t) {
    if (last_released_ >= 0 && coin(cfg_.contention)) {
      const auto l = static_cast<ObjectIndex>(last_released_);
      if (holder_[l] >= 0) return false;  // contended: the thread waits and does other work
      acquire(t, l);
      return true;
    }
    std::vector<ObjectIndex> free;
    for (ObjectIndex l = 0; l < cfg_.locks; ++l)
      if (holder_[l] < 0) free.push_back(l);
    if (free.empty()) return false;
    acquire(t, free[pick(free.size())]);
    return true;
  }

  void acquire(ThreadId t, ObjectIndex l) {
    holder_[l] = t;
    held_[t].push_back(l);
    ++held_total_;
    if (!acquired_[l]) {
      acquired_[l] = true;
      --unacquired_;
    }
    builder_.add(thread_name(t), OpKind::Acquire, lock_name(l));
  }

  void release(ThreadId t) {
    const ObjectIndex l = held_[t].back();
    held_[t].pop_back();
    --held_total_;
    holder_[l] = -1;
    last_released_ = l;
    builder_.add(thread_name(t), OpKind::Release, lock_name(l));
  }

  void access(ThreadId t) {
    const auto x = static_cast<ObjectIndex>(pick(cfg_.vars));
    const OpKind op = coin(0.5) ? OpKind::Write : OpKind::Read;
    builder_.add(thread_name(t), op, var_name(x));
  }

  static std::string thread_name(ThreadId t) { return "T" + std::to_string(t + 1); }
  static std::string lock_name(ObjectIndex l) { return "l" + std::to_string(l + 1); }
  static std::string var_name(ObjectIndex x) { return "x" + std::to_string(x + 1); }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  TraceBuilder builder_;
  std::vector<std::int64_t> holder_;
  std::vector<std::vector<ObjectIndex>> held_;  // per thread, innermost last
  std::vector<bool> acquired_;
  std::size_t unacquired_ = 0;
  std::size_t held_total_ = 0;
  std::int64_t last_released_ = -1;
};

}  // namespace

Trace generate_trace(const GenConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  return Generator(cfg, seed).run();
}

Trace make_handoff_trace(std::size_t handoffs, std::size_t accesses_per_cs) {
  TraceBuilder b;
  b.add("T1", OpKind::Acquire, "l");
  b.add("T1", OpKind::Write, "x", true);
  b.add("T1", OpKind::Release, "l");
  for (std::size_t i = 1; i <= handoffs; ++i) {
    const char* t = (i % 2 == 1) ? "T2" : "T1";
    b.add(t, OpKind::Acquire, "l");
    for (std::size_t a = 0; a < accesses_per_cs; ++a) b.add(t, OpKind::Write, "x");
    b.add(t, OpKind::Release, "l");
  }
  return std::move(b).build();
}

}  // namespace racelab
