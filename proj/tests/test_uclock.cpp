#include <gtest/gtest.h>

#include "engine_support.hpp"
#include "racelab/uclock.hpp"

namespace racelab {
namespace {

using testing::make_event;
using testing::skipped_acquires;

TEST(Uclock, WorkedExampleSkipDecisions) {
  const Trace t = testing::fig2();
  UclockEngine engine(EngineConfig::for_trace(t));
  // e1-e4 acquire never-released locks; e12 and e14 carry nothing new.
  EXPECT_EQ(skipped_acquires(engine, t), (std::vector<std::size_t>{1, 2, 3, 4, 12, 14}));
  EXPECT_EQ(engine.state().thread_clock[1], (VectorClock{2, 0}));
  EXPECT_EQ(engine.metrics().acquires_total, 8u);
}

TEST(Uclock, SingleEntryUpdateFromFreshnessGap) {
  EngineConfig cfg{6, 1, 1};
  UclockEngine engine(cfg);
  UclockState& s = engine.state();
  s.thread_clock[1] = VectorClock{8, 18, 3, 0, 1, 0};
  s.thread_fresh[1].set(0, 14);
  s.lock_clock[0] = VectorClock{9, 17, 3, 0, 1, 0};
  s.lock_fresh[0].set(0, 15);
  s.last_releaser[0] = 0;
  const Time self_before = s.thread_fresh[1][1];
  engine.process(make_event(1, 1, OpKind::Acquire, 0));
  EXPECT_EQ(engine.state().thread_clock[1], (VectorClock{9, 18, 3, 0, 1, 0}));
  EXPECT_EQ(engine.state().thread_fresh[1][0], 15u);
  EXPECT_EQ(engine.state().thread_fresh[1][1], self_before + 1);
  EXPECT_EQ(engine.metrics().acquires_skipped, 0u);
}

TEST(Uclock, EmptySampleSetSkipsEverything) {
  const auto suite = testing::random_suite(50, 400, 3);
  for (const Trace& raw : suite) {
    const Trace t = testing::sampled(raw, 0.0, 1);
    const AnalysisResult r = analyze(EngineKind::Uclock, t, EngineConfig::for_trace(t));
    EXPECT_EQ(r.metrics.acquires_skipped, r.metrics.acquires_total);
    EXPECT_EQ(r.metrics.releases_copied, 0u);
    EXPECT_EQ(r.metrics.full_traversals, 0u);
  }
}

TEST(Uclock, SkippingDoesNotChangeTrajectory) {
  const auto suite = testing::random_suite(120, 300, 808);
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const Trace t = testing::sampled(suite[n], n % 2 ? 0.05 : 0.3, n);
    EngineConfig on = EngineConfig::for_trace(t);
    EngineConfig off = on;
    off.skipping = false;
    const testing::Replay a = testing::replay(EngineKind::Uclock, t, on);
    const testing::Replay b = testing::replay(EngineKind::Uclock, t, off);
    const testing::Replay ref = testing::replay(EngineKind::Sampling, t, on);
    EXPECT_EQ(a.stamps, b.stamps) << n;
    EXPECT_EQ(a.stamps, ref.stamps) << n;
    EXPECT_EQ(a.races, ref.races) << n;
  }
}

TEST(Uclock, SelfFreshnessCountsEveryChange) {
  const auto suite = testing::random_suite(80, 400, 909);
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const Trace t = testing::sampled(suite[n], 0.2, n);
    UclockEngine engine(EngineConfig::for_trace(t));
    std::vector<Time> changes(t.num_threads(), 0);
    for (const Event& e : t.events()) {
      const VectorClock before = engine.state().thread_clock[e.thread];
      engine.process(e);
      const VectorClock& after = engine.state().thread_clock[e.thread];
      for (ThreadId u = 0; u < t.num_threads(); ++u) changes[e.thread] += before[u] != after[u];
      ASSERT_EQ(engine.state().thread_fresh[e.thread][e.thread], changes[e.thread]) << n << " e" << e.index;
    }
  }
}

TEST(Uclock, FreshnessDominatesKnowledge) {
  // Knowing a thread's freshness means knowing its clock at that point: a
  // thread whose freshness entry matches the owner's agrees on the owner's clock.
  const auto suite = testing::random_suite(80, 400, 1001);
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const Trace t = testing::sampled(suite[n], 0.2, n);
    UclockEngine engine(EngineConfig::for_trace(t));
    for (const Event& e : t.events()) {
      engine.process(e);
      const UclockState& s = engine.state();
      for (ThreadId u = 0; u < t.num_threads(); ++u) {
        EXPECT_LE(s.thread_fresh[e.thread][u], s.thread_fresh[u][u]);
        if (u != e.thread && s.thread_fresh[e.thread][u] == s.thread_fresh[u][u]) {
          EXPECT_TRUE(leq(s.thread_clock[u], s.thread_clock[e.thread]));
        }
      }
    }
  }
}

TEST(Uclock, TraversalsBoundedBySamples) {
  const auto suite = testing::random_suite(100, 600, 1111);
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const Trace t = testing::sampled(suite[n], 0.03, n);
    const AnalysisResult r = analyze(EngineKind::Uclock, t, EngineConfig::for_trace(t));
    const std::uint64_t S = t.sample_count();
    const std::uint64_t T = t.num_threads();
    EXPECT_LE(r.metrics.full_traversals, 4 * S * T * (T + t.num_locks())) << n;
  }
}

TEST(Uclock, SkippingDisabledNeverSkips) {
  const Trace t = testing::fig2();
  EngineConfig cfg = EngineConfig::for_trace(t);
  cfg.skipping = false;
  UclockEngine engine(cfg);
  EXPECT_TRUE(skipped_acquires(engine, t).empty());
}

}  // namespace
}  // namespace racelab
