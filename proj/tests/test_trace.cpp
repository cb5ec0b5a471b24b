#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "racelab/trace.hpp"
#include "support.hpp"

namespace racelab {
namespace {

TEST(ParseTrace, MinimalConflictingPair) {
  const Trace t = parse_trace("T1|w(x)|*\nT2|w(x)");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.num_threads(), 2u);
  EXPECT_EQ(t.num_vars(), 1u);
  EXPECT_EQ(t.num_locks(), 0u);
  EXPECT_TRUE(t[0].marked);
  EXPECT_FALSE(t[1].marked);
  EXPECT_EQ(t[0].index, 1u);
  EXPECT_EQ(t[1].index, 2u);
  EXPECT_EQ(t[1].thread, 1u);
  EXPECT_EQ(t[1].op, OpKind::Write);
}

TEST(ParseTrace, WorkedExampleShape) {
  const Trace t = testing::fig2();
  ASSERT_EQ(t.size(), 18u);
  EXPECT_EQ(t.num_threads(), 2u);
  EXPECT_EQ(t.num_locks(), 4u);
  EXPECT_EQ(t.num_vars(), 1u);
  std::vector<std::size_t> marked;
  for (const Event& e : t.events())
    if (e.marked) marked.push_back(e.index);
  EXPECT_EQ(marked, (std::vector<std::size_t>{5, 15, 16}));
  // Dense ids follow first appearance.
  EXPECT_EQ(t.lock_name(0), "l4");
  EXPECT_EQ(t.lock_name(3), "l1");
}

TEST(ParseTrace, CommentsBlankLinesAndCrlf) {
  const Trace t = parse_trace("# header\n\n  \nA|acq(m)\r\nA|r(v)|*\r\nA|rel(m)\n");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.thread_name(0), "A");
  EXPECT_EQ(t[1].op, OpKind::Read);
  EXPECT_TRUE(t[1].marked);
}

TEST(ParseTrace, ReleaseOfFreeLock) {
  try {
    parse_trace("T1|rel(l1)");
    FAIL() << "expected a discipline error";
  } catch (const TraceDisciplineError& e) {
    EXPECT_EQ(e.event_index(), 1u);
    EXPECT_EQ(e.reason(), DisciplineViolation::ReleaseOfFreeLock);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseTrace, AcquireOfHeldLockIncludingReentry) {
  EXPECT_THROW(parse_trace("T1|acq(l)\nT2|acq(l)"), TraceDisciplineError);
  try {
    parse_trace("T1|acq(l)\nT1|acq(l)");
    FAIL();
  } catch (const TraceDisciplineError& e) {
    EXPECT_EQ(e.reason(), DisciplineViolation::AcquireOfHeldLock);
    EXPECT_EQ(e.event_index(), 2u);
  }
}

TEST(ParseTrace, ReleaseByNonHolder) {
  try {
    parse_trace("T1|acq(l)\nT2|rel(l)");
    FAIL();
  } catch (const TraceDisciplineError& e) {
    EXPECT_EQ(e.reason(), DisciplineViolation::ReleaseByNonHolder);
    EXPECT_EQ(e.event_index(), 2u);
  }
}

TEST(ParseTrace, MarkOnSyncEvent) {
  try {
    parse_trace("T1|acq(l)|*");
    FAIL();
  } catch (const TraceDisciplineError& e) {
    EXPECT_EQ(e.reason(), DisciplineViolation::MarkOnSyncEvent);
  }
}

TEST(ParseTrace, SyntaxErrorsCarryLineNumbers) {
  const std::vector<std::string> bad{"T1 w(x)", "T1|x(y)", "T1|w(x", "T1|w()", "|w(x)", "T1|w(x)|+", "T 1|w(x)"};
  for (const std::string& line : bad) {
    try {
      parse_trace("# ok\nT9|r(z)\n" + line);
      FAIL() << line;
    } catch (const TraceSyntaxError& e) {
      EXPECT_EQ(e.line(), 3u) << line;
    }
  }
}

TEST(ParseTrace, LocksAndVariablesAreSeparateNamespaces) {
  const Trace t = parse_trace("T1|acq(a)\nT1|w(a)\nT1|rel(a)");
  EXPECT_EQ(t.num_locks(), 1u);
  EXPECT_EQ(t.num_vars(), 1u);
}

TEST(SerializeTrace, EmptyTrace) { EXPECT_EQ(serialize_trace(Trace{}), ""); }

TEST(SerializeTrace, WorkedExampleLines) {
  const std::string text = serialize_trace(testing::fig2());
  EXPECT_EQ(text, testing::kFig2Text);
  std::vector<std::size_t> marked_lines;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    ++line;
    if (text.compare(end - 2, 2, "|*") == 0) marked_lines.push_back(line);
    pos = end + 1;
  }
  EXPECT_EQ(line, 18u);
  EXPECT_EQ(marked_lines, (std::vector<std::size_t>{5, 15, 16}));
}

TEST(SerializeTrace, RoundTripOnRandomTraces) {
  const auto suite = testing::random_suite(100, 300, 11);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Trace t = testing::sampled(suite[i], 0.2, i);
    EXPECT_EQ(parse_trace(serialize_trace(t)), t) << "trace " << i;
  }
}

TEST(TraceBuilder, DenseIdVariantNamesDefaults) {
  TraceBuilder b;
  b.add(ThreadId{0}, OpKind::Acquire, ObjectIndex{0});
  b.add(ThreadId{0}, OpKind::Write, ObjectIndex{0}, true);
  b.add(ThreadId{0}, OpKind::Release, ObjectIndex{0});
  const Trace t = std::move(b).build();
  EXPECT_EQ(serialize_trace(t), "T1|acq(l1)\nT1|w(x1)|*\nT1|rel(l1)\n");
}

TEST(ApplySampling, RateZeroAndOne) {
  const Trace t = testing::random_suite(1, 400, 3)[0];
  const Trace none = testing::sampled(t, 0.0, 9);
  EXPECT_EQ(none.sample_count(), 0u);
  const Trace all = testing::sampled(t, 1.0, 9);
  EXPECT_EQ(all.sample_count(), all.access_count());
  for (const Event& e : all.events())
    if (is_sync(e.op)) { EXPECT_FALSE(e.marked); }
}

TEST(ApplySampling, NoneClearsAndPreMarkedKeeps) {
  const Trace t = testing::fig2();
  EXPECT_EQ(apply_sampling(t, SamplingPolicy::none()).sample_count(), 0u);
  EXPECT_EQ(apply_sampling(t, SamplingPolicy::pre_marked()), t);
}

TEST(ApplySampling, BinomialCountAtThreePercent) {
  TraceBuilder b;
  for (int i = 0; i < 10000; ++i) b.add("T1", OpKind::Write, "x");
  const Trace t = testing::sampled(std::move(b).build(), 0.03, 12345);
  const double mean = 300.0;
  const double sigma = std::sqrt(10000 * 0.03 * 0.97);
  EXPECT_NEAR(static_cast<double>(t.sample_count()), mean, 3 * sigma);
}

TEST(ApplySampling, DecisionsDependOnlyOnSeedAndIndex) {
  const auto suite = testing::random_suite(2, 500, 21);
  const Trace a = testing::sampled(suite[0], 0.3, 77);
  const Trace b = testing::sampled(suite[1], 0.3, 77);
  EXPECT_EQ(testing::sampled(suite[0], 0.3, 77), a);
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (is_access(a[i].op) && is_access(b[i].op)) { EXPECT_EQ(a[i].marked, b[i].marked) << i; }
    if (is_access(a[i].op)) { EXPECT_EQ(a[i].marked, sample_uniform(77, i + 1) < 0.3) << i; }
  }
}

TEST(ApplySampling, UniformValuesInUnitInterval) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = sample_uniform(5, i);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(sample_hash(1, 1), sample_hash(2, 1));
}

}  // namespace
}  // namespace racelab
