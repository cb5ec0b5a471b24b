#ifndef RACELAB_TRACE_HPP
#define RACELAB_TRACE_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace racelab {

/// Dense thread index, assigned in order of first appearance.
using ThreadId = std::uint32_t;
/// Dense per-kind object index (locks and variables are numbered separately).
using ObjectIndex = std::uint32_t;

enum class OpKind : std::uint8_t { Acquire, Release, Read, Write };

inline bool is_access(OpKind k) { return k == OpKind::Read || k == OpKind::Write; }
inline bool is_sync(OpKind k) { return !is_access(k); }

std::string_view op_token(OpKind k);

struct Event {
  std::size_t index = 0;  // 1-based position in the trace
  ThreadId thread = 0;
  OpKind op = OpKind::Read;
  ObjectIndex object = 0;  // lock index for Acquire/Release, variable index otherwise
  bool marked = false;     // member of the sample set S

  bool operator==(const Event&) const = default;
};

/// A validated, immutable sequence of events plus the name tables needed to
/// write it back out.
class Trace {
 public:
  Trace() = default;

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }

  std::size_t num_threads() const { return thread_names_.size(); }
  std::size_t num_locks() const { return lock_names_.size(); }
  std::size_t num_vars() const { return var_names_.size(); }

  const std::string& thread_name(ThreadId t) const { return thread_names_[t]; }
  const std::string& lock_name(ObjectIndex l) const { return lock_names_[l]; }
  const std::string& var_name(ObjectIndex x) const { return var_names_[x]; }

  std::size_t sample_count() const;
  std::size_t access_count() const;

  /// Same events and names, with marks replaced.  `marks[i]` is ignored for
  /// synchronization events.
  Trace with_marks(const std::vector<bool>& marks) const;

  bool operator==(const Trace&) const = default;

 private:
  friend class TraceBuilder;

  std::vector<Event> events_;
  std::vector<std::string> thread_names_;
  std::vector<std::string> lock_names_;
  std::vector<std::string> var_names_;
};

/// Raised for malformed trace text.
class TraceSyntaxError : public std::runtime_error {
 public:
  TraceSyntaxError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class DisciplineViolation { AcquireOfHeldLock, ReleaseByNonHolder, ReleaseOfFreeLock, MarkOnSyncEvent };

std::string_view violation_name(DisciplineViolation v);

/// Raised when a trace breaks the locking discipline or marks a sync event.
class TraceDisciplineError : public std::runtime_error {
 public:
  TraceDisciplineError(std::size_t event_index, DisciplineViolation reason, std::size_t line = 0);
  std::size_t event_index() const { return event_index_; }
  DisciplineViolation reason() const { return reason_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t event_index_;
  DisciplineViolation reason_;
  std::size_t line_;
};

/// Incremental construction with validation.  Names are interned on first use.
class TraceBuilder {
 public:
  TraceBuilder& add(std::string_view thread, OpKind op, std::string_view object, bool marked = false);
  /// Variant taking dense ids directly; ids beyond the current tables get
  /// default names ("T<i+1>", "l<i+1>", "x<i+1>").
  TraceBuilder& add(ThreadId thread, OpKind op, ObjectIndex object, bool marked = false);

  /// Records the source line used in discipline error messages.
  void set_line(std::size_t line) { line_ = line; }

  Trace build() &&;

 private:
  ThreadId intern_thread(std::string_view name);
  ObjectIndex intern_lock(std::string_view name);
  ObjectIndex intern_var(std::string_view name);
  void push(ThreadId thread, OpKind op, ObjectIndex object, bool marked);

  Trace trace_;
  std::vector<std::int64_t> holder_;  // per lock, -1 when free
  std::size_t line_ = 0;
};

/// Parses the line format `thread|op(obj)[|*]`.
Trace parse_trace(std::string_view text);
Trace read_trace_file(const std::string& path);

std::string serialize_trace(const Trace& trace);
void write_trace_file(const Trace& trace, const std::string& path);

// --- sampling -------------------------------------------------------------

enum class SamplingMode { None, Bernoulli, PreMarked };

struct SamplingPolicy {
  SamplingMode mode = SamplingMode::PreMarked;
  double rate = 0.0;
  std::uint64_t seed = 0;

  static SamplingPolicy none() { return {SamplingMode::None, 0.0, 0}; }
  static SamplingPolicy pre_marked() { return {SamplingMode::PreMarked, 0.0, 0}; }
  static SamplingPolicy bernoulli(double rate, std::uint64_t seed) { return {SamplingMode::Bernoulli, rate, seed}; }
};

/// splitmix64 finalizer applied to `seed + index * golden_gamma`.
std::uint64_t sample_hash(std::uint64_t seed, std::uint64_t index);

/// Uniform value in [0,1) for the event at `index`; depends only on (seed, index).
double sample_uniform(std::uint64_t seed, std::uint64_t index);

Trace apply_sampling(const Trace& trace, const SamplingPolicy& policy);

// --- generation -----------------------------------------------------------

struct GenConfig {
  std::size_t threads = 4;
  std::size_t locks = 4;
  std::size_t vars = 4;
  std::size_t events = 200;
  double p_sync = 0.3;
  double contention = 0.5;
  double accesses_per_cs = 2.0;

  /// Throws std::invalid_argument when a count is zero or a probability is
  /// outside [0,1].
  void validate() const;
};

Trace generate_trace(const GenConfig& cfg, std::uint64_t seed);

/// One marked access by the first thread, then `handoffs` alternating lock
/// handoffs between two threads.  Each critical section after the first
/// contains `accesses_per_cs` unmarked accesses.
Trace make_handoff_trace(std::size_t handoffs, std::size_t accesses_per_cs = 0);

}  // namespace racelab

#endif  // RACELAB_TRACE_HPP
