#include "racelab/trace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace racelab {

std::string_view op_token(OpKind k) {
  switch (k) {
    case OpKind::Acquire: return "acq";
    case OpKind::Release: return "rel";
    case OpKind::Read: return "r";
    case OpKind::Write: return "w";
  }
  return "?";
}

std::size_t Trace::sample_count() const {
  return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(), [](const Event& e) { return e.marked; }));
}

std::size_t Trace::access_count() const {
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(), [](const Event& e) { return is_access(e.op); }));
}

Trace Trace::with_marks(const std::vector<bool>& marks) const {
  Trace out = *this;
  for (std::size_t i = 0; i < out.events_.size(); ++i) {
    Event& e = out.events_[i];
    e.marked = is_access(e.op) && i < marks.size() && marks[i];
  }
  return out;
}

TraceSyntaxError::TraceSyntaxError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view violation_name(DisciplineViolation v) {
  switch (v) {
    case DisciplineViolation::AcquireOfHeldLock: return "acquire-of-held-lock";
    case DisciplineViolation::ReleaseByNonHolder: return "release-by-non-holder";
    case DisciplineViolation::ReleaseOfFreeLock: return "release-of-free-lock";
    case DisciplineViolation::MarkOnSyncEvent: return "mark-on-sync-event";
  }
  return "?";
}

namespace {

std::string discipline_message(std::size_t event_index, DisciplineViolation reason, std::size_t line) {
  std::string msg = std::string(violation_name(reason)) + " at event " + std::to_string(event_index);
  if (line != 0) msg += " (line " + std::to_string(line) + ")";
  return msg;
}

template <class Index>
Index intern(std::vector<std::string>& names, std::string_view name) {
  // Linear scan keeps the builder simple; traces have few distinct names.
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Index>(i);
  names.emplace_back(name);
  return static_cast<Index>(names.size() - 1);
}

}  // namespace

TraceDisciplineError::TraceDisciplineError(std::size_t event_index, DisciplineViolation reason, std::size_t line)
    : std::runtime_error(discipline_message(event_index, reason, line)),
      event_index_(event_index),
      reason_(reason),
      line_(line) {}

ThreadId TraceBuilder::intern_thread(std::string_view name) { return intern<ThreadId>(trace_.thread_names_, name); }

ObjectIndex TraceBuilder::intern_lock(std::string_view name) {
  ObjectIndex l = intern<ObjectIndex>(trace_.lock_names_, name);
  if (holder_.size() < trace_.lock_names_.size()) holder_.resize(trace_.lock_names_.size(), -1);
  return l;
}

ObjectIndex TraceBuilder::intern_var(std::string_view name) { return intern<ObjectIndex>(trace_.var_names_, name); }

TraceBuilder& TraceBuilder::add(std::string_view thread, OpKind op, std::string_view object, bool marked) {
  ThreadId t = intern_thread(thread);
  ObjectIndex o = is_sync(op) ? intern_lock(object) : intern_var(object);
  push(t, op, o, marked);
  return *this;
}

TraceBuilder& TraceBuilder::add(ThreadId thread, OpKind op, ObjectIndex object, bool marked) {
  auto fill = [](std::vector<std::string>& names, std::size_t upto, char prefix) {
    while (names.size() <= upto) names.push_back(std::string(1, prefix) + std::to_string(names.size() + 1));
  };
  fill(trace_.thread_names_, thread, 'T');
  if (is_sync(op)) {
    fill(trace_.lock_names_, object, 'l');
    holder_.resize(trace_.lock_names_.size(), -1);
  } else {
    fill(trace_.var_names_, object, 'x');
  }
  push(thread, op, object, marked);
  return *this;
}

void TraceBuilder::push(ThreadId thread, OpKind op, ObjectIndex object, bool marked) {
  const std::size_t index = trace_.events_.size() + 1;
  if (marked && is_sync(op)) throw TraceDisciplineError(index, DisciplineViolation::MarkOnSyncEvent, line_);
  if (op == OpKind::Acquire) {
    if (holder_[object] >= 0) throw TraceDisciplineError(index, DisciplineViolation::AcquireOfHeldLock, line_);
    holder_[object] = thread;
  } else if (op == OpKind::Release) {
    if (holder_[object] < 0) throw TraceDisciplineError(index, DisciplineViolation::ReleaseOfFreeLock, line_);
    if (holder_[object] != static_cast<std::int64_t>(thread))
      throw TraceDisciplineError(index, DisciplineViolation::ReleaseByNonHolder, line_);
    holder_[object] = -1;
  }
  trace_.events_.push_back(Event{index, thread, op, object, marked});
}

Trace TraceBuilder::build() && { return std::move(trace_); }

// --- text format ----------------------------------------------------------

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

bool valid_token(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return c == '|' || c == '(' || c == ')' || is_space(c); });
}

}  // namespace

Trace parse_trace(std::string_view text) {
  TraceBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (std::all_of(line.begin(), line.end(), is_space)) continue;

    const std::size_t bar = line.find('|');
    if (bar == std::string_view::npos) throw TraceSyntaxError(line_no, "expected 'thread|op(obj)'");
    std::string_view thread = line.substr(0, bar);
    std::string_view rest = line.substr(bar + 1);

    bool marked = false;
    if (const std::size_t bar2 = rest.find('|'); bar2 != std::string_view::npos) {
      if (rest.substr(bar2) != "|*") throw TraceSyntaxError(line_no, "unexpected suffix '" + std::string(rest.substr(bar2)) + "'");
      marked = true;
      rest = rest.substr(0, bar2);
    }
    if (!valid_token(thread)) throw TraceSyntaxError(line_no, "invalid thread token '" + std::string(thread) + "'");

    const std::size_t open = rest.find('(');
    if (open == std::string_view::npos || rest.empty() || rest.back() != ')')
      throw TraceSyntaxError(line_no, "malformed operation '" + std::string(rest) + "'");
    std::string_view name = rest.substr(0, open);
    std::string_view object = rest.substr(open + 1, rest.size() - open - 2);
    if (!valid_token(object)) throw TraceSyntaxError(line_no, "invalid object token '" + std::string(object) + "'");

    OpKind op;
    if (name == "acq") op = OpKind::Acquire;
    else if (name == "rel") op = OpKind::Release;
    else if (name == "r") op = OpKind::Read;
    else if (name == "w") op = OpKind::Write;
    else throw TraceSyntaxError(line_no, "unknown operation '" + std::string(name) + "'");

    builder.set_line(line_no);
    builder.add(thread, op, object, marked);
  }
  return std::move(builder).build();
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

std::string serialize_trace(const Trace& trace) {
  std::string out;
  out.reserve(trace.size() * 12);
  for (const Event& e : trace.events()) {
    out += trace.thread_name(e.thread);
    out += '|';
    out += op_token(e.op);
    out += '(';
    out += is_sync(e.op) ? trace.lock_name(e.object) : trace.var_name(e.object);
    out += ')';
    if (e.marked) out += "|*";
    out += '\n';
  }
  return out;
}

void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file '" + path + "'");
  out << serialize_trace(trace);
}

// --- sampling -------------------------------------------------------------

std::uint64_t sample_hash(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double sample_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(sample_hash(seed, index) >> 11) * 0x1.0p-53;
}

Trace apply_sampling(const Trace& trace, const SamplingPolicy& policy) {
  if (policy.mode == SamplingMode::PreMarked) return trace;
  std::vector<bool> marks(trace.size(), false);
  if (policy.mode == SamplingMode::Bernoulli) {
    for (const Event& e : trace.events())
      if (is_access(e.op)) marks[e.index - 1] = sample_uniform(policy.seed, e.index) < policy.rate;
  }
  return trace.with_marks(marks);
}

}  // namespace racelab
