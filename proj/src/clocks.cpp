#include "racelab/clocks.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace racelab {

namespace {

void check_width(const VectorClock& a, const VectorClock& b) {
  if (a.width() != b.width())
    throw std::invalid_argument("vector clock width mismatch: " + std::to_string(a.width()) + " vs " +
                                std::to_string(b.width()));
}

void check_index(const VectorClock& c, ThreadId t) {
  if (t >= c.width())
    throw std::out_of_range("thread " + std::to_string(t) + " outside clock of width " + std::to_string(c.width()));
}

}  // namespace

Time VectorClock::get(ThreadId t) const {
  check_index(*this, t);
  return c_[t];
}

void VectorClock::set(ThreadId t, Time v) {
  check_index(*this, t);
  c_[t] = v;
}

void VectorClock::increment(ThreadId t, Time k) {
  check_index(*this, t);
  if (c_[t] > std::numeric_limits<Time>::max() - k) throw std::overflow_error("vector clock component overflow");
  c_[t] += k;
}

std::size_t VectorClock::join_with(const VectorClock& other) {
  check_width(*this, other);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (other.c_[i] > c_[i]) {
      c_[i] = other.c_[i];
      ++changed;
    }
  }
  return changed;
}

bool VectorClock::is_bottom() const {
  return std::all_of(c_.begin(), c_.end(), [](Time v) { return v == 0; });
}

VectorClock join(const VectorClock& a, const VectorClock& b) {
  VectorClock out = a;
  out.join_with(b);
  return out;
}

bool leq(const VectorClock& a, const VectorClock& b) {
  check_width(a, b);
  for (ThreadId t = 0; t < a.width(); ++t)
    if (a[t] > b[t]) return false;
  return true;
}

VectorClock set(VectorClock c, ThreadId t, Time v) {
  c.set(t, v);
  return c;
}

VectorClock increment(VectorClock c, ThreadId t, Time k) {
  c.increment(t, k);
  return c;
}

std::string render(const VectorClock& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.width(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.values()[i]);
  }
  out += ']';
  return out;
}

}  // namespace racelab
