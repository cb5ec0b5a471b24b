#ifndef RACELAB_CLOCKS_HPP
#define RACELAB_CLOCKS_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "racelab/trace.hpp"

namespace racelab {

using Time = std::uint64_t;

/// Dense per-thread timestamp. The all-zero clock is bottom.
class VectorClock {
 public:
  VectorClock() = default;
  explicit VectorClock(std::size_t width) : c_(width, 0) {}
  VectorClock(std::initializer_list<Time> values) : c_(values) {}

  std::size_t width() const { return c_.size(); }
  Time operator[](ThreadId t) const { return c_[t]; }
  Time get(ThreadId t) const;

  /// Throws std::out_of_range when t >= width().
  void set(ThreadId t, Time v);
  void increment(ThreadId t, Time k = 1);

  /// In-place pointwise max; returns the number of components that changed.
  std::size_t join_with(const VectorClock& other);

  bool is_bottom() const;
  const std::vector<Time>& values() const { return c_; }

  bool operator==(const VectorClock&) const = default;

 private:
  std::vector<Time> c_;
};

/// Both throw std::invalid_argument on width mismatch.
VectorClock join(const VectorClock& a, const VectorClock& b);
bool leq(const VectorClock& a, const VectorClock& b);

VectorClock set(VectorClock c, ThreadId t, Time v);
VectorClock increment(VectorClock c, ThreadId t, Time k = 1);

/// "[a,b,...]"
std::string render(const VectorClock& c);

}  // namespace racelab

#endif  // RACELAB_CLOCKS_HPP
