#ifndef RACELAB_OLIST_HPP
#define RACELAB_OLIST_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "racelab/clocks.hpp"

namespace racelab {

/// Timestamp stored as a move-to-front doubly linked list with one node per
/// thread. Every mutation moves the touched node to the head, so the entries
/// changed by the last d mutations are always within the first d nodes.
class OrderedList {
 public:
  using Entry = std::pair<ThreadId, Time>;

  OrderedList() = default;
  /// Bottom list; head-to-tail order is ascending thread id.
  explicit OrderedList(std::size_t width);
  /// List with an explicit head-first order; must name every thread once.
  static OrderedList from_entries(const std::vector<Entry>& head_first);

  std::size_t width() const { return nodes_.size(); }

  Time get(ThreadId t) const;
  void set(ThreadId t, Time v);
  void increment(ThreadId t, Time k = 1);

  /// First min(k, width) nodes, head first.
  std::vector<Entry> prefix(std::size_t k) const;

  /// Calls fn(tid, time) on the first min(k, width) nodes; returns the count.
  template <class Fn>
  std::size_t for_prefix(std::size_t k, Fn&& fn) const {
    std::size_t visited = 0;
    for (int i = head_; i >= 0 && visited < k; i = nodes_[i].next) {
      ++visited;
      ++steps_;
      fn(static_cast<ThreadId>(i), nodes_[i].time);
    }
    return visited;
  }

  VectorClock snapshot() const;

  /// Node visits performed so far by get/set/increment and prefix reads.
  std::size_t steps() const { return steps_; }

  /// Same values in the same order.
  bool operator==(const OrderedList& other) const { return prefix(width()) == other.prefix(other.width()); }

 private:
  struct Node {
    Time time = 0;
    int prev = -1;
    int next = -1;
  };

  void check(ThreadId t) const;
  void move_to_head(int i);

  std::vector<Node> nodes_;
  int head_ = -1;
  int tail_ = -1;
  mutable std::size_t steps_ = 0;
};

/// "(t1:6) -> (t2:20) -> ..." head first, thread ids shown 1-based.
std::string render(const OrderedList& list);

using ListView = std::shared_ptr<const OrderedList>;

/// A thread's list under single-writer copy-on-write. Publishing a view marks
/// the list shared; mutating a shared list is a contract violation until a
/// deep copy re-establishes exclusive ownership.
class OwnedList {
 public:
  OwnedList() : list_(std::make_shared<OrderedList>()) {}
  explicit OwnedList(std::size_t width) : list_(std::make_shared<OrderedList>(width)) {}
  explicit OwnedList(OrderedList list) : list_(std::make_shared<OrderedList>(std::move(list))) {}

  const OrderedList& list() const { return *list_; }
  bool shared() const { return shared_; }
  long use_count() const { return list_.use_count(); }

  /// Constant cost; the returned view and this handle refer to the same nodes.
  ListView shallow_copy();
  /// Linear cost; afterwards the handle owns a private, identical list.
  void deep_copy();

  /// Throw std::logic_error when the list is shared.
  void set(ThreadId t, Time v);
  void increment(ThreadId t, Time k = 1);

 private:
  OrderedList& mutable_list();

  std::shared_ptr<OrderedList> list_;
  bool shared_ = false;
};

}  // namespace racelab

#endif  // RACELAB_OLIST_HPP
