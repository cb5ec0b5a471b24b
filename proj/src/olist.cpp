#include "racelab/olist.hpp"

#include <stdexcept>

namespace racelab {

OrderedList::OrderedList(std::size_t width) : nodes_(width) {
  for (std::size_t i = 0; i < width; ++i) {
    nodes_[i].prev = static_cast<int>(i) - 1;
    nodes_[i].next = i + 1 < width ? static_cast<int>(i) + 1 : -1;
  }
  if (width > 0) {
    head_ = 0;
    tail_ = static_cast<int>(width) - 1;
  }
}

OrderedList OrderedList::from_entries(const std::vector<Entry>& head_first) {
  const std::size_t width = head_first.size();
  OrderedList list;
  list.nodes_.resize(width);
  std::vector<bool> seen(width, false);
  int prev = -1;
  for (const auto& [tid, time] : head_first) {
    if (tid >= width || seen[tid]) throw std::invalid_argument("entries must name every thread exactly once");
    seen[tid] = true;
    const int i = static_cast<int>(tid);
    list.nodes_[i] = Node{time, prev, -1};
    if (prev >= 0) list.nodes_[prev].next = i;
    else list.head_ = i;
    prev = i;
  }
  list.tail_ = prev;
  return list;
}

void OrderedList::check(ThreadId t) const {
  if (t >= nodes_.size())
    throw std::out_of_range("thread " + std::to_string(t) + " outside list of width " + std::to_string(nodes_.size()));
}

Time OrderedList::get(ThreadId t) const {
  check(t);
  ++steps_;
  return nodes_[t].time;
}

void OrderedList::move_to_head(int i) {
  if (i == head_) return;
  Node& n = nodes_[i];
  nodes_[n.prev].next = n.next;
  if (n.next >= 0) nodes_[n.next].prev = n.prev;
  else tail_ = n.prev;
  n.prev = -1;
  n.next = head_;
  nodes_[head_].prev = i;
  head_ = i;
}

void OrderedList::set(ThreadId t, Time v) {
  check(t);
  ++steps_;
  nodes_[t].time = v;
  move_to_head(static_cast<int>(t));
}

void OrderedList::increment(ThreadId t, Time k) {
  check(t);
  ++steps_;
  nodes_[t].time += k;
  move_to_head(static_cast<int>(t));
}

std::vector<OrderedList::Entry> OrderedList::prefix(std::size_t k) const {
  std::vector<Entry> out;
  for (int i = head_; i >= 0 && out.size() < k; i = nodes_[i].next) out.emplace_back(static_cast<ThreadId>(i), nodes_[i].time);
  return out;
}

VectorClock OrderedList::snapshot() const {
  VectorClock c(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) c.set(static_cast<ThreadId>(i), nodes_[i].time);
  return c;
}

std::string render(const OrderedList& list) {
  std::string out;
  for (const auto& [tid, time] : list.prefix(list.width())) {
    if (!out.empty()) out += " -> ";
    out += "(t" + std::to_string(tid + 1) + ":" + std::to_string(time) + ")";
  }
  return out;
}

ListView OwnedList::shallow_copy() {
  shared_ = true;
  return list_;
}

void OwnedList::deep_copy() {
  list_ = std::make_shared<OrderedList>(*list_);
  shared_ = false;
}

OrderedList& OwnedList::mutable_list() {
  if (shared_) throw std::logic_error("mutation of a shared ordered list");
  return *list_;
}

void OwnedList::set(ThreadId t, Time v) { mutable_list().set(t, v); }

void OwnedList::increment(ThreadId t, Time k) { mutable_list().increment(t, k); }

}  // namespace racelab
