#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "influx/graph.hpp"

namespace influx {

// Order-statistic structure over vertex degrees. One bucket per distinct
// nonzero degree; buckets form a doubly-linked list in strictly decreasing
// degree order and each holds its vertices in an intrusive doubly-linked
// list (insertion order). Unit increase/decrease moves a vertex to the
// adjacent bucket with constant pointer work, and attached k-th-degree
// trackers follow with constant adjustments. Vertices at degree 0 are not
// stored.
class DegreeIndex {
 public:
  DegreeIndex() = default;

  // Registers a tracker for the k-th largest degree and returns its slot.
  // May scan buckets once at attach time; subsequent maintenance is O(1).
  int attach_kth_tracker(std::int64_t k);

  void increase(Vertex u);  // degree += 1; degree-0 vertices enter at 1
  void decrease(Vertex u);  // degree -= 1; hitting 0 leaves the structure

  // Greedy-copy helpers. Only legal on an index with no attached trackers.
  void set_degree(Vertex u, std::int64_t d);  // lower (or drop at d <= 0)
  void remove(Vertex u);

  std::int64_t degree(Vertex u) const;  // 0 when absent
  std::int64_t size() const { return size_; }
  std::int64_t max_degree() const;  // 0 when empty
  Vertex top_vertex() const;        // smallest id in the max-degree bucket

  // k-th largest degree; 0 while fewer than k vertices have nonzero degree.
  std::int64_t kth_value(int slot) const;

  // Vertices with degree >= t in nonincreasing degree order (bucket order
  // within a degree). Cost proportional to the output.
  std::vector<std::pair<Vertex, std::int64_t>> at_least(double t) const;

  // Detached copy restricted to degree > t; trackers are not copied.
  DegreeIndex snapshot_above(double t) const;

  // Pointer-operation counter; lets tests pin the O(1) mutation contract.
  std::uint64_t link_ops() const { return link_ops_; }

  // Full self-check (bucket ordering, counts, locator, trackers) against a
  // fresh scan. Throws InvariantError on any mismatch.
  void validate() const;

 private:
  static constexpr std::int32_t kNil = -1;
  static constexpr Vertex kNoVertex = 0xffffffffu;

  struct Node {
    std::int32_t bucket = kNil;
    Vertex prev = kNoVertex;
    Vertex next = kNoVertex;
  };
  struct Bucket {
    std::int64_t degree = 0;
    std::int64_t num = 0;
    std::int32_t up = kNil;    // toward higher degree
    std::int32_t down = kNil;  // toward lower degree
    Vertex head = kNoVertex;
    Vertex tail = kNoVertex;
  };
  struct Tracker {
    std::int64_t k = 0;
    std::int32_t bucket = kNil;  // kNil while fewer than k vertices present
    std::int64_t b = 0;          // k - b vertices lie strictly above bucket
  };

  std::int32_t new_bucket(std::int64_t degree, std::int32_t up, std::int32_t down);
  void free_bucket(std::int32_t b);
  void push_tail(std::int32_t b, Vertex u);
  void unlink(Vertex u);

  std::vector<Bucket> buckets_;
  std::vector<std::int32_t> free_;
  std::int32_t top_ = kNil;
  std::int32_t bottom_ = kNil;
  std::int64_t size_ = 0;
  std::unordered_map<Vertex, Node> nodes_;
  std::vector<Tracker> trackers_;
  std::uint64_t link_ops_ = 0;
};

}  // namespace influx
