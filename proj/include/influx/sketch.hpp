#pragma once

#include <cstdint>
#include <vector>

#include "influx/graph.hpp"
#include "influx/rank.hpp"
#include "influx/rng.hpp"

namespace influx {

// One reverse-reachable sample. `members` is in traversal order with the
// root first; under LT it is the reverse walk path itself.
struct RRSet {
  std::uint32_t id = 0;
  Vertex root = 0;
  std::vector<Vertex> members;
  std::uint64_t cost = 0;  // vertices visited + edges examined
};

// Reusable sampler bound to a graph. Keeps epoch-stamped scratch so repeated
// generation does not allocate. LT: reverse random walk, one in-edge chosen
// with probability w_uv / W_v, stop mass w_v / W_v, walk ends on revisit.
// IC: reverse BFS, one coin per in-edge in adjacency order.
class RRSampler {
 public:
  explicit RRSampler(const Graph& g);
  RRSet generate(Vertex root, Rng& rng);

  // IC draw that treats edge (dead_u, dead_v) as having weight zero. Used by
  // the decrease refresh coupling; under LT the edge arguments are ignored.
  RRSet generate_without_edge(Vertex root, Vertex dead_u, Vertex dead_v,
                              Rng& rng);

  // LT refresh primitive: continues the walk from members.back() with every
  // current member stamped as visited. Appends to r.members and returns the
  // extra work (edges examined + vertices added).
  std::uint64_t resume_walk(RRSet& r, Rng& rng);

  // IC refresh primitive: adds `from` (must not be a member) and runs the
  // reverse BFS outward from it, flipping coins only for in-edges of newly
  // added vertices. Returns the extra work.
  std::uint64_t expand_ic(RRSet& r, Vertex from, Rng& rng);

 private:
  void new_epoch();
  std::uint64_t walk_from(RRSet& r, Rng& rng);
  std::uint64_t run_ic(RRSet& r, Rng& rng, Vertex dead_u, Vertex dead_v);

  const Graph* g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> queue_;
};

// One-shot convenience form.
RRSet generate_rr(const Graph& g, Vertex root, Rng& rng);

// Pool maintenance counters reported by the trackers.
struct ProcessStats {
  std::int64_t refreshed_r1 = 0;
  std::int64_t refreshed_r2 = 0;
  std::int64_t added = 0;
  std::int64_t removed = 0;
};

// A pool of RR sets with an inverted index (vertex -> containing slot ids)
// and a degree index over D(u) = |inv(u)|. Slot ids are positions in the
// pool and stay stable across refreshes; removal always drops the newest.
class RRCollection {
 public:
  explicit RRCollection(const Graph& g);

  const Graph& graph() const { return *g_; }
  std::int64_t size() const { return static_cast<std::int64_t>(sets_.size()); }
  std::uint64_t total_cost() const { return total_cost_; }
  const RRSet& set(std::uint32_t id) const { return sets_[id]; }
  const std::vector<std::uint32_t>& sets_containing(Vertex u) const;
  const DegreeIndex& index() const { return index_; }

  int attach_kth_tracker(std::int64_t k) { return index_.attach_kth_tracker(k); }
  std::int64_t kth_value(int slot) const { return index_.kth_value(slot); }

  // Appends a set rooted at a uniform vertex (or a fixed root) and returns
  // its slot id.
  std::uint32_t append_rr(Rng& rng);
  std::uint32_t append_rr(Vertex root, Rng& rng);

  // Appends a prebuilt set (benchmark/fuzz pools). `members` must be
  // nonempty, duplicate-free, in-range; members[0] becomes the root.
  std::uint32_t append_raw(std::vector<Vertex> members, std::uint64_t cost = 0);

  void remove_last();

  // Restores every slot's marginal to the fresh-sample distribution on the
  // updated graph. Precondition: e has already been applied to the graph.
  // Touches only slots containing e.v, in ascending slot order; slots and
  // roots stay stable. LT keeps each affected walk's prefix up to e.v and
  // redraws the suffix. IC increases splice e.u in with the coupling coin
  // delta / (1 - w_old); IC decreases keep a set with probability
  // w_new / w_old and otherwise redraw it from its root on the deleted-edge
  // measure, conditioned on still containing e.v. Returns the number of
  // slots containing e.v.
  std::int64_t refresh_affected(const UpdateEvent& e, Rng& rng);

  // D(S): number of sets hit by any seed.
  std::int64_t degree_of_set(const std::vector<Vertex>& seeds) const;

  // n * D(S) / M.
  double estimate_influence(const std::vector<Vertex>& seeds) const;

  // Full coherence check between sets, inverted index, degree index, and
  // cost accounting. Throws InvariantError on any mismatch.
  void validate() const;

 private:
  void link_members(std::uint32_t id);
  void unlink_members(std::uint32_t id);

  const Graph* g_;
  RRSampler sampler_;
  std::vector<RRSet> sets_;
  std::vector<std::vector<std::uint32_t>> inv_;
  DegreeIndex index_;
  std::uint64_t total_cost_ = 0;
  mutable std::vector<std::uint32_t> mark_;
  mutable std::uint32_t mark_epoch_ = 0;
};

}  // namespace influx
