#pragma once

#include <cstdint>
#include <vector>

#include "influx/graph.hpp"
#include "influx/rng.hpp"
#include "influx/sketch.hpp"
#include "influx/stats.hpp"

namespace influx {

// Output of one greedy max-coverage run over an RR pool.
struct GreedyResult {
  std::vector<Vertex> seeds;     // selection order
  std::int64_t coverage = 0;     // D(seeds): sets covered
  std::int64_t q = 0;            // first iteration whose realized marginal
                                 // fell to or below the threshold (or hit
                                 // pool exhaustion); k+1 when neither
                                 // happened, in which case the filtered run
                                 // equals the full greedy exactly
  double used_threshold = -1.0;  // T_D the run was filtered with
};

// Filter threshold T_D = min{D*/(k-1), D*-1}; the second arm alone for k=1
// and -1 (no filtering) when D* < 2.
double degree_threshold(std::int64_t d_star, std::int64_t k);

// Eager greedy: full index copy, extract the max-degree vertex (ties to the
// smallest id), cover its sets, decrement every member of a newly covered
// set. coverage >= (1-1/e) * optimum over size-k seed sets.
GreedyResult greedy_full(const RRCollection& c, std::int64_t k);

// Lazy greedy over the vertices with degree > t_d only. Guarantees
// D(S') >= D(S_greedy) - (k-q+1)*t_d; with t_d = degree_threshold and
// D* >= 2 this is at least half the greedy coverage. t_d = -1 reproduces
// greedy_full exactly.
GreedyResult new_greedy(const RRCollection& c, std::int64_t k, double t_d);

struct IMQueryResult {
  GreedyResult greedy;
  double estimate = 0.0;  // n * coverage / M
  bool fallback = false;  // filtered run returned q <= k; reran unfiltered
};

// Influence-maximization tracker. Practical mode keeps a single pool sized
// so its maximum degree equals the (halved) practical target. Theoretical
// mode sizes r1 the same way against the full target and keeps
// |r2| = ceil(m2_ratio * |r1|); queries then run on r2.
class IMTracker {
 public:
  IMTracker(Graph g, IMMode mode, EpsDelta cfg, std::int64_t k_max,
            std::uint64_t seed);

  IMTracker(const IMTracker&) = delete;
  IMTracker& operator=(const IMTracker&) = delete;

  ProcessStats process(const UpdateEvent& e);

  // Filtered lazy greedy with automatic unfiltered rerun when the filter
  // cost the approximation guarantee (q <= k). 1 <= k <= k_max.
  IMQueryResult query_im(std::int64_t k) const;

  IMMode mode() const { return mode_; }
  const EpsDelta& cfg() const { return cfg_; }
  std::int64_t k_max() const { return k_max_; }
  const SizeTargets& targets() const { return targets_; }
  std::int64_t d_star() const { return r1_.kth_value(dstar_); }
  std::int64_t m1() const { return r1_.size(); }
  std::int64_t m2() const { return r2_.size(); }
  const Graph& graph() const { return graph_; }
  const RRCollection& r1() const { return r1_; }
  const RRCollection& r2() const { return r2_; }
  // Pool queries run on: r2 in theoretical mode, r1 otherwise.
  const RRCollection& query_pool() const;

 private:
  void rebalance(ProcessStats& st);
  void sync_r2(ProcessStats& st);

  Graph graph_;
  IMMode mode_;
  EpsDelta cfg_;
  std::int64_t k_max_;
  SizeTargets targets_;
  Rng rng1_;
  Rng rng2_;
  RRCollection r1_;
  RRCollection r2_;  // empty in practical mode
  int dstar_;
};

}  // namespace influx
