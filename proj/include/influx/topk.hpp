#pragma once

#include <cstdint>
#include <vector>

#include "influx/graph.hpp"
#include "influx/rng.hpp"
#include "influx/sketch.hpp"
#include "influx/stats.hpp"

namespace influx {

// Tracker for the k most influential vertices. Two RR pools are kept the
// same size; r1 drives sizing (grow/shrink until its k-th largest degree
// equals the target ceil(Upsilon_1(eps, delta/n))) and r2 supplies the
// estimates, so the sample used for ranking is not the one conditioned on
// by the stopping rule.
class TopKTracker {
 public:
  TopKTracker(Graph g, std::int64_t k, EpsDelta cfg, std::uint64_t seed);

  TopKTracker(const TopKTracker&) = delete;
  TopKTracker& operator=(const TopKTracker&) = delete;

  // Applies one stream event and restores the sizing invariants.
  ProcessStats process(const UpdateEvent& e);

  struct Item {
    Vertex v;
    std::int64_t d2;  // degree in r2
    double estimate;  // n * d2 / M2
  };

  // All vertices with D2(u) >= threshold(), by descending degree then
  // ascending id. Read-only; safe between process calls.
  std::vector<Item> query() const;

  // T = (1-eps)/(1+eps) * target, compared against integer degrees as a real.
  double threshold() const;

  std::int64_t k() const { return k_; }
  const EpsDelta& cfg() const { return cfg_; }
  std::int64_t target() const { return target_; }
  std::int64_t d1k() const { return r1_.kth_value(kth_); }
  std::int64_t m1() const { return r1_.size(); }
  std::int64_t m2() const { return r2_.size(); }
  const Graph& graph() const { return graph_; }
  const RRCollection& r1() const { return r1_; }
  const RRCollection& r2() const { return r2_; }

 private:
  void rebalance(ProcessStats& st);

  Graph graph_;
  std::int64_t k_;
  EpsDelta cfg_;
  std::int64_t target_;
  Rng rng1_;
  Rng rng2_;
  RRCollection r1_;
  RRCollection r2_;
  int kth_;
};

}  // namespace influx
