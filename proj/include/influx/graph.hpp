#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace influx {

using Vertex = std::uint32_t;

enum class Model { LT, IC };

struct InEdge {
  Vertex u;  // source
  double w;  // weight (LT: arbitrary >= 0; IC: probability in [0,1])
};

struct UpdateEvent {
  Vertex u = 0;
  Vertex v = 0;
  bool increase = true;   // '+' adds delta to w_uv, '-' subtracts
  double delta = 0.0;     // > 0
  std::int64_t t = 0;     // timestamp (sequence position)
};

// Directed graph under incremental edge-weight updates. Vertex ids are dense
// and 0-based. In-edges keep insertion order; IC coin flips and LT choice
// scans follow that order, so it is part of the deterministic contract.
class Graph {
 public:
  Graph(std::int64_t n, Model model);

  std::int64_t n() const { return n_; }
  Model model() const { return model_; }
  std::int64_t edge_count() const { return m_; }

  const std::vector<InEdge>& in_edges(Vertex v) const { return in_[v]; }

  // LT vertex self-weight w_v (stop mass). Unused under IC.
  double self_weight(Vertex v) const { return self_w_[v]; }
  void set_self_weight(Vertex v, double w);

  // LT cached W_v = w_v + sum of in-edge weights, maintained incrementally.
  double total_in(Vertex v) const { return total_in_[v]; }

  bool has_edge(Vertex u, Vertex v) const;
  double edge_weight(Vertex u, Vertex v) const;  // 0 when absent

  // Inserts a new edge (must not exist). Used by snapshot loading.
  void add_edge(Vertex u, Vertex v, double w);

  // Applies one stream event atomically; returns the affected vertex v.
  // Increase on an absent edge creates it. Decrease to exactly 0 keeps the
  // edge. Throws DataError on range errors, self-loops, IC weights leaving
  // [0,1], or decreases below 0; the graph is untouched in that case.
  Vertex apply_update(const UpdateEvent& e);

  // Recomputes every LT total from scratch and compares against the cache
  // (1e-9 relative). Throws InvariantError on mismatch.
  void check_totals() const;

 private:
  void bounds_check(Vertex u, Vertex v) const;
  static std::uint64_t key(Vertex u, Vertex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::int64_t n_;
  Model model_;
  std::int64_t m_ = 0;
  std::vector<std::vector<InEdge>> in_;
  std::vector<double> self_w_;    // LT only; defaults to 1.0
  std::vector<double> total_in_;  // LT only
  std::unordered_map<std::uint64_t, std::uint32_t> edge_pos_;
};

// LT sampling view of one vertex: in-edge probabilities w_uv / W_v in
// adjacency order plus the stop probability w_v / W_v. W_v = 0 degenerates
// to stop = 1 with an empty edge list.
struct ChoiceDistribution {
  std::vector<std::pair<Vertex, double>> edges;
  double stop = 1.0;
};

ChoiceDistribution lt_choice_distribution(const Graph& g, Vertex v);

}  // namespace influx
