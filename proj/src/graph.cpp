#include "influx/graph.hpp"

#include <cmath>
#include <string>

#include "influx/errors.hpp"

namespace influx {

namespace {

// Slack for float-noise at the boundaries of [0, 1] weight checks.
double weight_tol(double reference) {
  return 1e-12 * std::max(1.0, std::fabs(reference));
}

}  // namespace

Graph::Graph(std::int64_t n, Model model) : n_(n), model_(model) {
  if (n < 1) throw DataError("graph needs at least one vertex");
  in_.resize(static_cast<std::size_t>(n));
  self_w_.assign(static_cast<std::size_t>(n), 1.0);
  total_in_.assign(static_cast<std::size_t>(n), 0.0);
  if (model_ == Model::LT) {
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
      total_in_[v] = self_w_[v];
    }
  }
}

void Graph::bounds_check(Vertex u, Vertex v) const {
  if (u >= static_cast<std::uint64_t>(n_) || v >= static_cast<std::uint64_t>(n_)) {
    throw DataError("vertex id out of range: (" + std::to_string(u) + "," +
                    std::to_string(v) + ") with n=" + std::to_string(n_));
  }
  if (u == v) {
    throw DataError("self-loop (" + std::to_string(u) + "," +
                    std::to_string(v) + ") rejected");
  }
}

void Graph::set_self_weight(Vertex v, double w) {
  if (v >= static_cast<std::uint64_t>(n_)) {
    throw DataError("vertex id out of range: " + std::to_string(v));
  }
  if (!(w >= 0.0)) throw DataError("self-weight must be >= 0");
  if (model_ == Model::LT) total_in_[v] += w - self_w_[v];
  self_w_[v] = w;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  return edge_pos_.find(key(u, v)) != edge_pos_.end();
}

double Graph::edge_weight(Vertex u, Vertex v) const {
  auto it = edge_pos_.find(key(u, v));
  if (it == edge_pos_.end()) return 0.0;
  return in_[v][it->second].w;
}

void Graph::add_edge(Vertex u, Vertex v, double w) {
  bounds_check(u, v);
  if (!(w >= 0.0)) throw DataError("edge weight must be >= 0");
  if (model_ == Model::IC && w > 1.0 + weight_tol(1.0)) {
    throw DataError("IC edge weight above 1: " + std::to_string(w));
  }
  if (has_edge(u, v)) {
    throw DataError("duplicate edge (" + std::to_string(u) + "," +
                    std::to_string(v) + ")");
  }
  if (model_ == Model::IC) w = std::min(w, 1.0);
  edge_pos_.emplace(key(u, v), static_cast<std::uint32_t>(in_[v].size()));
  in_[v].push_back({u, w});
  if (model_ == Model::LT) total_in_[v] += w;
  ++m_;
}

Vertex Graph::apply_update(const UpdateEvent& e) {
  bounds_check(e.u, e.v);
  if (!(e.delta > 0.0)) {
    throw DataError("update delta must be > 0, got " + std::to_string(e.delta));
  }
  auto it = edge_pos_.find(key(e.u, e.v));
  if (it == edge_pos_.end()) {
    if (!e.increase) {
      throw DataError("decrease on absent edge (" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + ")");
    }
    add_edge(e.u, e.v, e.delta);
    return e.v;
  }
  double& w = in_[e.v][it->second].w;
  double old_w = w;
  double new_w;
  if (e.increase) {
    new_w = old_w + e.delta;
    if (model_ == Model::IC) {
      if (new_w > 1.0 + weight_tol(new_w)) {
        throw DataError("IC weight would exceed 1 on (" + std::to_string(e.u) +
                        "," + std::to_string(e.v) + "): " + std::to_string(new_w));
      }
      new_w = std::min(new_w, 1.0);
    }
  } else {
    new_w = old_w - e.delta;
    if (new_w < -weight_tol(old_w)) {
      throw DataError("decrease below 0 on (" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + "): " + std::to_string(new_w));
    }
    new_w = std::max(new_w, 0.0);
  }
  w = new_w;
  if (model_ == Model::LT) total_in_[e.v] += new_w - old_w;
  return e.v;
}

void Graph::check_totals() const {
  if (model_ != Model::LT) return;
  for (std::size_t v = 0; v < in_.size(); ++v) {
    double sum = self_w_[v];
    for (const InEdge& in : in_[v]) sum += in.w;
    double cached = total_in_[v];
    double scale = std::max({1.0, std::fabs(sum), std::fabs(cached)});
    if (std::fabs(sum - cached) > 1e-9 * scale) {
      throw InvariantError("LT total cache out of sync at vertex " +
                           std::to_string(v) + ": cached=" +
                           std::to_string(cached) + " actual=" +
                           std::to_string(sum));
    }
  }
}

ChoiceDistribution lt_choice_distribution(const Graph& g, Vertex v) {
  if (g.model() != Model::LT) {
    throw std::domain_error("lt_choice_distribution needs an LT graph");
  }
  if (v >= static_cast<std::uint64_t>(g.n())) {
    throw DataError("vertex id out of range: " + std::to_string(v));
  }
  ChoiceDistribution d;
  double total = g.total_in(v);
  if (!(total > 0.0)) {
    d.stop = 1.0;
    return d;
  }
  d.edges.reserve(g.in_edges(v).size());
  for (const InEdge& e : g.in_edges(v)) {
    d.edges.emplace_back(e.u, e.w / total);
  }
  d.stop = g.self_weight(v) / total;
  return d;
}

}  // namespace influx
