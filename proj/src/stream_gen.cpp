#include "influx/stream_gen.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "influx/errors.hpp"
#include "influx/rng.hpp"

namespace influx {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

double nonzero_q30(Rng& rng) {
  double d = 0.0;
  while (d == 0.0) d = rng.uniform_q30();
  return d;
}

}  // namespace

void require_stream_spec(const StreamSpec& spec) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(spec.e1) || !in_unit(spec.e2) || !in_unit(spec.e3) ||
      std::fabs(spec.e1 + spec.e2 + spec.e3 - 1.0) > 1e-9) {
    throw DataError("stream fractions must lie in [0,1] and sum to 1");
  }
  if (spec.tau < 1) throw DataError("tau must be >= 1");
  if (spec.k_max < 1) throw DataError("k_max must be >= 1");
}

GeneratedStream generate_stream(const Graph& topology, const StreamSpec& spec) {
  require_stream_spec(spec);
  const auto n = topology.n();
  const Model model = topology.model();

  // Canonical full graph; edge order mirrors the input adjacency.
  std::vector<std::int64_t> indeg(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < static_cast<std::uint64_t>(n); ++v) {
    indeg[v] = static_cast<std::int64_t>(topology.in_edges(v).size());
  }
  auto canonical_w = [&](Vertex v) {
    return model == Model::LT ? 1.0 : 1.0 / static_cast<double>(indeg[v]);
  };
  Graph full(n, model);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < static_cast<std::uint64_t>(n); ++v) {
    if (model == Model::LT) full.set_self_weight(v, topology.self_weight(v));
    for (const InEdge& e : topology.in_edges(v)) {
      full.add_edge(e.u, v, canonical_w(v));
      edges.emplace_back(e.u, v);
    }
  }
  const auto m = static_cast<std::int64_t>(edges.size());

  Rng partition_rng = Rng(spec.seed).fork(1);
  shuffle(edges, partition_rng);
  std::int64_t n3 = std::llround(spec.e3 * static_cast<double>(m));
  std::int64_t n2 = std::llround(spec.e2 * static_cast<double>(m));
  if (n2 + n3 > m) n2 = m - n3;

  std::unordered_set<std::uint64_t> inserted;  // e3: withheld from the base
  for (std::int64_t i = 0; i < n3; ++i) {
    inserted.insert(edge_key(edges[i].first, edges[i].second));
  }

  Graph base(n, model);
  for (Vertex v = 0; v < static_cast<std::uint64_t>(n); ++v) {
    if (model == Model::LT) base.set_self_weight(v, topology.self_weight(v));
    for (const InEdge& e : topology.in_edges(v)) {
      if (!inserted.count(edge_key(e.u, v))) base.add_edge(e.u, v, canonical_w(v));
    }
  }

  // Stream events; churn pairs share a pair id for the post-shuffle ordering
  // fix (a decrease must land before its increase or an in-degree-1 IC edge
  // would pass through w > 1).
  std::vector<UpdateEvent> events;
  std::vector<std::int64_t> pair_of;
  Rng delta_rng = Rng(spec.seed).fork(2);
  for (std::int64_t i = 0; i < n3; ++i) {
    auto [u, v] = edges[i];
    events.push_back({u, v, true, canonical_w(v), 0});
    pair_of.push_back(-1);
  }
  for (std::int64_t i = n3; i < n3 + n2; ++i) {
    auto [u, v] = edges[i];
    double delta = nonzero_q30(delta_rng) * canonical_w(v);
    events.push_back({u, v, false, delta, 0});
    pair_of.push_back(i);
    events.push_back({u, v, true, delta, 0});
    pair_of.push_back(i);
  }

  Rng shuffle_rng = Rng(spec.seed).fork(3);
  for (std::size_t i = events.size(); i > 1; --i) {
    std::uint64_t j = shuffle_rng.below(i);
    std::swap(events[i - 1], events[j]);
    std::swap(pair_of[i - 1], pair_of[j]);
  }
  std::unordered_map<std::int64_t, std::size_t> first_pos;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (pair_of[i] < 0) continue;
    auto [it, fresh] = first_pos.emplace(pair_of[i], i);
    if (!fresh && events[it->second].increase) {
      std::swap(events[it->second], events[i]);
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    events[i].t = static_cast<std::int64_t>(i) + 1;
  }

  // Replay closure: base + events must land exactly on the full snapshot.
  Graph replay = base;
  for (const UpdateEvent& e : events) replay.apply_update(e);
  const double tol = model == Model::LT ? 0.0 : 1e-12;
  for (auto [u, v] : edges) {
    double got = replay.edge_weight(u, v);
    double want = full.edge_weight(u, v);
    if (std::fabs(got - want) > tol) {
      throw InvariantError("replay drift on edge " + std::to_string(u) + "->" +
                           std::to_string(v) + ": " + std::to_string(got) +
                           " vs " + std::to_string(want));
    }
  }

  return {std::move(full), std::move(base), std::move(events)};
}

}  // namespace influx
