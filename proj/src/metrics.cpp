#include "influx/metrics.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "influx/sketch.hpp"

namespace influx {

double jaccard(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::unordered_set<Vertex> sa(a.begin(), a.end());
  std::unordered_set<Vertex> sb(b.begin(), b.end());
  std::size_t common = 0;
  for (Vertex v : sa) common += sb.count(v);
  std::size_t united = sa.size() + sb.size() - common;
  if (united == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(united);
}

double recall(const std::vector<Vertex>& found,
              const std::vector<Vertex>& truth) {
  if (truth.empty()) throw std::invalid_argument("recall needs nonempty truth");
  std::unordered_set<Vertex> st(truth.begin(), truth.end());
  std::unordered_set<Vertex> sf(found.begin(), found.end());
  std::size_t hit = 0;
  for (Vertex v : st) hit += sf.count(v);
  return static_cast<double>(hit) / static_cast<double>(st.size());
}

double max_error_rate(const std::vector<Vertex>& found,
                      const std::vector<double>& influence, double i_k) {
  if (!(i_k > 0.0)) throw std::invalid_argument("max_error_rate needs i_k > 0");
  double worst = 0.0;
  for (Vertex v : found) {
    if (v >= influence.size()) {
      throw std::invalid_argument("no influence entry for vertex " +
                                  std::to_string(v));
    }
    if (influence[v] < i_k) {
      worst = std::max(worst, (i_k - influence[v]) / i_k);
    }
  }
  return worst;
}

double evaluate_seeds(const Graph& g, const std::vector<Vertex>& seeds,
                      std::int64_t pool_size, Rng& rng) {
  if (pool_size < 1) throw std::invalid_argument("pool_size must be >= 1");
  RRCollection pool(g);
  for (std::int64_t i = 0; i < pool_size; ++i) pool.append_rr(rng);
  return pool.estimate_influence(seeds);
}

}  // namespace influx
