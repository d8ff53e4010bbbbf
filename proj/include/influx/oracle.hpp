#pragma once

#include <cstdint>
#include <vector>

#include "influx/graph.hpp"

namespace influx {

inline constexpr std::uint64_t kDefaultMaxConfigs = std::uint64_t{1} << 22;

// Exact influence by live-edge enumeration. LT: one choice per vertex (an
// in-edge or the stop mass), config count = prod(in-degree + 1). IC: one coin
// per edge, config count = 2^m. Throws BudgetError when the count exceeds
// max_configs. Seeds must be nonempty, in range, duplicate-free.
double exact_influence(const Graph& g, const std::vector<Vertex>& seeds,
                       std::uint64_t max_configs = kDefaultMaxConfigs);

struct McResult {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t sims = 0;
};

// Forward Monte Carlo influence. LT uses threshold dynamics (random vertex
// thresholds against accumulated in-neighbor mass), deliberately a different
// mechanism than the live-edge enumeration so the two cross-validate.
// Deterministic for a given seed regardless of thread count.
McResult mc_influence(const Graph& g, const std::vector<Vertex>& seeds,
                      std::uint64_t sims, std::uint64_t seed);

// Best seed set of size k by exhaustive search over all C(n,k) subsets,
// each evaluated exactly. Ties resolve to the lexicographically smallest
// subset. Budget: C(n,k) * configs <= max_configs.
std::vector<Vertex> exhaustive_optimal_seed(
    const Graph& g, std::int64_t k,
    std::uint64_t max_configs = kDefaultMaxConfigs);

// P(u in R) for an RR set with uniform root: exact_influence({u}) / n.
double rr_membership_prob(const Graph& g, Vertex u,
                          std::uint64_t max_configs = kDefaultMaxConfigs);

}  // namespace influx
