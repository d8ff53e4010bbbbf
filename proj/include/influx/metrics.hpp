#pragma once

#include <cstdint>
#include <vector>

#include "influx/graph.hpp"
#include "influx/rng.hpp"

namespace influx {

// |a ∩ b| / |a ∪ b| over the distinct elements; 1 when both are empty.
double jaccard(const std::vector<Vertex>& a, const std::vector<Vertex>& b);

// |found ∩ truth| / |truth|. truth must be nonempty.
double recall(const std::vector<Vertex>& found, const std::vector<Vertex>& truth);

// Worst relative shortfall of a returned vertex against the k-th best
// influence: max over found u with influence[u] < i_k of (i_k -
// influence[u]) / i_k, or 0 when every returned vertex clears i_k.
// Requires i_k > 0 and influence indexed by vertex id.
double max_error_rate(const std::vector<Vertex>& found,
                      const std::vector<double>& influence, double i_k);

// Influence estimate from an independent RR pool of pool_size fresh sets:
// n * D'(seeds) / pool_size.
double evaluate_seeds(const Graph& g, const std::vector<Vertex>& seeds,
                      std::int64_t pool_size, Rng& rng);

}  // namespace influx
