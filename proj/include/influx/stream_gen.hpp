#pragma once

#include <cstdint>
#include <vector>

#include "influx/graph.hpp"

namespace influx {

// Update-stream synthesis protocol. Edges of the input topology are split
// into three groups: e1 kept as-is in the base snapshot, e2 kept but churned
// (one decrease then one increase of the same size), e3 withheld and
// inserted by the stream. Weights are canonicalized first: every LT weight
// becomes 1, every IC weight 1/in-degree (measured on the full topology).
struct StreamSpec {
  double e1 = 0.85;
  double e2 = 0.05;
  double e3 = 0.10;
  std::int64_t tau = 100;   // updates between inserted IM queries (driver)
  std::int64_t k_max = 50;  // seed-size cap for inserted queries (driver)
  std::uint64_t seed = 1;
};

// Throws DataError unless fractions are in [0,1] and sum to 1 within 1e-9
// and tau >= 1 and k_max >= 1.
void require_stream_spec(const StreamSpec& spec);

struct GeneratedStream {
  Graph full;   // canonical weights; replay target
  Graph base;   // e1 + e2 edges at canonical weights
  std::vector<UpdateEvent> events;
};

// Events are shuffled, then each churn pair is reordered decrease-first so
// IC weights can never overshoot 1 mid-stream; timestamps are the final
// 1-based positions. Replay of base+events is verified to reproduce `full`
// exactly under LT (deltas are dyadic) and within 1e-12 under IC.
GeneratedStream generate_stream(const Graph& topology, const StreamSpec& spec);

}  // namespace influx
