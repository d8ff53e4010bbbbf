#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "influx/graph.hpp"
#include "influx/stats.hpp"

namespace influx {

struct RunOptions {
  EpsDelta cfg{0.1, 0.001};
  std::uint64_t seed = 1;
  std::int64_t k = 50;      // top-k rank
  std::int64_t k_max = 50;  // IM seed-size cap
  IMMode mode = IMMode::practical;
  std::int64_t tau = 100;  // events between inserted IM queries
  bool summary = false;
  bool timings = false;  // adds wall-clock fields; off keeps reports
                         // byte-identical for a fixed seed
};

struct RunSummary {
  std::int64_t events = 0;
  std::int64_t queries = 0;
  std::int64_t added = 0;
  std::int64_t removed = 0;
  std::int64_t refreshed = 0;
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::uint64_t cost = 0;
};

// Builds a top-k tracker over g, replays the stream emitting one JSON record
// per event, then answers a single final query.
RunSummary run_topk(Graph g, const std::vector<UpdateEvent>& stream,
                    const RunOptions& opt, std::ostream& out);

// Builds an IM tracker and replays the stream, inserting a query every
// opt.tau events with k drawn uniformly from [1, k_max].
RunSummary run_im(Graph g, const std::vector<UpdateEvent>& stream,
                  const RunOptions& opt, std::ostream& out);

}  // namespace influx
