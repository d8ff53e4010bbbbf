#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "influx/graph.hpp"
#include "influx/rng.hpp"

namespace testsup {

// Three vertices, edges 1->0 and 2->0. Under LT with unit weights vertex 0
// picks each in-edge or stops with probability 1/3 each, so I({1}) = 4/3,
// I({0}) = 1, I({1,2}) = 8/3.
inline influx::Graph g3_lt() {
  influx::Graph g(3, influx::Model::LT);
  g.add_edge(1, 0, 1.0);
  g.add_edge(2, 0, 1.0);
  return g;
}

// Same topology with coin probability 0.5: I({1}) = 1.5, I({1,2}) = 2.75.
inline influx::Graph g3_ic() {
  influx::Graph g(3, influx::Model::IC);
  g.add_edge(1, 0, 0.5);
  g.add_edge(2, 0, 0.5);
  return g;
}

// Hub 0 pointing at `leaves` leaves, unit weights: I(0) = 1 + leaves/2,
// every leaf has influence 1.
inline influx::Graph star_lt(std::int64_t leaves) {
  influx::Graph g(leaves + 1, influx::Model::LT);
  for (std::int64_t i = 1; i <= leaves; ++i) {
    g.add_edge(0, static_cast<influx::Vertex>(i), 1.0);
  }
  return g;
}

// Skewed random digraph: source ids drawn as floor(n * r^3) so low ids hub.
// Unit LT weights (the stream generator's canonical form).
inline influx::Graph power_law_lt(std::int64_t n, std::int64_t m,
                                  std::uint64_t seed) {
  influx::Graph g(n, influx::Model::LT);
  influx::Rng rng(seed);
  std::int64_t added = 0, attempts = 0;
  while (added < m && attempts < 50 * m) {
    ++attempts;
    double r = rng.uniform();
    auto u = static_cast<influx::Vertex>(
        static_cast<std::int64_t>(r * r * r * static_cast<double>(n)));
    auto v = static_cast<influx::Vertex>(rng.below(n));
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v, 1.0);
    ++added;
  }
  return g;
}

// Small graph with bounded in-degree, suitable for the exact oracle
// (config count <= (max_indeg+1)^n under LT).
inline influx::Graph random_small_graph(std::int64_t n, std::int64_t max_indeg,
                                        influx::Model model, influx::Rng& rng) {
  influx::Graph g(n, model);
  for (influx::Vertex v = 0; v < static_cast<std::uint64_t>(n); ++v) {
    auto indeg = static_cast<std::int64_t>(rng.below(max_indeg + 1));
    for (std::int64_t i = 0; i < indeg; ++i) {
      auto u = static_cast<influx::Vertex>(rng.below(n));
      if (u == v || g.has_edge(u, v)) continue;
      double w = model == influx::Model::LT ? 0.25 + rng.uniform()
                                            : 0.05 + 0.9 * rng.uniform();
      g.add_edge(u, v, w);
    }
  }
  return g;
}

// Unique temp path, removed (with best effort) on destruction.
class TempFile {
 public:
  explicit TempFile(const std::string& stem) {
    static std::atomic<std::uint64_t> counter{0};
    auto dir = std::filesystem::temp_directory_path();
    path_ = (dir / ("influx_test_" + stem + "_" +
                    std::to_string(counter.fetch_add(1)) + ".txt"))
                .string();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }
  void write(const std::string& content) const {
    std::ofstream out(path_);
    out << content;
  }
  std::string read() const {
    std::ifstream in(path_);
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
  }

 private:
  std::string path_;
};

}  // namespace testsup
