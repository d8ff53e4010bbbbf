#include "influx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

#include "influx/errors.hpp"
#include "influx/rng.hpp"

namespace influx {

namespace {

constexpr Vertex kNoVertex = 0xffffffffu;

void check_seeds(const Graph& g, const std::vector<Vertex>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set must be nonempty");
  std::unordered_set<Vertex> seen;
  for (Vertex s : seeds) {
    if (s >= static_cast<std::uint64_t>(g.n())) {
      throw std::invalid_argument("seed out of range: " + std::to_string(s));
    }
    if (!seen.insert(s).second) {
      throw std::invalid_argument("duplicate seed: " + std::to_string(s));
    }
  }
}

double lt_config_count(const Graph& g) {
  double count = 1.0;
  for (Vertex v = 0; v < static_cast<std::uint64_t>(g.n()); ++v) {
    count *= static_cast<double>(g.in_edges(v).size() + 1);
    if (count > 1e18) return count;
  }
  return count;
}

// Exact LT influence: every vertex independently picks one in-edge (weight
// w/W) or stops (weight w_v/W). A vertex v is influenced iff following the
// chain of picks from v reaches a seed. Each chain is walked directly; no
// per-config adjacency is built.
double exact_lt(const Graph& g, const std::vector<char>& is_seed,
                std::uint64_t max_configs) {
  auto n = static_cast<std::size_t>(g.n());
  double configs = lt_config_count(g);
  if (configs > static_cast<double>(max_configs)) {
    throw BudgetError("LT enumeration needs " + std::to_string(configs) +
                      " configs, budget is " + std::to_string(max_configs));
  }

  // Per-vertex choice probabilities; index deg(v) is the stop choice.
  std::vector<std::vector<double>> probs(n);
  for (std::size_t v = 0; v < n; ++v) {
    ChoiceDistribution d = lt_choice_distribution(g, static_cast<Vertex>(v));
    for (auto& [u, p] : d.edges) probs[v].push_back(p);
    probs[v].push_back(d.stop);
  }

  std::vector<std::size_t> choice(n, 0);
  std::vector<Vertex> pick(n, kNoVertex);  // resolved pick per vertex
  auto resolve = [&](std::size_t v) {
    const auto& edges = g.in_edges(static_cast<Vertex>(v));
    pick[v] = choice[v] < edges.size() ? edges[choice[v]].u : kNoVertex;
  };
  for (std::size_t v = 0; v < n; ++v) resolve(v);

  double total = 0.0;
  double prob_sum = 0.0;
  for (;;) {
    double p = 1.0;
    for (std::size_t v = 0; v < n; ++v) p *= probs[v][choice[v]];
    prob_sum += p;
    if (p > 0.0) {
      std::int64_t influenced = 0;
      for (std::size_t v = 0; v < n; ++v) {
        Vertex w = static_cast<Vertex>(v);
        // A pick chain has at most n hops before it must repeat.
        for (std::size_t hops = 0; hops <= n; ++hops) {
          if (is_seed[w]) {
            ++influenced;
            break;
          }
          w = pick[w];
          if (w == kNoVertex) break;
        }
      }
      total += p * static_cast<double>(influenced);
    }
    // Odometer step.
    std::size_t v = 0;
    while (v < n) {
      if (++choice[v] < probs[v].size()) {
        resolve(v);
        break;
      }
      choice[v] = 0;
      resolve(v);
      ++v;
    }
    if (v == n) break;
  }
  if (std::fabs(prob_sum - 1.0) > 1e-9) {
    throw InvariantError("LT config probabilities sum to " +
                         std::to_string(prob_sum));
  }
  return total;
}

// Exact IC influence: one coin per edge, 2^m configs.
double exact_ic(const Graph& g, const std::vector<char>& is_seed,
                std::uint64_t max_configs) {
  auto n = static_cast<std::size_t>(g.n());
  auto m = static_cast<std::size_t>(g.edge_count());
  if (m >= 63 || (std::uint64_t{1} << m) > max_configs) {
    throw BudgetError("IC enumeration needs 2^" + std::to_string(m) +
                      " configs, budget is " + std::to_string(max_configs));
  }
  // Flatten edges; out_adj maps a vertex to its out-edge indices.
  std::vector<std::pair<Vertex, Vertex>> edges;  // (u, v)
  std::vector<double> w;
  std::vector<std::vector<std::uint32_t>> out_adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (const InEdge& e : g.in_edges(v)) {
      out_adj[e.u].push_back(static_cast<std::uint32_t>(edges.size()));
      edges.emplace_back(e.u, static_cast<Vertex>(v));
      w.push_back(e.w);
    }
  }

  double total = 0.0;
  double prob_sum = 0.0;
  std::vector<char> active(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  const std::uint64_t configs = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < configs; ++mask) {
    double p = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      p *= (mask >> i) & 1 ? w[i] : 1.0 - w[i];
    }
    prob_sum += p;
    if (p > 0.0) {
      std::fill(active.begin(), active.end(), 0);
      queue.clear();
      for (std::size_t v = 0; v < n; ++v) {
        if (is_seed[v]) {
          active[v] = 1;
          queue.push_back(static_cast<Vertex>(v));
        }
      }
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (std::uint32_t ei : out_adj[queue[qi]]) {
          if (((mask >> ei) & 1) && !active[edges[ei].second]) {
            active[edges[ei].second] = 1;
            queue.push_back(edges[ei].second);
          }
        }
      }
      total += p * static_cast<double>(queue.size());
    }
  }
  if (std::fabs(prob_sum - 1.0) > 1e-9) {
    throw InvariantError("IC config probabilities sum to " +
                         std::to_string(prob_sum));
  }
  return total;
}

// Forward-simulation context reused across sims within one chunk.
struct SimScratch {
  std::vector<std::uint32_t> active_stamp;
  std::vector<std::uint32_t> touch_stamp;
  std::vector<double> acc;
  std::vector<double> threshold;
  std::vector<Vertex> queue;
  std::uint32_t epoch = 0;

  explicit SimScratch(std::size_t n)
      : active_stamp(n, 0), touch_stamp(n, 0), acc(n, 0.0), threshold(n, 0.0) {}

  void next_epoch() {
    if (++epoch == 0) {
      std::fill(active_stamp.begin(), active_stamp.end(), 0);
      std::fill(touch_stamp.begin(), touch_stamp.end(), 0);
      epoch = 1;
    }
  }
};

struct ForwardView {
  std::vector<std::vector<InEdge>> out;  // out[u] = (v, w_uv)

  explicit ForwardView(const Graph& g) : out(static_cast<std::size_t>(g.n())) {
    for (Vertex v = 0; v < static_cast<std::uint64_t>(g.n()); ++v) {
      for (const InEdge& e : g.in_edges(v)) {
        out[e.u].push_back({v, e.w});
      }
    }
  }
};

std::int64_t simulate_once(const Graph& g, const ForwardView& fwd,
                           const std::vector<Vertex>& seeds, SimScratch& s,
                           Rng& rng) {
  s.next_epoch();
  s.queue.clear();
  for (Vertex v : seeds) {
    s.active_stamp[v] = s.epoch;
    s.queue.push_back(v);
  }
  const bool lt = g.model() == Model::LT;
  for (std::size_t qi = 0; qi < s.queue.size(); ++qi) {
    Vertex u = s.queue[qi];
    for (const InEdge& e : fwd.out[u]) {
      Vertex v = e.u;
      if (s.active_stamp[v] == s.epoch) continue;
      if (lt) {
        double total = g.total_in(v);
        if (!(total > 0.0)) continue;
        if (s.touch_stamp[v] != s.epoch) {
          s.touch_stamp[v] = s.epoch;
          s.acc[v] = 0.0;
          s.threshold[v] = rng.uniform();
        }
        s.acc[v] += e.w / total;
        if (s.threshold[v] < s.acc[v]) {
          s.active_stamp[v] = s.epoch;
          s.queue.push_back(v);
        }
      } else {
        if (rng.uniform() < e.w) {
          s.active_stamp[v] = s.epoch;
          s.queue.push_back(v);
        }
      }
    }
  }
  return static_cast<std::int64_t>(s.queue.size());
}

}  // namespace

double exact_influence(const Graph& g, const std::vector<Vertex>& seeds,
                       std::uint64_t max_configs) {
  check_seeds(g, seeds);
  std::vector<char> is_seed(static_cast<std::size_t>(g.n()), 0);
  for (Vertex s : seeds) is_seed[s] = 1;
  return g.model() == Model::LT ? exact_lt(g, is_seed, max_configs)
                                : exact_ic(g, is_seed, max_configs);
}

McResult mc_influence(const Graph& g, const std::vector<Vertex>& seeds,
                      std::uint64_t sims, std::uint64_t seed) {
  check_seeds(g, seeds);
  if (sims == 0) throw std::invalid_argument("sims must be >= 1");

  const ForwardView fwd(g);

  // Fixed chunk layout so results do not depend on the thread count.
  const std::uint64_t chunk_size = 16384;
  const std::uint64_t chunks = (sims + chunk_size - 1) / chunk_size;
  std::vector<std::pair<double, double>> parts(chunks);  // (sum, sum of squares)

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    SimScratch scratch(static_cast<std::size_t>(g.n()));
    for (std::uint64_t c = lo; c < hi; ++c) {
      std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (c + 1));
      Rng rng(splitmix64(state));
      std::uint64_t count =
          std::min(chunk_size, sims - c * chunk_size);
      double sum = 0.0, sum_sq = 0.0;
      for (std::uint64_t i = 0; i < count; ++i) {
        auto x = static_cast<double>(simulate_once(g, fwd, seeds, scratch, rng));
        sum += x;
        sum_sq += x * x;
      }
      parts[c] = {sum, sum_sq};
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  std::uint64_t workers = std::min<std::uint64_t>(chunks, hw == 0 ? 1 : std::min(hw, 8u));
  if (workers <= 1) {
    run_range(0, chunks);
  } else {
    std::vector<std::future<void>> futs;
    for (std::uint64_t w = 0; w < workers; ++w) {
      std::uint64_t lo = chunks * w / workers;
      std::uint64_t hi = chunks * (w + 1) / workers;
      futs.push_back(std::async(std::launch::async, run_range, lo, hi));
    }
    for (auto& f : futs) f.get();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& [s, s2] : parts) {
    sum += s;
    sum_sq += s2;
  }
  auto nd = static_cast<double>(sims);
  McResult r;
  r.sims = sims;
  r.mean = sum / nd;
  if (sims > 1) {
    double var = (sum_sq - nd * r.mean * r.mean) / (nd - 1.0);
    r.std_err = std::sqrt(std::max(var, 0.0) / nd);
  }
  return r;
}

std::vector<Vertex> exhaustive_optimal_seed(const Graph& g, std::int64_t k,
                                            std::uint64_t max_configs) {
  if (k < 1 || k > g.n()) {
    throw std::invalid_argument("k must lie in [1, n]");
  }
  double subsets = 1.0;
  for (std::int64_t i = 0; i < k; ++i) {
    subsets *= static_cast<double>(g.n() - i) / static_cast<double>(i + 1);
  }
  double configs = g.model() == Model::LT
                       ? lt_config_count(g)
                       : std::pow(2.0, static_cast<double>(g.edge_count()));
  if (subsets * configs > static_cast<double>(max_configs)) {
    throw BudgetError("exhaustive search needs about " +
                      std::to_string(subsets * configs) +
                      " configs, budget is " + std::to_string(max_configs));
  }

  std::vector<Vertex> comb(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) comb[i] = static_cast<Vertex>(i);
  std::vector<Vertex> best;
  double best_value = -1.0;
  for (;;) {
    double value = exact_influence(g, comb, max_configs);
    if (value > best_value + 1e-12) {  // strict improvement keeps lexicographic ties
      best_value = value;
      best = comb;
    }
    // Next combination in lexicographic order.
    std::int64_t i = k - 1;
    while (i >= 0 &&
           comb[i] == static_cast<std::uint64_t>(g.n() - k + i)) {
      --i;
    }
    if (i < 0) break;
    ++comb[i];
    for (std::int64_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

double rr_membership_prob(const Graph& g, Vertex u, std::uint64_t max_configs) {
  return exact_influence(g, {u}, max_configs) / static_cast<double>(g.n());
}

}  // namespace influx
