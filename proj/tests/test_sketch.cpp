#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <doctest.h>

#include "influx/errors.hpp"
#include "influx/graph.hpp"
#include "influx/oracle.hpp"
#include "influx/rng.hpp"
#include "influx/sketch.hpp"
#include "support.hpp"

using namespace influx;

namespace {

// Fraction of roots whose RR set contains u, over fresh samples.
double sampled_membership(const Graph& g, Vertex u, int samples, Rng& rng) {
  RRSampler sampler(g);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    Vertex root = static_cast<Vertex>(rng.below(g.n()));
    RRSet s = sampler.generate(root, rng);
    if (std::find(s.members.begin(), s.members.end(), u) != s.members.end()) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / samples;
}

void check_within_sigma(double got, double p, int samples, double sigmas) {
  double sd = std::sqrt(p * (1.0 - p) / samples);
  CHECK(std::abs(got - p) <= sigmas * sd + 1e-12);
}

}  // namespace

TEST_SUITE_BEGIN("sketch");

TEST_CASE("rr sets are rooted, duplicate-free and in range") {
  Graph g = testsup::power_law_lt(60, 150, 5);
  Rng rng(11);
  RRSampler sampler(g);
  for (int i = 0; i < 2000; ++i) {
    Vertex root = static_cast<Vertex>(rng.below(g.n()));
    RRSet s = sampler.generate(root, rng);
    REQUIRE_FALSE(s.members.empty());
    CHECK(s.members[0] == root);
    CHECK(s.cost >= s.members.size());
    std::vector<Vertex> sorted = s.members;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.back() < g.n());
  }
}

TEST_CASE("membership probability matches the closed form") {
  // P[u in RR(random root)] = I({u}) / n.
  constexpr int kSamples = 200000;
  SUBCASE("linear threshold") {
    Graph g = testsup::g3_lt();
    Rng rng(21);
    double p = rr_membership_prob(g, 1);  // I({1}) = 4/3 -> 4/9
    CHECK(p == doctest::Approx(4.0 / 9.0));
    check_within_sigma(sampled_membership(g, 1, kSamples, rng), p, kSamples, 3.5);
  }
  SUBCASE("independent cascade") {
    Graph g = testsup::g3_ic();
    Rng rng(22);
    double p = rr_membership_prob(g, 1);  // I({1}) = 1.5 -> 0.5
    CHECK(p == doctest::Approx(0.5));
    check_within_sigma(sampled_membership(g, 1, kSamples, rng), p, kSamples, 3.5);
  }
}

TEST_CASE("estimate_influence approaches the exact value") {
  Graph g = testsup::g3_lt();
  RRCollection pool(g);
  Rng rng(31);
  for (int i = 0; i < 120000; ++i) pool.append_rr(rng);
  double exact = exact_influence(g, {1});  // 4/3
  double est = pool.estimate_influence({1});
  CHECK(est == doctest::Approx(exact).epsilon(0.02));
  double est_both = pool.estimate_influence({1, 2});  // 8/3
  CHECK(est_both == doctest::Approx(8.0 / 3.0).epsilon(0.02));
  CHECK(pool.degree_of_set({0, 1, 2}) == pool.size());
  pool.validate();
}

TEST_CASE("inverted index and degree index stay coherent") {
  Graph g = testsup::g3_lt();
  RRCollection pool(g);
  Rng rng(41);
  for (int i = 0; i < 50; ++i) pool.append_rr(rng);
  pool.validate();
  std::int64_t d1 = pool.index().degree(1);
  CHECK(static_cast<std::int64_t>(pool.sets_containing(1).size()) == d1);
  CHECK(pool.degree_of_set({1}) == d1);
  for (std::uint32_t id : pool.sets_containing(1)) {
    const RRSet& s = pool.set(id);
    CHECK(std::find(s.members.begin(), s.members.end(), 1u) != s.members.end());
  }
  while (pool.size() > 0) pool.remove_last();
  pool.validate();
  CHECK(pool.index().size() == 0);
  CHECK(pool.total_cost() == 0);
}

TEST_CASE("append_raw validates its input") {
  Graph g = testsup::g3_lt();
  RRCollection pool(g);
  CHECK_THROWS_AS(pool.append_raw({}), std::invalid_argument);
  CHECK_THROWS_AS(pool.append_raw({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(pool.append_raw({0, 7}), std::invalid_argument);
  std::uint32_t id = pool.append_raw({2, 0}, 5);
  CHECK(pool.set(id).root == 2);
  CHECK(pool.total_cost() == 5);
  pool.validate();
}

TEST_CASE("refresh keeps slots and roots stable") {
  Graph g = testsup::g3_lt();
  RRCollection pool(g);
  Rng rng(51);
  for (int i = 0; i < 200; ++i) pool.append_rr(rng);
  std::vector<Vertex> roots;
  for (std::uint32_t id = 0; id < pool.size(); ++id) {
    roots.push_back(pool.set(id).root);
  }
  UpdateEvent ev{0, 1, true, 3.0, 1};
  g.apply_update(ev);
  std::int64_t refreshed = pool.refresh_affected(ev, rng);
  CHECK(refreshed > 0);
  CHECK(pool.size() == 200);
  for (std::uint32_t id = 0; id < pool.size(); ++id) {
    CHECK(pool.set(id).root == roots[id]);
  }
  pool.validate();
}

TEST_CASE("refresh coherence under random churn") {
  Rng seed_rng(61);
  Graph g = testsup::random_small_graph(8, 3, Model::LT, seed_rng);
  RRCollection pool(g);
  Rng rng(62);
  for (int i = 0; i < 300; ++i) pool.append_rr(rng);
  for (int step = 0; step < 50; ++step) {
    auto u = static_cast<Vertex>(rng.below(8));
    auto v = static_cast<Vertex>(rng.below(8));
    if (u == v) continue;
    double w = g.edge_weight(u, v);
    bool inc = w == 0.0 || rng.uniform() < 0.6;
    UpdateEvent e{u, v, inc, inc ? 0.3 : std::min(0.3, w), step};
    if (!e.increase && e.delta <= 0.0) continue;
    g.apply_update(e);
    pool.refresh_affected(e, rng);
    pool.validate();
  }
}

TEST_CASE("refresh coherence under random churn (IC)") {
  Rng seed_rng(63);
  Graph g = testsup::random_small_graph(8, 3, Model::IC, seed_rng);
  RRCollection pool(g);
  Rng rng(64);
  for (int i = 0; i < 300; ++i) pool.append_rr(rng);
  for (int step = 1; step <= 50; ++step) {
    auto u = static_cast<Vertex>(rng.below(8));
    auto v = static_cast<Vertex>(rng.below(8));
    if (u == v) continue;
    double w = g.edge_weight(u, v);
    bool inc = w == 0.0 || rng.uniform() < 0.6;
    double delta = inc ? std::min(0.3, 1.0 - w) : std::min(0.3, w);
    if (delta <= 0.0) continue;
    UpdateEvent e{u, v, inc, delta, step};
    g.apply_update(e);
    pool.refresh_affected(e, rng);
    pool.validate();
  }
}

namespace {

// TV distance between a maintained single-set pool (random root, refreshed
// across every update) and fresh sampling on the final graph.
double refresh_tv(const Graph& base, const std::vector<UpdateEvent>& ups,
                  std::uint64_t seed_base, int trials) {
  Graph final_graph = base;
  for (const auto& e : ups) final_graph.apply_update(e);

  auto signature = [](const RRSet& s) {
    int bits = 0;
    for (Vertex v : s.members) bits |= 1 << v;
    return static_cast<int>(s.root) * 16 + bits;
  };

  std::map<int, double> maintained, fresh;
  const double w = 1.0 / trials;
  RRSampler fresh_sampler(final_graph);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed_base + 2 * trial);
    Graph g = base;
    RRCollection pool(g);
    pool.append_rr(rng);
    for (const auto& e : ups) {
      g.apply_update(e);
      pool.refresh_affected(e, rng);
    }
    maintained[signature(pool.set(0))] += w;

    Rng frng(seed_base + 2 * trial + 1);
    auto root = static_cast<Vertex>(frng.below(base.n()));
    fresh[signature(fresh_sampler.generate(root, frng))] += w;
  }
  double tv = 0.0;
  for (auto& [sig, p] : maintained) tv += std::abs(p - fresh[sig]);
  for (auto& [sig, p] : fresh) {
    if (maintained.find(sig) == maintained.end()) tv += p;
  }
  return tv / 2.0;
}

}  // namespace

TEST_CASE("refreshed pool matches the fresh distribution") {
  // Maintain one set (uniform root) across a stream mixing creations,
  // increases and decreases, then compare against fresh sampling on the
  // final graph. The kept/refreshed split has to be exact for this to hold.
  std::vector<UpdateEvent> lt_ups = {{0, 1, true, 1.0, 1},
                                     {1, 0, false, 0.5, 2},
                                     {2, 1, true, 2.0, 3},
                                     {0, 2, true, 1.0, 4}};
  std::vector<UpdateEvent> ic_ups = {{0, 1, true, 0.5, 1},
                                     {1, 0, false, 0.25, 2},
                                     {2, 1, true, 0.3, 3},
                                     {0, 2, true, 0.6, 4}};
  CHECK(refresh_tv(testsup::g3_lt(), lt_ups, 900, 30000) <= 0.02);
  CHECK(refresh_tv(testsup::g3_ic(), ic_ups, 77000, 30000) <= 0.02);
}

TEST_CASE("refresh tracks the updated choice distribution") {
  // After (1,0,+,1.0) vertex 0 picks in-edge 1 with probability 2/4; sets
  // rooted at 0 must show that membership rate once refreshed.
  constexpr int kTrials = 20000;
  int hits = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    Rng rng(Rng(4400 + trial).fork(1));
    Graph g = testsup::g3_lt();
    RRCollection pool(g);
    pool.append_rr(0, rng);
    UpdateEvent e{1, 0, true, 1.0, 1};
    g.apply_update(e);
    pool.refresh_affected(e, rng);
    const auto& m = pool.set(0).members;
    if (std::find(m.begin(), m.end(), 1u) != m.end()) ++hits;
  }
  check_within_sigma(static_cast<double>(hits) / kTrials, 0.5, kTrials, 3.5);
}

TEST_SUITE_END();
