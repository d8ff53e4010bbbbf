#include "influx/immax.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "influx/errors.hpp"

namespace influx {

double degree_threshold(std::int64_t d_star, std::int64_t k) {
  if (d_star < 2) return -1.0;
  auto ds = static_cast<double>(d_star);
  if (k == 1) return ds - 1.0;
  return std::min(ds / static_cast<double>(k - 1), ds - 1.0);
}

GreedyResult greedy_full(const RRCollection& c, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("greedy needs k >= 1");
  DegreeIndex copy = c.index().snapshot_above(-1.0);
  std::vector<char> covered(static_cast<std::size_t>(c.size()), 0);
  GreedyResult res;
  res.used_threshold = -1.0;
  res.q = k + 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    if (copy.size() == 0) {  // every remaining marginal is zero
      res.q = i;
      break;
    }
    Vertex v = copy.top_vertex();
    copy.remove(v);
    res.seeds.push_back(v);
    for (std::uint32_t sid : c.sets_containing(v)) {
      if (covered[sid]) continue;
      covered[sid] = 1;
      ++res.coverage;
      for (Vertex u : c.set(sid).members) {
        if (copy.degree(u) > 0) copy.decrease(u);
      }
    }
  }
  return res;
}

GreedyResult new_greedy(const RRCollection& c, std::int64_t k, double t_d) {
  if (k < 1) throw std::invalid_argument("greedy needs k >= 1");
  DegreeIndex snap = c.index().snapshot_above(t_d);
  std::vector<char> covered(static_cast<std::size_t>(c.size()), 0);
  // Copied degrees are exact until the first covering, so everything starts
  // stamped for iteration 1.
  std::vector<std::int64_t> stamp(static_cast<std::size_t>(c.graph().n()), 1);
  GreedyResult res;
  res.used_threshold = t_d;
  res.q = k + 1;
  std::int64_t i = 1;
  while (i <= k) {
    if (snap.size() == 0) {
      if (res.q > k) res.q = i;
      break;
    }
    Vertex v = snap.top_vertex();
    if (stamp[v] == i) {
      // Stored degree is the realized marginal gain of v.
      std::int64_t gain = snap.degree(v);
      snap.remove(v);
      res.seeds.push_back(v);
      std::int64_t newly = 0;
      for (std::uint32_t sid : c.sets_containing(v)) {
        if (!covered[sid]) {
          covered[sid] = 1;
          ++newly;
        }
      }
      if (assertions_enabled() && newly != gain) {
        throw InvariantError("lazy marginal out of sync with coverage");
      }
      res.coverage += newly;
      // q fires on marginal <= t_d: whenever the full greedy could have
      // preferred a filtered-out vertex (original degree <= t_d), including
      // exact ties, q <= k and the caller knows the runs may differ.
      if (static_cast<double>(newly) <= t_d && res.q > k) res.q = i;
      ++i;
    } else {
      std::int64_t margin = 0;
      for (std::uint32_t sid : c.sets_containing(v)) {
        if (!covered[sid]) ++margin;
      }
      snap.set_degree(v, margin);  // drops v at zero
      stamp[v] = i;
    }
  }
  return res;
}

IMTracker::IMTracker(Graph g, IMMode mode, EpsDelta cfg, std::int64_t k_max,
                     std::uint64_t seed)
    : graph_(std::move(g)),
      mode_(mode),
      cfg_(cfg),
      k_max_(k_max),
      targets_(im_targets(cfg, graph_.n(), k_max, mode)),
      rng1_(Rng(seed).fork(1)),
      rng2_(Rng(seed).fork(2)),
      r1_(graph_),
      r2_(graph_),
      dstar_(-1) {
  require_tracker_params(cfg_);
  dstar_ = r1_.attach_kth_tracker(1);
  ProcessStats st;
  rebalance(st);
}

void IMTracker::sync_r2(ProcessStats& st) {
  const std::int64_t want =
      guarded_ceil(targets_.m2_ratio * static_cast<double>(r1_.size()));
  while (r2_.size() < want) {
    r2_.append_rr(rng2_);
    ++st.added;
  }
  while (r2_.size() > want) {
    r2_.remove_last();
    ++st.removed;
  }
}

void IMTracker::rebalance(ProcessStats& st) {
  while (r1_.kth_value(dstar_) < targets_.d1_target) {
    r1_.append_rr(rng1_);
    ++st.added;
    if (mode_ == IMMode::theoretical) sync_r2(st);
  }
  while (r1_.kth_value(dstar_) > targets_.d1_target) {
    r1_.remove_last();
    ++st.removed;
    if (mode_ == IMMode::theoretical) sync_r2(st);
  }
  if (assertions_enabled()) {
    if (r1_.kth_value(dstar_) != targets_.d1_target) {
      throw InvariantError("IM sizing invariant violated after rebalance");
    }
    if (mode_ == IMMode::theoretical &&
        r2_.size() != guarded_ceil(targets_.m2_ratio *
                                   static_cast<double>(r1_.size()))) {
      throw InvariantError("r2 ratio invariant violated after rebalance");
    }
  }
}

ProcessStats IMTracker::process(const UpdateEvent& e) {
  ProcessStats st;
  graph_.apply_update(e);
  st.refreshed_r1 = r1_.refresh_affected(e, rng1_);
  if (mode_ == IMMode::theoretical) {
    st.refreshed_r2 = r2_.refresh_affected(e, rng2_);
  }
  rebalance(st);
  return st;
}

const RRCollection& IMTracker::query_pool() const {
  return mode_ == IMMode::theoretical ? r2_ : r1_;
}

IMQueryResult IMTracker::query_im(std::int64_t k) const {
  if (k < 1 || k > k_max_) {
    throw std::invalid_argument("query k must lie in [1, k_max], got " +
                                std::to_string(k));
  }
  const RRCollection& pool = query_pool();
  if (pool.size() == 0) throw InvariantError("query pool is empty");
  IMQueryResult out;
  double t_d = degree_threshold(pool.index().max_degree(), k);
  out.greedy = new_greedy(pool, k, t_d);
  if (out.greedy.q <= k) {
    // The filter cut into the guarantee; rerun without it.
    out.greedy = new_greedy(pool, k, -1.0);
    out.fallback = true;
  }
  out.estimate = static_cast<double>(graph_.n()) *
                 static_cast<double>(out.greedy.coverage) /
                 static_cast<double>(pool.size());
  if (assertions_enabled() &&
      out.greedy.coverage != pool.degree_of_set(out.greedy.seeds)) {
    throw InvariantError("greedy coverage disagrees with degree_of_set");
  }
  return out;
}

}  // namespace influx
