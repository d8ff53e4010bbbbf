#include "influx/topk.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "influx/errors.hpp"

namespace influx {

TopKTracker::TopKTracker(Graph g, std::int64_t k, EpsDelta cfg,
                         std::uint64_t seed)
    : graph_(std::move(g)),
      k_(k),
      cfg_(cfg),
      target_(0),
      rng1_(Rng(seed).fork(1)),
      rng2_(Rng(seed).fork(2)),
      r1_(graph_),
      r2_(graph_),
      kth_(-1) {
  require_tracker_params(cfg_);
  if (k_ < 1 || k_ > graph_.n()) {
    throw std::invalid_argument("k must lie in [1, n], got " +
                                std::to_string(k_));
  }
  target_ = topk_degree_target(cfg_, graph_.n());
  kth_ = r1_.attach_kth_tracker(k_);
  ProcessStats st;
  rebalance(st);
}

void TopKTracker::rebalance(ProcessStats& st) {
  // Each append raises the tracked k-th degree by at most 1 and each
  // removal lowers it by at most 1, so both loops land exactly on target.
  while (r1_.kth_value(kth_) < target_) {
    r1_.append_rr(rng1_);
    r2_.append_rr(rng2_);
    st.added += 2;
  }
  while (r1_.kth_value(kth_) > target_) {
    r1_.remove_last();
    r2_.remove_last();
    st.removed += 2;
  }
  if (assertions_enabled()) {
    if (r1_.kth_value(kth_) != target_ || r1_.size() != r2_.size()) {
      throw InvariantError("tracker sizing invariant violated after rebalance");
    }
  }
}

ProcessStats TopKTracker::process(const UpdateEvent& e) {
  ProcessStats st;
  graph_.apply_update(e);
  st.refreshed_r1 = r1_.refresh_affected(e, rng1_);
  st.refreshed_r2 = r2_.refresh_affected(e, rng2_);
  rebalance(st);
  return st;
}

double TopKTracker::threshold() const {
  return (1.0 - cfg_.eps) / (1.0 + cfg_.eps) * static_cast<double>(target_);
}

std::vector<TopKTracker::Item> TopKTracker::query() const {
  auto hits = r2_.index().at_least(threshold());
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<Item> out;
  out.reserve(hits.size());
  const double scale =
      static_cast<double>(graph_.n()) / static_cast<double>(r2_.size());
  for (const auto& [v, d] : hits) {
    out.push_back({v, d, scale * static_cast<double>(d)});
  }
  return out;
}

}  // namespace influx
