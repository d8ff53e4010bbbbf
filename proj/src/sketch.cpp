#include "influx/sketch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "influx/errors.hpp"

namespace influx {

namespace {
constexpr Vertex kNoVertex = 0xffffffffu;
}

RRSampler::RRSampler(const Graph& g)
    : g_(&g), stamp_(static_cast<std::size_t>(g.n()), 0) {}

void RRSampler::new_epoch() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

std::uint64_t RRSampler::walk_from(RRSet& r, Rng& rng) {
  std::uint64_t work = 0;
  Vertex cur = r.members.back();
  for (;;) {
    double total = g_->total_in(cur);
    if (!(total > 0.0)) break;  // stop probability 1
    double x = rng.uniform() * total;
    double acc = 0.0;
    Vertex nxt = kNoVertex;
    for (const InEdge& e : g_->in_edges(cur)) {
      ++work;
      acc += e.w;
      if (x < acc) {
        nxt = e.u;
        break;
      }
    }
    if (nxt == kNoVertex) break;       // landed in the self-weight mass
    if (stamp_[nxt] == epoch_) break;  // walk closed a cycle
    stamp_[nxt] = epoch_;
    r.members.push_back(nxt);
    ++work;
    cur = nxt;
  }
  return work;
}

std::uint64_t RRSampler::run_ic(RRSet& r, Rng& rng, Vertex dead_u,
                                Vertex dead_v) {
  std::uint64_t work = 0;
  for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
    Vertex x = queue_[qi];
    for (const InEdge& e : g_->in_edges(x)) {
      ++work;
      double w = (x == dead_v && e.u == dead_u) ? 0.0 : e.w;
      if (rng.uniform() < w && stamp_[e.u] != epoch_) {
        stamp_[e.u] = epoch_;
        r.members.push_back(e.u);
        ++work;
        queue_.push_back(e.u);
      }
    }
  }
  return work;
}

RRSet RRSampler::generate(Vertex root, Rng& rng) {
  return generate_without_edge(root, kNoVertex, kNoVertex, rng);
}

RRSet RRSampler::generate_without_edge(Vertex root, Vertex dead_u,
                                       Vertex dead_v, Rng& rng) {
  if (root >= static_cast<std::uint64_t>(g_->n())) {
    throw std::invalid_argument("root out of range: " + std::to_string(root));
  }
  new_epoch();
  RRSet r;
  r.root = root;
  r.members.push_back(root);
  stamp_[root] = epoch_;
  std::uint64_t cost = 1;
  if (g_->model() == Model::LT) {
    cost += walk_from(r, rng);
  } else {
    queue_.clear();
    queue_.push_back(root);
    cost += run_ic(r, rng, dead_u, dead_v);
  }
  r.cost = cost;
  return r;
}

std::uint64_t RRSampler::resume_walk(RRSet& r, Rng& rng) {
  new_epoch();
  for (Vertex m : r.members) stamp_[m] = epoch_;
  return walk_from(r, rng);
}

std::uint64_t RRSampler::expand_ic(RRSet& r, Vertex from, Rng& rng) {
  new_epoch();
  for (Vertex m : r.members) stamp_[m] = epoch_;
  stamp_[from] = epoch_;
  r.members.push_back(from);
  queue_.clear();
  queue_.push_back(from);
  return 1 + run_ic(r, rng, kNoVertex, kNoVertex);
}

RRSet generate_rr(const Graph& g, Vertex root, Rng& rng) {
  RRSampler s(g);
  return s.generate(root, rng);
}

RRCollection::RRCollection(const Graph& g)
    : g_(&g), sampler_(g), inv_(static_cast<std::size_t>(g.n())) {}

const std::vector<std::uint32_t>& RRCollection::sets_containing(Vertex u) const {
  if (u >= inv_.size()) {
    throw std::invalid_argument("vertex out of range: " + std::to_string(u));
  }
  return inv_[u];
}

void RRCollection::link_members(std::uint32_t id) {
  for (Vertex u : sets_[id].members) {
    inv_[u].push_back(id);
    index_.increase(u);
  }
}

void RRCollection::unlink_members(std::uint32_t id) {
  for (Vertex u : sets_[id].members) {
    auto& list = inv_[u];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == id) {
        list[i] = list.back();
        list.pop_back();
        break;
      }
    }
    index_.decrease(u);
  }
}

std::uint32_t RRCollection::append_rr(Rng& rng) {
  return append_rr(static_cast<Vertex>(rng.below(
                       static_cast<std::uint64_t>(g_->n()))),
                   rng);
}

std::uint32_t RRCollection::append_rr(Vertex root, Rng& rng) {
  RRSet r = sampler_.generate(root, rng);
  auto id = static_cast<std::uint32_t>(sets_.size());
  r.id = id;
  total_cost_ += r.cost;
  sets_.push_back(std::move(r));
  link_members(id);
  return id;
}

std::uint32_t RRCollection::append_raw(std::vector<Vertex> members,
                                       std::uint64_t cost) {
  if (members.empty()) throw std::invalid_argument("empty RR set");
  std::unordered_set<Vertex> seen;
  for (Vertex u : members) {
    if (u >= inv_.size()) {
      throw std::invalid_argument("member out of range: " + std::to_string(u));
    }
    if (!seen.insert(u).second) {
      throw std::invalid_argument("duplicate member: " + std::to_string(u));
    }
  }
  RRSet r;
  r.root = members[0];
  r.members = std::move(members);
  r.cost = cost;
  auto id = static_cast<std::uint32_t>(sets_.size());
  r.id = id;
  total_cost_ += cost;
  sets_.push_back(std::move(r));
  link_members(id);
  return id;
}

void RRCollection::remove_last() {
  if (sets_.empty()) throw std::invalid_argument("remove_last on empty pool");
  auto id = static_cast<std::uint32_t>(sets_.size() - 1);
  unlink_members(id);
  total_cost_ -= sets_[id].cost;
  sets_.pop_back();
}

std::int64_t RRCollection::refresh_affected(const UpdateEvent& e, Rng& rng) {
  if (e.v >= inv_.size()) {
    throw std::invalid_argument("vertex out of range: " + std::to_string(e.v));
  }
  std::vector<std::uint32_t> ids = inv_[e.v];
  std::sort(ids.begin(), ids.end());
  const bool lt = g_->model() == Model::LT;
  const double w_new = g_->edge_weight(e.u, e.v);
  const double w_old = e.increase ? w_new - e.delta : w_new + e.delta;
  for (std::uint32_t id : ids) {
    RRSet& r = sets_[id];
    if (lt) {
      // The walk consulted v's in-distribution exactly once; the prefix up
      // to v kept its measure, so only the rest is redrawn.
      unlink_members(id);
      total_cost_ -= r.cost;
      auto pos = std::find(r.members.begin(), r.members.end(), e.v);
      r.members.erase(pos + 1, r.members.end());
      r.cost = static_cast<std::uint64_t>(r.members.size());
      r.cost += sampler_.resume_walk(r, rng);
      total_cost_ += r.cost;
      link_members(id);
    } else if (e.increase) {
      // Coupling: new coin = old coin OR an independent boost with
      // probability delta / (1 - w_old). The boost only matters when u is
      // not already a member; its in-edges were never consulted, so the
      // expansion flips fresh coins.
      if (std::find(r.members.begin(), r.members.end(), e.u) !=
          r.members.end()) {
        continue;
      }
      if (rng.uniform() >= e.delta / (1.0 - w_old)) continue;
      unlink_members(id);
      total_cost_ -= r.cost;
      r.cost += sampler_.expand_ic(r, e.u, rng);
      total_cost_ += r.cost;
      link_members(id);
    } else {
      // Coupling: the coin survives with probability w_new / w_old (keep
      // the set). The kept mass is w_new*P_live + (w_new/w_old)(1-w_old)*
      // P_dead; the deficit against the new measure is exactly
      // (1 - w_new/w_old) * P_dead(. | contains v), so the dead branch
      // redraws on the deleted-edge graph until v is a member again.
      if (rng.uniform() < w_new / w_old) continue;
      for (;;) {
        RRSet cand = sampler_.generate_without_edge(r.root, e.u, e.v, rng);
        if (std::find(cand.members.begin(), cand.members.end(), e.v) ==
            cand.members.end()) {
          continue;
        }
        cand.id = id;
        unlink_members(id);
        total_cost_ += cand.cost;
        total_cost_ -= r.cost;
        r = std::move(cand);
        link_members(id);
        break;
      }
    }
  }
  if (assertions_enabled()) validate();
  return static_cast<std::int64_t>(ids.size());
}

std::int64_t RRCollection::degree_of_set(const std::vector<Vertex>& seeds) const {
  if (mark_.size() < sets_.size()) mark_.resize(sets_.size(), 0);
  if (++mark_epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    mark_epoch_ = 1;
  }
  std::int64_t count = 0;
  for (Vertex s : seeds) {
    if (s >= inv_.size()) {
      throw std::invalid_argument("seed out of range: " + std::to_string(s));
    }
    for (std::uint32_t id : inv_[s]) {
      if (mark_[id] != mark_epoch_) {
        mark_[id] = mark_epoch_;
        ++count;
      }
    }
  }
  return count;
}

double RRCollection::estimate_influence(const std::vector<Vertex>& seeds) const {
  if (sets_.empty()) {
    throw std::invalid_argument("estimate_influence on empty pool");
  }
  return static_cast<double>(g_->n()) *
         static_cast<double>(degree_of_set(seeds)) /
         static_cast<double>(sets_.size());
}

void RRCollection::validate() const {
  std::uint64_t cost = 0;
  std::vector<std::int64_t> deg(inv_.size(), 0);
  for (std::size_t id = 0; id < sets_.size(); ++id) {
    const RRSet& r = sets_[id];
    if (r.id != id) throw InvariantError("slot id mismatch");
    if (r.members.empty()) throw InvariantError("empty RR set stored");
    if (r.members[0] != r.root) throw InvariantError("root not first member");
    std::unordered_set<Vertex> seen;
    for (Vertex u : r.members) {
      if (u >= inv_.size()) throw InvariantError("member out of range");
      if (!seen.insert(u).second) throw InvariantError("duplicate member");
      ++deg[u];
      bool found = false;
      for (std::uint32_t e : inv_[u]) {
        if (e == id) {
          found = true;
          break;
        }
      }
      if (!found) throw InvariantError("membership missing from inverted index");
    }
    cost += r.cost;
  }
  for (std::size_t u = 0; u < inv_.size(); ++u) {
    if (static_cast<std::int64_t>(inv_[u].size()) != deg[u]) {
      throw InvariantError("inverted index has stale entries at vertex " +
                           std::to_string(u));
    }
    if (index_.degree(static_cast<Vertex>(u)) != deg[u]) {
      throw InvariantError("degree index out of sync at vertex " +
                           std::to_string(u));
    }
  }
  if (cost != total_cost_) throw InvariantError("total cost out of sync");
  index_.validate();
}

}  // namespace influx
