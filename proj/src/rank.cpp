#include "influx/rank.hpp"

#include <stdexcept>
#include <string>

#include "influx/errors.hpp"

namespace influx {

std::int32_t DegreeIndex::new_bucket(std::int64_t degree, std::int32_t up,
                                     std::int32_t down) {
  std::int32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    buckets_[id] = Bucket{};
  } else {
    id = static_cast<std::int32_t>(buckets_.size());
    buckets_.emplace_back();
  }
  Bucket& b = buckets_[id];
  b.degree = degree;
  b.up = up;
  b.down = down;
  if (up != kNil) {
    buckets_[up].down = id;
  } else {
    top_ = id;
  }
  if (down != kNil) {
    buckets_[down].up = id;
  } else {
    bottom_ = id;
  }
  ++link_ops_;
  return id;
}

void DegreeIndex::free_bucket(std::int32_t id) {
  Bucket& b = buckets_[id];
  if (b.up != kNil) {
    buckets_[b.up].down = b.down;
  } else {
    top_ = b.down;
  }
  if (b.down != kNil) {
    buckets_[b.down].up = b.up;
  } else {
    bottom_ = b.up;
  }
  free_.push_back(id);
  ++link_ops_;
}

void DegreeIndex::push_tail(std::int32_t id, Vertex u) {
  Bucket& b = buckets_[id];
  Node& n = nodes_[u];
  n.bucket = id;
  n.prev = b.tail;
  n.next = kNoVertex;
  if (b.tail != kNoVertex) {
    nodes_[b.tail].next = u;
  } else {
    b.head = u;
  }
  b.tail = u;
  ++b.num;
  ++link_ops_;
}

void DegreeIndex::unlink(Vertex u) {
  Node& n = nodes_[u];
  Bucket& b = buckets_[n.bucket];
  if (n.prev != kNoVertex) {
    nodes_[n.prev].next = n.next;
  } else {
    b.head = n.next;
  }
  if (n.next != kNoVertex) {
    nodes_[n.next].prev = n.prev;
  } else {
    b.tail = n.prev;
  }
  --b.num;
  n.bucket = kNil;
  ++link_ops_;
}

int DegreeIndex::attach_kth_tracker(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("tracker k must be >= 1");
  Tracker tr;
  tr.k = k;
  if (size_ >= k) {
    // One-time scan to place the handle; mutations keep it O(1) afterwards.
    std::int64_t above = 0;
    for (std::int32_t b = top_; b != kNil; b = buckets_[b].down) {
      if (above + buckets_[b].num >= k) {
        tr.bucket = b;
        tr.b = k - above;
        break;
      }
      above += buckets_[b].num;
    }
  }
  trackers_.push_back(tr);
  return static_cast<int>(trackers_.size()) - 1;
}

void DegreeIndex::increase(Vertex u) {
  auto it = nodes_.find(u);
  std::int64_t old_d = 0;
  std::int32_t dest;

  // Capture tracker context before any structural change.
  struct Saved {
    std::int64_t h_deg;
  };
  // Trackers are few (one or two per index); a small stack array would do,
  // but a vector keeps this simple.
  std::vector<Saved> saved(trackers_.size());
  for (std::size_t i = 0; i < trackers_.size(); ++i) {
    saved[i].h_deg =
        trackers_[i].bucket == kNil ? -1 : buckets_[trackers_[i].bucket].degree;
  }

  if (it == nodes_.end()) {
    if (bottom_ != kNil && buckets_[bottom_].degree == 1) {
      dest = bottom_;
    } else {
      dest = new_bucket(1, bottom_, kNil);
    }
    push_tail(dest, u);
    ++size_;
  } else {
    std::int32_t cur = it->second.bucket;
    old_d = buckets_[cur].degree;
    std::int32_t up = buckets_[cur].up;
    if (up != kNil && buckets_[up].degree == old_d + 1) {
      dest = up;
    } else {
      dest = new_bucket(old_d + 1, up, cur);
    }
    unlink(u);
    push_tail(dest, u);
    if (buckets_[cur].num == 0) free_bucket(cur);
  }

  for (std::size_t i = 0; i < trackers_.size(); ++i) {
    Tracker& tr = trackers_[i];
    ++link_ops_;
    if (tr.bucket == kNil) {
      if (old_d == 0 && size_ == tr.k) {
        // The structure just reached k vertices; the k-th largest is the
        // minimum, which lives in the bucket the new vertex entered.
        tr.bucket = dest;
        tr.b = buckets_[dest].num;
      }
      continue;
    }
    if (old_d != saved[i].h_deg) continue;
    if (tr.b == 1) {
      tr.bucket = dest;
      tr.b = buckets_[dest].num;
    } else {
      --tr.b;
    }
  }
}

void DegreeIndex::decrease(Vertex u) {
  auto it = nodes_.find(u);
  if (it == nodes_.end()) {
    throw std::invalid_argument("decrease on vertex with degree 0: " +
                                std::to_string(u));
  }
  std::int32_t cur = it->second.bucket;
  std::int64_t old_d = buckets_[cur].degree;

  struct Saved {
    std::int64_t h_deg;
    std::int64_t h_num;
  };
  std::vector<Saved> saved(trackers_.size());
  for (std::size_t i = 0; i < trackers_.size(); ++i) {
    if (trackers_[i].bucket == kNil) {
      saved[i] = {-1, 0};
    } else {
      saved[i] = {buckets_[trackers_[i].bucket].degree,
                  buckets_[trackers_[i].bucket].num};
    }
  }

  std::int32_t dest = kNil;
  if (old_d == 1) {
    unlink(u);
    nodes_.erase(it);
    --size_;
  } else {
    std::int32_t down = buckets_[cur].down;
    if (down != kNil && buckets_[down].degree == old_d - 1) {
      dest = down;
    } else {
      dest = new_bucket(old_d - 1, cur, down);
    }
    unlink(u);
    push_tail(dest, u);
  }
  if (buckets_[cur].num == 0) free_bucket(cur);

  for (std::size_t i = 0; i < trackers_.size(); ++i) {
    Tracker& tr = trackers_[i];
    ++link_ops_;
    if (tr.bucket == kNil) continue;
    if (old_d == saved[i].h_deg + 1) {
      ++tr.b;
    } else if (old_d == saved[i].h_deg) {
      if (tr.b == saved[i].h_num) {
        if (dest == kNil) {
          // The leaver was the k-th of exactly k; back below k vertices.
          tr.bucket = kNil;
          tr.b = 0;
        } else {
          tr.bucket = dest;
          tr.b = 1;
        }
      }
      // b < num: handle and count unchanged.
    }
  }
}

void DegreeIndex::set_degree(Vertex u, std::int64_t d) {
  if (!trackers_.empty()) {
    throw InvariantError("set_degree is only valid on tracker-free copies");
  }
  auto it = nodes_.find(u);
  if (it == nodes_.end()) {
    throw std::invalid_argument("set_degree on absent vertex " + std::to_string(u));
  }
  std::int32_t cur = it->second.bucket;
  std::int64_t old_d = buckets_[cur].degree;
  if (d == old_d) return;
  if (d <= 0) {
    remove(u);
    return;
  }
  if (d > old_d) {
    throw std::invalid_argument("set_degree only lowers degrees");
  }
  unlink(u);
  std::int32_t above = cur;
  std::int32_t scan = buckets_[cur].down;
  while (scan != kNil && buckets_[scan].degree > d) {
    above = scan;
    scan = buckets_[scan].down;
    ++link_ops_;
  }
  std::int32_t dest = (scan != kNil && buckets_[scan].degree == d)
                          ? scan
                          : new_bucket(d, above, scan);
  push_tail(dest, u);
  if (buckets_[cur].num == 0) free_bucket(cur);
}

void DegreeIndex::remove(Vertex u) {
  if (!trackers_.empty()) {
    throw InvariantError("remove is only valid on tracker-free copies");
  }
  auto it = nodes_.find(u);
  if (it == nodes_.end()) return;
  std::int32_t cur = it->second.bucket;
  unlink(u);
  nodes_.erase(it);
  if (buckets_[cur].num == 0) free_bucket(cur);
  --size_;
}

std::int64_t DegreeIndex::degree(Vertex u) const {
  auto it = nodes_.find(u);
  if (it == nodes_.end()) return 0;
  return buckets_[it->second.bucket].degree;
}

std::int64_t DegreeIndex::max_degree() const {
  return top_ == kNil ? 0 : buckets_[top_].degree;
}

Vertex DegreeIndex::top_vertex() const {
  if (top_ == kNil) throw std::invalid_argument("top_vertex on empty index");
  Vertex best = kNoVertex;
  for (Vertex v = buckets_[top_].head; v != kNoVertex;
       v = nodes_.find(v)->second.next) {
    if (v < best) best = v;
  }
  return best;
}

std::int64_t DegreeIndex::kth_value(int slot) const {
  const Tracker& tr = trackers_.at(static_cast<std::size_t>(slot));
  return tr.bucket == kNil ? 0 : buckets_[tr.bucket].degree;
}

std::vector<std::pair<Vertex, std::int64_t>> DegreeIndex::at_least(
    double t) const {
  std::vector<std::pair<Vertex, std::int64_t>> out;
  for (std::int32_t b = top_; b != kNil; b = buckets_[b].down) {
    if (static_cast<double>(buckets_[b].degree) < t) break;
    for (Vertex v = buckets_[b].head; v != kNoVertex;
         v = nodes_.find(v)->second.next) {
      out.emplace_back(v, buckets_[b].degree);
    }
  }
  return out;
}

DegreeIndex DegreeIndex::snapshot_above(double t) const {
  DegreeIndex copy;
  std::int32_t last = kNil;
  for (std::int32_t b = top_; b != kNil; b = buckets_[b].down) {
    if (!(static_cast<double>(buckets_[b].degree) > t)) break;
    std::int32_t nb = copy.new_bucket(buckets_[b].degree, last, kNil);
    for (Vertex v = buckets_[b].head; v != kNoVertex;
         v = nodes_.find(v)->second.next) {
      copy.push_tail(nb, v);
      ++copy.size_;
    }
    last = nb;
  }
  copy.link_ops_ = 0;
  return copy;
}

void DegreeIndex::validate() const {
  std::int64_t seen = 0;
  std::int64_t prev_degree = -1;
  std::int32_t prev_bucket = kNil;
  for (std::int32_t b = top_; b != kNil; b = buckets_[b].down) {
    const Bucket& bk = buckets_[b];
    if (bk.up != prev_bucket) throw InvariantError("bucket up-link broken");
    if (prev_degree != -1 && bk.degree >= prev_degree) {
      throw InvariantError("bucket degrees not strictly decreasing");
    }
    if (bk.degree < 1) throw InvariantError("bucket with degree < 1");
    if (bk.num < 1) throw InvariantError("empty bucket retained");
    std::int64_t count = 0;
    Vertex prev_v = kNoVertex;
    for (Vertex v = bk.head; v != kNoVertex;) {
      auto it = nodes_.find(v);
      if (it == nodes_.end()) throw InvariantError("bucket lists unknown vertex");
      if (it->second.bucket != b) throw InvariantError("locator bucket mismatch");
      if (it->second.prev != prev_v) throw InvariantError("vertex prev-link broken");
      prev_v = v;
      v = it->second.next;
      ++count;
    }
    if (bk.tail != prev_v) throw InvariantError("bucket tail mismatch");
    if (count != bk.num) throw InvariantError("bucket num mismatch");
    seen += count;
    prev_degree = bk.degree;
    prev_bucket = b;
  }
  if (prev_bucket != bottom_) throw InvariantError("bottom pointer mismatch");
  if (seen != size_ || seen != static_cast<std::int64_t>(nodes_.size())) {
    throw InvariantError("vertex count mismatch");
  }
  for (const Tracker& tr : trackers_) {
    std::int32_t expect_bucket = kNil;
    std::int64_t expect_b = 0;
    std::int64_t above = 0;
    if (size_ >= tr.k) {
      for (std::int32_t b = top_; b != kNil; b = buckets_[b].down) {
        if (above + buckets_[b].num >= tr.k) {
          expect_bucket = b;
          expect_b = tr.k - above;
          break;
        }
        above += buckets_[b].num;
      }
    }
    if (tr.bucket != expect_bucket || (expect_bucket != kNil && tr.b != expect_b)) {
      throw InvariantError("kth tracker out of position (k=" +
                           std::to_string(tr.k) + ")");
    }
  }
}

}  // namespace influx
