#include "hopper/arrangement.hpp"

#include <algorithm>
#include <numeric>

namespace hopper {
namespace {

std::vector<IntegerVector> homogeneous_rows(const Polytope& p) {
  std::vector<IntegerVector> rows;
  rows.reserve(p.size());
  RationalVector h(p.dimension() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::copy(p.vertex(i).begin(), p.vertex(i).end(), h.begin());
    h.back() = 1;
    rows.push_back(integerize(h));
  }
  return rows;
}

// Visits every k-subset of `pool` in lexicographic order.
template <class Visit>
void for_each_subset(const std::vector<std::uint32_t>& pool, std::size_t k, Visit&& visit) {
  const std::size_t n = pool.size();
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint32_t> subset(k);
  while (true) {
    for (std::size_t j = 0; j < k; ++j) subset[j] = pool[idx[j]];
    visit(subset);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

void ArrangementCache::insert(Hyperplane plane, std::vector<std::uint32_t> subset) {
  auto it = index_.find(plane);
  if (it != index_.end()) {
    entries_[it->second].generators.push_back(std::move(subset));
    return;
  }
  Entry e;
  const auto n = plane.unit_normal();
  e.unit_normal = Eigen::Map<const Eigen::VectorXd>(n.data(), static_cast<Eigen::Index>(n.size()));
  e.unit_offset = plane.unit_offset();
  e.plane = std::move(plane);
  e.generators.push_back(std::move(subset));
  index_.emplace(e.plane, entries_.size());
  entries_.push_back(std::move(e));
}

void ArrangementCache::insert_all(const Polytope& p) {
  const auto rows = homogeneous_rows(p);
  std::vector<std::uint32_t> pool(p.size());
  std::iota(pool.begin(), pool.end(), 0U);
  std::vector<const IntegerVector*> ptrs(dimension_);
  for_each_subset(pool, dimension_, [&](const std::vector<std::uint32_t>& s) {
    ++examined_;
    for (std::size_t j = 0; j < s.size(); ++j) ptrs[j] = &rows[s[j]];
    if (auto h = hyperplane_through_homogeneous(ptrs)) insert(std::move(*h), s);
  });
}

void ArrangementCache::insert_subsets_containing(const Polytope& p, std::size_t vertex) {
  const auto rows = homogeneous_rows(p);
  std::vector<std::uint32_t> pool;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != vertex) pool.push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<const IntegerVector*> ptrs(dimension_);
  std::vector<std::uint32_t> full(dimension_);
  for_each_subset(pool, dimension_ - 1, [&](const std::vector<std::uint32_t>& s) {
    ++examined_;
    std::size_t k = 0;
    bool placed = false;
    for (auto i : s) {
      if (!placed && i > vertex) {
        full[k++] = static_cast<std::uint32_t>(vertex);
        placed = true;
      }
      full[k++] = i;
    }
    if (!placed) full[k++] = static_cast<std::uint32_t>(vertex);
    for (std::size_t j = 0; j < full.size(); ++j) ptrs[j] = &rows[full[j]];
    if (auto h = hyperplane_through_homogeneous(ptrs)) insert(std::move(*h), full);
  });
}

void ArrangementCache::compact() {
  std::vector<Entry> kept;
  kept.reserve(entries_.size());
  for (auto& e : entries_) {
    if (!e.generators.empty()) kept.push_back(std::move(e));
  }
  entries_ = std::move(kept);
  index_.clear();
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].plane, i);
}

ArrangementCache ArrangementCache::build(const Polytope& p) {
  ArrangementCache c;
  c.dimension_ = p.dimension();
  c.vertex_count_ = p.size();
  c.insert_all(p);
  return c;
}

ArrangementCache ArrangementCache::replaced(const Polytope& p, std::size_t changed) const {
  ArrangementCache c = *this;
  c.examined_ = 0;
  for (auto& e : c.entries_) {
    std::erase_if(e.generators, [changed](const std::vector<std::uint32_t>& s) {
      return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(changed));
    });
  }
  c.compact();
  c.insert_subsets_containing(p, changed);
  return c;
}

ArrangementCache ArrangementCache::added(const Polytope& p) const {
  ArrangementCache c = *this;
  c.examined_ = 0;
  c.vertex_count_ = p.size();
  c.insert_subsets_containing(p, p.size() - 1);
  return c;
}

ArrangementCache ArrangementCache::removed(const Polytope& p, std::size_t deleted) const {
  ArrangementCache c = *this;
  c.examined_ = 0;
  c.vertex_count_ = p.size();
  const auto gone = static_cast<std::uint32_t>(deleted);
  for (auto& e : c.entries_) {
    std::erase_if(e.generators, [gone](const std::vector<std::uint32_t>& s) {
      return std::binary_search(s.begin(), s.end(), gone);
    });
    for (auto& s : e.generators) {
      for (auto& i : s) {
        if (i > gone) --i;
      }
    }
  }
  c.compact();
  return c;
}

std::optional<std::size_t> ArrangementCache::find(const Hyperplane& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ArrangementCache::same_planes(const ArrangementCache& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (const auto& e : entries_) {
    auto j = other.find(e.plane);
    if (!j) return false;
    auto a = e.generators;
    auto b = other.entries_[*j].generators;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

}  // namespace hopper
