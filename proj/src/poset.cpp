#include "galdesc/poset.hpp"

#include <algorithm>
#include <string>

#include "galdesc/error.hpp"

namespace gdesc {

namespace {

std::string pair_str(std::size_t x, std::size_t y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

std::vector<bool> closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel) {
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (auto [x, y] : rel) {
    if (x >= n || y >= n) fail(ErrorCode::SchemaError, "relation pair " + pair_str(x, y) + " out of range");
    leq[x * n + y] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        fail(ErrorCode::NotPartialOrder, "relation has a cycle through points " + std::to_string(i) + " and " + std::to_string(j),
             {{"x", static_cast<std::int64_t>(i)}, {"y", static_cast<std::int64_t>(j)}});
  return leq;
}

}  // namespace

void FinPoset::finish() {
  std::sort(covers_.begin(), covers_.end());
  // Kahn's algorithm, smallest available index first
  std::vector<std::size_t> indeg(n_, 0);
  for (auto [x, y] : covers_) ++indeg[y];
  std::vector<bool> done(n_, false);
  topo_.clear();
  while (topo_.size() < n_) {
    std::size_t next = n_;
    for (std::size_t i = 0; i < n_; ++i)
      if (!done[i] && indeg[i] == 0) {
        next = i;
        break;
      }
    ensure(next < n_, "poset has a cycle");
    done[next] = true;
    topo_.push_back(next);
    for (auto [x, y] : covers_)
      if (x == next) --indeg[y];
  }
}

PosetPtr FinPoset::from_covers(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> covers) {
  if (n == 0) fail(ErrorCode::SchemaError, "poset must have at least one point");
  std::sort(covers.begin(), covers.end());
  if (std::adjacent_find(covers.begin(), covers.end()) != covers.end())
    fail(ErrorCode::SchemaError, "duplicate covering pair");
  for (auto [x, y] : covers)
    if (x == y) fail(ErrorCode::NotPartialOrder, "covering pair " + pair_str(x, y) + " is a loop");
  auto leq = closure(n, covers);
  for (auto [x, y] : covers)
    for (std::size_t z = 0; z < n; ++z)
      if (z != x && z != y && leq[x * n + z] && leq[z * n + y])
        fail(ErrorCode::SchemaError, "pair " + pair_str(x, y) + " is not a covering pair (passes through " + std::to_string(z) + ")");
  auto p = std::shared_ptr<FinPoset>(new FinPoset());
  p->n_ = n;
  p->leq_ = std::move(leq);
  p->covers_ = std::move(covers);
  p->finish();
  return p;
}

PosetPtr FinPoset::from_relation(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel) {
  if (n == 0) fail(ErrorCode::SchemaError, "poset must have at least one point");
  auto leq = closure(n, rel);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !leq[x * n + y]) continue;
      bool is_cover = true;
      for (std::size_t z = 0; z < n && is_cover; ++z)
        if (z != x && z != y && leq[x * n + z] && leq[z * n + y]) is_cover = false;
      if (is_cover) covers.emplace_back(x, y);
    }
  auto p = std::shared_ptr<FinPoset>(new FinPoset());
  p->n_ = n;
  p->leq_ = std::move(leq);
  p->covers_ = std::move(covers);
  p->finish();
  return p;
}

std::optional<std::size_t> FinPoset::cover_index(std::size_t x, std::size_t y) const {
  auto it = std::lower_bound(covers_.begin(), covers_.end(), std::make_pair(x, y));
  if (it == covers_.end() || *it != std::make_pair(x, y)) return std::nullopt;
  return static_cast<std::size_t>(it - covers_.begin());
}

PointSet FinPoset::up_set(std::size_t x) const {
  PointSet s;
  for (std::size_t y = 0; y < n_; ++y)
    if (leq(x, y)) s.push_back(y);
  return s;
}

PointSet FinPoset::down_set(std::size_t x) const {
  PointSet s;
  for (std::size_t y = 0; y < n_; ++y)
    if (leq(y, x)) s.push_back(y);
  return s;
}

PointSet FinPoset::all_points() const {
  PointSet s(n_);
  for (std::size_t i = 0; i < n_; ++i) s[i] = i;
  return s;
}

bool FinPoset::is_up_set(const PointSet& s) const {
  std::vector<bool> in(n_, false);
  for (auto x : s) {
    if (x >= n_) return false;
    in[x] = true;
  }
  for (auto x : s)
    for (std::size_t y = 0; y < n_; ++y)
      if (leq(x, y) && !in[y]) return false;
  return true;
}

bool FinPoset::is_down_set(const PointSet& s) const {
  std::vector<bool> in(n_, false);
  for (auto x : s) {
    if (x >= n_) return false;
    in[x] = true;
  }
  for (auto x : s)
    for (std::size_t y = 0; y < n_; ++y)
      if (leq(y, x) && !in[y]) return false;
  return true;
}

bool FinPoset::is_locally_closed(const PointSet& s) const {
  std::vector<bool> in(n_, false);
  for (auto x : s) {
    if (x >= n_) return false;
    in[x] = true;
  }
  for (auto a : s)
    for (auto b : s)
      for (std::size_t y = 0; y < n_; ++y)
        if (leq(a, y) && leq(y, b) && !in[y]) return false;
  return true;
}

bool FinPoset::is_connected() const {
  std::vector<std::size_t> comp(n_);
  for (std::size_t i = 0; i < n_; ++i) comp[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [x, y] : covers_) {
      std::size_t m = std::min(comp[x], comp[y]);
      if (comp[x] != m || comp[y] != m) {
        comp[x] = comp[y] = m;
        changed = true;
      }
    }
  }
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

std::vector<std::size_t> FinPoset::chain(std::size_t x, std::size_t y) const {
  if (!leq(x, y)) fail(ErrorCode::DimensionMismatch, "no chain from " + std::to_string(x) + " to " + std::to_string(y));
  std::vector<std::size_t> out;
  std::size_t cur = x;
  while (cur != y) {
    bool stepped = false;
    for (std::size_t i = 0; i < covers_.size(); ++i) {
      auto [a, b] = covers_[i];
      if (a == cur && leq(b, y)) {
        out.push_back(i);
        cur = b;
        stepped = true;
        break;
      }
    }
    ensure(stepped, "chain search stalled");
  }
  return out;
}

PosetPtr FinPoset::induced(const PointSet& s) const {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && leq(s[i], s[j])) rel.emplace_back(i, j);
  return from_relation(s.size(), rel);
}

PosetPtr FinPoset::point() { return from_covers(1, {}); }

PosetPtr FinPoset::chain_of(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> c;
  for (std::size_t i = 0; i + 1 < n; ++i) c.emplace_back(i, i + 1);
  return from_covers(n, c);
}

PosetPtr FinPoset::antichain(std::size_t n) { return from_covers(n, {}); }

MonotoneMap::MonotoneMap(PosetPtr source, PosetPtr target, std::vector<std::size_t> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  if (image_.size() != source_->size()) fail(ErrorCode::DimensionMismatch, "map must assign an image to every point");
  for (auto y : image_)
    if (y >= target_->size()) fail(ErrorCode::DimensionMismatch, "map image out of range");
  for (auto [x, y] : source_->covers())
    if (!target_->leq(image_[x], image_[y]))
      fail(ErrorCode::NotMonotone, "map is not monotone on " + pair_str(x, y),
           {{"x", static_cast<std::int64_t>(x)}, {"y", static_cast<std::int64_t>(y)}});
}

PointSet MonotoneMap::preimage(const PointSet& s) const {
  std::vector<bool> in(target_->size(), false);
  for (auto y : s) in[y] = true;
  PointSet out;
  for (std::size_t x = 0; x < image_.size(); ++x)
    if (in[image_[x]]) out.push_back(x);
  return out;
}

MonotoneMap MonotoneMap::identity(const PosetPtr& p) { return MonotoneMap(p, p, p->all_points()); }

MonotoneMap MonotoneMap::to_point(const PosetPtr& p) {
  return MonotoneMap(p, FinPoset::point(), std::vector<std::size_t>(p->size(), 0));
}

}  // namespace gdesc
