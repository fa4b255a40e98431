#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace gdesc {

/// Sorted list of point indices.
using PointSet = std::vector<std::size_t>;

/// Finite poset with the Alexandrov topology: opens are up-sets, the
/// minimal open of x is {y : y >= x}, and a point is closed iff it is minimal.
class FinPoset {
 public:
  /// Builds the order generated by the covering pairs (x, y), x ⋖ y.
  /// Rejects cycles (NotPartialOrder) and pairs that are not covers (SchemaError).
  static std::shared_ptr<const FinPoset> from_covers(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> covers);
  /// From an arbitrary generating relation; redundant pairs are dropped.
  static std::shared_ptr<const FinPoset> from_relation(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel);

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t x, std::size_t y) const { return leq_[x * n_ + y]; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  /// Covering pairs sorted lexicographically; restriction maps are indexed by position here.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }
  std::optional<std::size_t> cover_index(std::size_t x, std::size_t y) const;
  /// Points in an order compatible with <=.
  const std::vector<std::size_t>& linear_extension() const noexcept { return topo_; }

  PointSet up_set(std::size_t x) const;
  PointSet down_set(std::size_t x) const;
  PointSet all_points() const;
  bool is_up_set(const PointSet& s) const;
  bool is_down_set(const PointSet& s) const;
  /// Z = U ∩ C with U open, C closed; equivalently z1 <= y <= z2 with z1, z2 in Z forces y in Z.
  bool is_locally_closed(const PointSet& s) const;
  bool is_connected() const;
  /// Chain of covers from x to y (requires x <= y).
  std::vector<std::size_t> chain(std::size_t x, std::size_t y) const;

  /// Induced subposet on s, points renumbered in increasing order.
  std::shared_ptr<const FinPoset> induced(const PointSet& s) const;
  static std::shared_ptr<const FinPoset> point();
  static std::shared_ptr<const FinPoset> chain_of(std::size_t n);
  static std::shared_ptr<const FinPoset> antichain(std::size_t n);

  friend bool operator==(const FinPoset& a, const FinPoset& b) { return a.n_ == b.n_ && a.covers_ == b.covers_; }

 private:
  FinPoset() = default;
  void finish();

  std::size_t n_ = 0;
  std::vector<bool> leq_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::size_t> topo_;
};

using PosetPtr = std::shared_ptr<const FinPoset>;

/// Order-preserving (hence continuous) map of finite posets.
class MonotoneMap {
 public:
  /// Throws NotMonotone or DimensionMismatch.
  MonotoneMap(PosetPtr source, PosetPtr target, std::vector<std::size_t> image);

  const PosetPtr& source() const noexcept { return source_; }
  const PosetPtr& target() const noexcept { return target_; }
  std::size_t operator()(std::size_t x) const { return image_[x]; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }
  PointSet preimage(const PointSet& s) const;

  static MonotoneMap identity(const PosetPtr& p);
  static MonotoneMap to_point(const PosetPtr& p);

 private:
  PosetPtr source_, target_;
  std::vector<std::size_t> image_;
};

}  // namespace gdesc
