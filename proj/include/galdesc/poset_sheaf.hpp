#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "galdesc/linalg.hpp"
#include "galdesc/poset.hpp"

namespace gdesc {

/// Sheaf of finite-dimensional vector spaces on a finite poset, given by its
/// stalks (sections over minimal opens) and restriction maps along covers.
/// res(i) maps stalk(x) to stalk(y) for the i-th cover x ⋖ y.
class PosetSheaf {
 public:
  /// Checks shapes and that all chain composites between comparable points agree.
  PosetSheaf(PosetPtr poset, Field field, std::vector<std::size_t> stalk_dims, std::vector<Matrix> res);

  static PosetSheaf constant(const PosetPtr& poset, const Field& field, std::size_t dim);
  static PosetSheaf zero(const PosetPtr& poset, const Field& field);

  const PosetPtr& poset() const noexcept { return poset_; }
  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t stalk_dim(std::size_t x) const { return dims_.at(x); }
  const std::vector<std::size_t>& stalk_dims() const noexcept { return dims_; }
  const Matrix& res(std::size_t cover) const { return res_.at(cover); }
  const std::vector<Matrix>& restrictions() const noexcept { return res_; }
  /// Composite restriction stalk(x) -> stalk(y) for x <= y.
  const Matrix& transition(std::size_t x, std::size_t y) const;
  std::size_t total_dim() const;

  friend bool operator==(const PosetSheaf& a, const PosetSheaf& b);

 private:
  PosetPtr poset_;
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> res_;
  std::vector<std::optional<Matrix>> transitions_;  // x * n + y
};

/// Natural transformation of sheaves: comp(x) maps stalk(x) of the source to
/// stalk(x) of the target and commutes with every restriction.
class SheafMorphism {
 public:
  /// Throws NotSheafMorphism (witness x, y) when a square fails to commute.
  SheafMorphism(PosetSheaf source, PosetSheaf target, std::vector<Matrix> comp);

  static SheafMorphism identity(const PosetSheaf& f);
  static SheafMorphism zero(const PosetSheaf& source, const PosetSheaf& target);

  const PosetSheaf& source() const noexcept { return *source_; }
  const PosetSheaf& target() const noexcept { return *target_; }
  const Matrix& at(std::size_t x) const { return comp_.at(x); }
  const std::vector<Matrix>& components() const noexcept { return comp_; }
  bool is_zero() const;
  bool is_isomorphism() const;

 private:
  std::shared_ptr<const PosetSheaf> source_, target_;
  std::vector<Matrix> comp_;
};

/// g ∘ f.
SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f);

/// Γ(U, F) inside ∏_{x in U} stalk(x); `offsets[i]` locates points[i] in a section vector.
struct Sections {
  PointSet points;
  std::vector<std::size_t> offsets;
  Subspace space;

  /// Component of a section vector at the point with index `which` in `points`.
  Vector component(const Vector& section, std::size_t which) const;
};

/// Throws NotUpSet.
Sections sections(const PosetSheaf& f, const PointSet& open);
/// Projection Γ(U, F) -> stalk(x) in the section basis (columns = basis sections).
Matrix projection_to_stalk(const PosetSheaf& f, const Sections& s, std::size_t x);

PosetSheaf pushforward(const MonotoneMap& f, const PosetSheaf& sheaf);
PosetSheaf pullback(const MonotoneMap& f, const PosetSheaf& sheaf);
/// Restriction to the induced subposet on `subset`.
PosetSheaf restrict_to(const PosetSheaf& sheaf, const PointSet& subset);
/// Extension by zero from a locally closed subset; `sheaf` lives on the
/// induced subposet. Throws NotLocallyClosed.
PosetSheaf extend_by_zero(const PosetPtr& space, const PointSet& subset, const PosetSheaf& sheaf);
/// Constant sheaf k^dim on `subset`, extended by zero.
PosetSheaf constant_on(const PosetPtr& space, const Field& field, const PointSet& subset, std::size_t dim = 1);

/// Stalkwise tensor product. Throws FieldMismatch.
PosetSheaf tensor(const PosetSheaf& f, const PosetSheaf& g);
PosetSheaf direct_sum(const PosetSheaf& f, const PosetSheaf& g);

/// Natural transformations F|_U -> G|_U as vectors in ∏_{y in U} Hom(F_y, G_y),
/// each Hom block flattened row-major.
struct NaturalMaps {
  PointSet points;
  std::vector<std::size_t> offsets;
  Subspace space;
};
NaturalMaps natural_maps(const PosetSheaf& f, const PosetSheaf& g, const PointSet& open);

/// Internal Hom: stalk at x = natural maps F|_{>=x} -> G|_{>=x}.
PosetSheaf sheaf_hom(const PosetSheaf& f, const PosetSheaf& g);
/// Basis of Hom(F, G) as explicit morphisms (in RREF order of the flattened components).
std::vector<SheafMorphism> hom_global(const PosetSheaf& f, const PosetSheaf& g);
/// Morphism F -> G from the flattened natural-map vector over all points.
SheafMorphism morphism_from_vector(const PosetSheaf& f, const PosetSheaf& g, const Vector& v);
Vector morphism_to_vector(const SheafMorphism& m);

/// All restriction maps invertible.
bool is_locally_constant(const PosetSheaf& f);

/// Pointwise subquotient num_x / den_x of a sheaf, with den ⊆ num both stable
/// under restriction. Classes are represented by a complement of den in num
/// (rows of reps[x]), chosen deterministically by complement_in.
struct Subquotient {
  PosetSheaf sheaf;
  std::vector<Subspace> numerator;
  std::vector<Subspace> denominator;
  std::vector<Matrix> reps;

  /// Coordinates of the class of v (a vector of numerator[x]) in reps[x].
  Vector class_of(std::size_t x, const Vector& v) const;
};
Subquotient subquotient(const PosetSheaf& f, std::vector<Subspace> num, std::vector<Subspace> den);

/// Pointwise kernel with its inclusion.
struct SubSheaf {
  PosetSheaf sheaf;
  std::vector<Subspace> spaces;
  SheafMorphism inclusion;
};
SubSheaf kernel_sheaf(const SheafMorphism& m);

/// Sheaf on a poset with points relabelled: point x becomes perm[x].
PosetSheaf relabel(const PosetSheaf& f, const PosetPtr& relabelled_poset, const std::vector<std::size_t>& perm);

}  // namespace gdesc
