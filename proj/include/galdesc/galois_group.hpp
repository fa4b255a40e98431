#pragma once

#include <optional>
#include <span>
#include <vector>

#include "galdesc/field.hpp"

namespace gdesc {

/// Automorphism of an extension over its immediate base, determined by the
/// image of the generator.
class FieldAut {
 public:
  /// Throws HintNotRoot unless modulus(image) = 0.
  FieldAut(Field ext, FieldElem image);

  const Field& field() const noexcept { return ext_; }
  const FieldElem& image() const noexcept { return image_; }
  /// Substitutes the generator image into the representative of x.
  FieldElem apply(const FieldElem& x) const;

 private:
  Field ext_;
  FieldElem image_;
};

inline FieldElem apply_aut(const FieldAut& g, const FieldElem& x) { return g.apply(x); }

/// Automorphisms of L over its immediate base K, closed under composition.
/// Element 0 is the identity.
class GaloisGroup {
 public:
  /// Finite base: the powers of Frobenius (hints ignored). Characteristic-zero
  /// base: the identity plus the hinted generator images, which must form a
  /// group (NotClosed otherwise).
  static GaloisGroup compute(const Field& ext, std::span<const FieldElem> hints = {});

  const Field& field() const noexcept { return ext_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const FieldAut& operator[](std::size_t i) const { return elems_.at(i); }
  const std::vector<FieldAut>& elements() const noexcept { return elems_; }
  static constexpr std::size_t identity() noexcept { return 0; }
  /// Index of g∘h (h applied first).
  std::size_t compose(std::size_t g, std::size_t h) const { return table_.at(g).at(h); }
  std::size_t inverse(std::size_t g) const;
  bool is_galois() const noexcept { return galois_; }
  std::optional<std::size_t> index_of(const FieldElem& image) const;
  bool fixes(const FieldElem& x) const;

 private:
  explicit GaloisGroup(Field ext) : ext_(std::move(ext)) {}

  Field ext_;
  std::vector<FieldAut> elems_;
  std::vector<std::vector<std::size_t>> table_;
  bool galois_ = false;
};

/// Base-field element equal to x when every automorphism fixes x.
/// Errors: NotGalois, NotFixed (witness "g"), NotConstant.
FieldElem coerce_down(const GaloisGroup& group, const FieldElem& x);

}  // namespace gdesc
