#include "galdesc/galois_group.hpp"

#include "galdesc/error.hpp"
#include "galdesc/polynomial.hpp"

namespace gdesc {

FieldAut::FieldAut(Field ext, FieldElem image) : ext_(std::move(ext)), image_(std::move(image)) {
  if (!ext_.is_extension()) fail(ErrorCode::SchemaError, "automorphisms need an extension field");
  if (!ext_.contains(image_)) fail(ErrorCode::SchemaError, "generator image is not an element of " + ext_.describe());
  if (!ext_.is_zero(poly_eval_in(ext_, ext_.modulus(), image_)))
    fail(ErrorCode::HintNotRoot, "'" + ext_.format(image_) + "' is not a root of the modulus of " + ext_.describe());
}

FieldElem FieldAut::apply(const FieldElem& x) const {
  return poly_eval_in(ext_, ext_.base_coeffs(x), image_);
}

GaloisGroup GaloisGroup::compute(const Field& ext, std::span<const FieldElem> hints) {
  if (!ext.is_extension()) fail(ErrorCode::SchemaError, "automorphism group requested for a prime field");
  GaloisGroup g(ext);
  g.elems_.emplace_back(ext, ext.generator());

  if (ext.base().is_finite()) {
    const std::uint64_t q = *ext.base().order();
    FieldAut frob(ext, ext.pow(ext.generator(), q));
    FieldElem image = frob.image();
    while (image != ext.generator()) {
      g.elems_.emplace_back(ext, image);
      image = frob.apply(image);
      ensure(g.elems_.size() <= static_cast<std::size_t>(ext.degree()), "Frobenius order exceeds degree");
    }
  } else {
    for (const auto& h : hints) {
      FieldAut aut(ext, h);
      bool seen = false;
      for (const auto& e : g.elems_) seen = seen || e.image() == aut.image();
      if (!seen) g.elems_.push_back(std::move(aut));
    }
  }

  const std::size_t n = g.elems_.size();
  g.table_.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      FieldElem img = g.elems_[a].apply(g.elems_[b].image());
      auto idx = g.index_of(img);
      if (!idx)
        fail(ErrorCode::NotClosed, "automorphism set is not closed under composition",
             {{"g", static_cast<std::int64_t>(a)}, {"h", static_cast<std::int64_t>(b)}});
      g.table_[a][b] = *idx;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        ensure(g.table_[g.table_[a][b]][c] == g.table_[a][g.table_[b][c]], "composition table not associative");
  g.galois_ = n == static_cast<std::size_t>(ext.degree());
  return g;
}

std::size_t GaloisGroup::inverse(std::size_t g) const {
  for (std::size_t h = 0; h < size(); ++h)
    if (compose(g, h) == identity()) return h;
  ensure(false, "group element without inverse");
  return 0;
}

std::optional<std::size_t> GaloisGroup::index_of(const FieldElem& image) const {
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i].image() == image) return i;
  return std::nullopt;
}

bool GaloisGroup::fixes(const FieldElem& x) const {
  for (const auto& g : elems_)
    if (g.apply(x) != x) return false;
  return true;
}

FieldElem coerce_down(const GaloisGroup& group, const FieldElem& x) {
  const Field& ext = group.field();
  if (!group.is_galois())
    fail(ErrorCode::NotGalois, "coercion needs the full Galois group of " + ext.describe());
  for (std::size_t i = 0; i < group.size(); ++i)
    if (group[i].apply(x) != x)
      fail(ErrorCode::NotFixed, "'" + ext.format(x) + "' is moved by an automorphism",
           {{"g", static_cast<std::int64_t>(i)}});
  if (!ext.in_base(x)) fail(ErrorCode::NotConstant, "fixed element with non-constant representative");
  return ext.base_coeffs(x)[0];
}

}  // namespace gdesc
