#include "galdesc/poset_sheaf.hpp"

#include <string>

#include "galdesc/error.hpp"

namespace gdesc {

namespace {

std::int64_t idx(std::size_t i) { return static_cast<std::int64_t>(i); }

void require_compatible(const PosetSheaf& f, const PosetSheaf& g) {
  if (!(f.field() == g.field())) fail(ErrorCode::FieldMismatch, "sheaves over different fields");
  if (!(*f.poset() == *g.poset())) fail(ErrorCode::DimensionMismatch, "sheaves on different posets");
}

std::vector<std::size_t> offsets_for(const PosetSheaf& f, const PointSet& pts, std::size_t& total) {
  std::vector<std::size_t> off;
  total = 0;
  for (auto x : pts) {
    off.push_back(total);
    total += f.stalk_dim(x);
  }
  return off;
}

std::size_t position_in(const PointSet& pts, std::size_t x) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == x) return i;
  ensure(false, "point not in set");
  return 0;
}

}  // namespace

PosetSheaf::PosetSheaf(PosetPtr poset, Field field, std::vector<std::size_t> stalk_dims, std::vector<Matrix> res)
    : poset_(std::move(poset)), field_(std::move(field)), dims_(std::move(stalk_dims)), res_(std::move(res)) {
  const std::size_t n = poset_->size();
  if (dims_.size() != n) fail(ErrorCode::DimensionMismatch, "need one stalk dimension per point");
  const auto& covers = poset_->covers();
  if (res_.size() != covers.size()) fail(ErrorCode::DimensionMismatch, "need one restriction matrix per covering pair");
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    if (!(res_[i].field() == field_)) fail(ErrorCode::FieldMismatch, "restriction matrix over the wrong field");
    if (res_[i].rows() != dims_[y] || res_[i].cols() != dims_[x])
      fail(ErrorCode::DimensionMismatch,
           "restriction (" + std::to_string(x) + "," + std::to_string(y) + ") has the wrong shape",
           {{"x", idx(x)}, {"y", idx(y)}});
  }
  transitions_.assign(n * n, std::nullopt);
  for (std::size_t x = 0; x < n; ++x) {
    transitions_[x * n + x] = Matrix::identity(field_, dims_[x]);
    for (std::size_t y : poset_->linear_extension()) {
      if (y == x || !poset_->leq(x, y)) continue;
      for (std::size_t i = 0; i < covers.size(); ++i) {
        auto [z, w] = covers[i];
        if (w != y || !poset_->leq(x, z)) continue;
        Matrix composite = res_[i] * *transitions_[x * n + z];
        if (!transitions_[x * n + y]) {
          transitions_[x * n + y] = std::move(composite);
        } else if (!(*transitions_[x * n + y] == composite)) {
          fail(ErrorCode::NotPathIndependent,
               "restriction composites from " + std::to_string(x) + " to " + std::to_string(y) + " disagree",
               {{"x", idx(x)}, {"y", idx(y)}});
        }
      }
    }
  }
}

PosetSheaf PosetSheaf::constant(const PosetPtr& poset, const Field& field, std::size_t dim) {
  std::vector<Matrix> res(poset->covers().size(), Matrix::identity(field, dim));
  return PosetSheaf(poset, field, std::vector<std::size_t>(poset->size(), dim), std::move(res));
}

PosetSheaf PosetSheaf::zero(const PosetPtr& poset, const Field& field) { return constant(poset, field, 0); }

const Matrix& PosetSheaf::transition(std::size_t x, std::size_t y) const {
  const std::size_t n = poset_->size();
  if (x >= n || y >= n || !poset_->leq(x, y))
    fail(ErrorCode::DimensionMismatch, "transition requested between incomparable points");
  return *transitions_[x * n + y];
}

std::size_t PosetSheaf::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims_) t += d;
  return t;
}

bool operator==(const PosetSheaf& a, const PosetSheaf& b) {
  return *a.poset_ == *b.poset_ && a.field_ == b.field_ && a.dims_ == b.dims_ && a.res_ == b.res_;
}

SheafMorphism::SheafMorphism(PosetSheaf source, PosetSheaf target, std::vector<Matrix> comp)
    : source_(std::make_shared<const PosetSheaf>(std::move(source))),
      target_(std::make_shared<const PosetSheaf>(std::move(target))),
      comp_(std::move(comp)) {
  require_compatible(*source_, *target_);
  const std::size_t n = source_->size();
  if (comp_.size() != n) fail(ErrorCode::DimensionMismatch, "need one component per point");
  for (std::size_t x = 0; x < n; ++x) {
    if (comp_[x].rows() != target_->stalk_dim(x) || comp_[x].cols() != source_->stalk_dim(x))
      fail(ErrorCode::DimensionMismatch, "component at point " + std::to_string(x) + " has the wrong shape", {{"x", idx(x)}});
    if (!(comp_[x].field() == source_->field())) fail(ErrorCode::FieldMismatch, "component over the wrong field");
  }
  const auto& covers = source_->poset()->covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    if (!(target_->res(i) * comp_[x] == comp_[y] * source_->res(i)))
      fail(ErrorCode::NotSheafMorphism, "components do not commute with restriction along (" + std::to_string(x) + "," +
                                            std::to_string(y) + ")",
           {{"x", idx(x)}, {"y", idx(y)}});
  }
}

SheafMorphism SheafMorphism::identity(const PosetSheaf& f) {
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < f.size(); ++x) comp.push_back(Matrix::identity(f.field(), f.stalk_dim(x)));
  return SheafMorphism(f, f, std::move(comp));
}

SheafMorphism SheafMorphism::zero(const PosetSheaf& source, const PosetSheaf& target) {
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < source.size(); ++x)
    comp.emplace_back(source.field(), target.stalk_dim(x), source.stalk_dim(x));
  return SheafMorphism(source, target, std::move(comp));
}

bool SheafMorphism::is_zero() const {
  for (const auto& m : comp_)
    if (!m.is_zero()) return false;
  return true;
}

bool SheafMorphism::is_isomorphism() const {
  for (const auto& m : comp_)
    if (!is_invertible(m)) return false;
  return true;
}

SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f) {
  if (!(f.target() == g.source())) fail(ErrorCode::DimensionMismatch, "morphisms are not composable");
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < f.source().size(); ++x) comp.push_back(g.at(x) * f.at(x));
  return SheafMorphism(f.source(), g.target(), std::move(comp));
}

Vector Sections::component(const Vector& section, std::size_t which) const {
  const std::size_t end = which + 1 < offsets.size() ? offsets[which + 1] : section.size();
  return Vector(section.begin() + static_cast<std::ptrdiff_t>(offsets[which]),
                section.begin() + static_cast<std::ptrdiff_t>(end));
}

Sections sections(const PosetSheaf& f, const PointSet& open) {
  const auto& poset = *f.poset();
  if (!poset.is_up_set(open)) fail(ErrorCode::NotUpSet, "sections requested over a set that is not open (up-closed)");
  std::size_t total = 0;
  auto offsets = offsets_for(f, open, total);
  std::vector<bool> in(poset.size(), false);
  for (auto x : open) in[x] = true;

  const Field& k = f.field();
  Matrix constraints(k, 0, total);
  const auto& covers = poset.covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    if (!in[x] || !in[y]) continue;
    // res_xy s_x - s_y = 0
    Matrix block(k, f.stalk_dim(y), total);
    const std::size_t ox = offsets[position_in(open, x)], oy = offsets[position_in(open, y)];
    for (std::size_t r = 0; r < f.stalk_dim(y); ++r) {
      for (std::size_t c = 0; c < f.stalk_dim(x); ++c) block.set(r, ox + c, f.res(i)(r, c));
      block.set(r, oy + r, k.neg(k.one()));
    }
    constraints = vstack(constraints, block);
  }
  return Sections{open, std::move(offsets), kernel(constraints)};
}

Matrix projection_to_stalk(const PosetSheaf& f, const Sections& s, std::size_t x) {
  const std::size_t which = position_in(s.points, x);
  Matrix out(f.field(), f.stalk_dim(x), s.space.dim());
  for (std::size_t k = 0; k < s.space.dim(); ++k) {
    Vector comp = s.component(s.space.basis().row(k), which);
    for (std::size_t r = 0; r < comp.size(); ++r) out.set(r, k, comp[r]);
  }
  return out;
}

namespace {

// Restricts a section vector laid out over `from` to the points of `to` (a subset).
Vector restrict_vector(const Vector& v, const PointSet& from, const std::vector<std::size_t>& from_offsets,
                       const PointSet& to, const PosetSheaf& f) {
  Vector out;
  for (auto y : to) {
    std::size_t off = from_offsets[position_in(from, y)];
    for (std::size_t r = 0; r < f.stalk_dim(y); ++r) out.push_back(v[off + r]);
  }
  return out;
}

}  // namespace

PosetSheaf pushforward(const MonotoneMap& f, const PosetSheaf& sheaf) {
  if (!(*f.source() == *sheaf.poset())) fail(ErrorCode::DimensionMismatch, "sheaf does not live on the map's source");
  const auto& target = *f.target();
  std::vector<Sections> stalks;
  std::vector<std::size_t> dims;
  for (std::size_t y = 0; y < target.size(); ++y) {
    stalks.push_back(sections(sheaf, f.preimage(target.up_set(y))));
    dims.push_back(stalks.back().space.dim());
  }
  std::vector<Matrix> res;
  for (auto [y, y2] : target.covers()) {
    const Sections& big = stalks[y];
    const Sections& small = stalks[y2];
    Matrix m(sheaf.field(), small.space.dim(), big.space.dim());
    for (std::size_t k = 0; k < big.space.dim(); ++k) {
      Vector restricted = restrict_vector(big.space.basis().row(k), big.points, big.offsets, small.points, sheaf);
      Vector c = small.space.coordinates(restricted);
      for (std::size_t r = 0; r < c.size(); ++r) m.set(r, k, c[r]);
    }
    res.push_back(std::move(m));
  }
  return PosetSheaf(f.target(), sheaf.field(), std::move(dims), std::move(res));
}

PosetSheaf pullback(const MonotoneMap& f, const PosetSheaf& sheaf) {
  if (!(*f.target() == *sheaf.poset())) fail(ErrorCode::DimensionMismatch, "sheaf does not live on the map's target");
  const auto& source = *f.source();
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < source.size(); ++x) dims.push_back(sheaf.stalk_dim(f(x)));
  std::vector<Matrix> res;
  for (auto [x, y] : source.covers()) res.push_back(sheaf.transition(f(x), f(y)));
  return PosetSheaf(f.source(), sheaf.field(), std::move(dims), std::move(res));
}

PosetSheaf restrict_to(const PosetSheaf& sheaf, const PointSet& subset) {
  auto sub = sheaf.poset()->induced(subset);
  std::vector<std::size_t> dims;
  for (auto x : subset) dims.push_back(sheaf.stalk_dim(x));
  std::vector<Matrix> res;
  for (auto [i, j] : sub->covers()) res.push_back(sheaf.transition(subset[i], subset[j]));
  return PosetSheaf(sub, sheaf.field(), std::move(dims), std::move(res));
}

PosetSheaf extend_by_zero(const PosetPtr& space, const PointSet& subset, const PosetSheaf& sheaf) {
  if (!space->is_locally_closed(subset)) fail(ErrorCode::NotLocallyClosed, "extension by zero needs a locally closed subset");
  if (!(*sheaf.poset() == *space->induced(subset)))
    fail(ErrorCode::DimensionMismatch, "sheaf does not live on the induced subposet");
  const std::size_t n = space->size();
  std::vector<std::size_t> local(n, n);
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = i;
  std::vector<std::size_t> dims(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    if (local[x] < n) dims[x] = sheaf.stalk_dim(local[x]);
  std::vector<Matrix> res;
  for (auto [x, y] : space->covers()) {
    if (local[x] < n && local[y] < n)
      res.push_back(sheaf.transition(local[x], local[y]));
    else
      res.emplace_back(sheaf.field(), dims[y], dims[x]);
  }
  return PosetSheaf(space, sheaf.field(), std::move(dims), std::move(res));
}

PosetSheaf constant_on(const PosetPtr& space, const Field& field, const PointSet& subset, std::size_t dim) {
  return extend_by_zero(space, subset, PosetSheaf::constant(space->induced(subset), field, dim));
}

PosetSheaf tensor(const PosetSheaf& f, const PosetSheaf& g) {
  require_compatible(f, g);
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < f.size(); ++x) dims.push_back(f.stalk_dim(x) * g.stalk_dim(x));
  std::vector<Matrix> res;
  for (std::size_t i = 0; i < f.restrictions().size(); ++i) res.push_back(kron(f.res(i), g.res(i)));
  return PosetSheaf(f.poset(), f.field(), std::move(dims), std::move(res));
}

PosetSheaf direct_sum(const PosetSheaf& f, const PosetSheaf& g) {
  require_compatible(f, g);
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < f.size(); ++x) dims.push_back(f.stalk_dim(x) + g.stalk_dim(x));
  std::vector<Matrix> res;
  for (std::size_t i = 0; i < f.restrictions().size(); ++i) res.push_back(direct_sum(f.res(i), g.res(i)));
  return PosetSheaf(f.poset(), f.field(), std::move(dims), std::move(res));
}

NaturalMaps natural_maps(const PosetSheaf& f, const PosetSheaf& g, const PointSet& open) {
  require_compatible(f, g);
  const auto& poset = *f.poset();
  if (!poset.is_up_set(open)) fail(ErrorCode::NotUpSet, "natural maps requested over a set that is not open");
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (auto y : open) {
    offsets.push_back(total);
    total += f.stalk_dim(y) * g.stalk_dim(y);
  }
  std::vector<bool> in(poset.size(), false);
  for (auto x : open) in[x] = true;
  const Field& k = f.field();
  Matrix constraints(k, 0, total);
  const auto& covers = poset.covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [y, z] = covers[i];
    if (!in[y] || !in[z]) continue;
    const std::size_t fy = f.stalk_dim(y), fz = f.stalk_dim(z), gy = g.stalk_dim(y), gz = g.stalk_dim(z);
    const std::size_t oy = offsets[position_in(open, y)], oz = offsets[position_in(open, z)];
    // G_res * phi_y - phi_z * F_res = 0, a gz x fy system
    Matrix block(k, gz * fy, total);
    for (std::size_t r = 0; r < gz; ++r) {
      for (std::size_t c = 0; c < fy; ++c) {
        const std::size_t row = r * fy + c;
        for (std::size_t m = 0; m < gy; ++m) block.set(row, oy + m * fy + c, g.res(i)(r, m));
        for (std::size_t m = 0; m < fz; ++m) {
          const std::size_t col = oz + r * fz + m;
          block.set(row, col, k.sub(block(row, col), f.res(i)(m, c)));
        }
      }
    }
    constraints = vstack(constraints, block);
  }
  return NaturalMaps{open, std::move(offsets), kernel(constraints)};
}

PosetSheaf sheaf_hom(const PosetSheaf& f, const PosetSheaf& g) {
  const auto& poset = *f.poset();
  std::vector<NaturalMaps> stalks;
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < poset.size(); ++x) {
    stalks.push_back(natural_maps(f, g, poset.up_set(x)));
    dims.push_back(stalks.back().space.dim());
  }
  std::vector<Matrix> res;
  for (auto [x, y] : poset.covers()) {
    const NaturalMaps& big = stalks[x];
    const NaturalMaps& small = stalks[y];
    Matrix m(f.field(), small.space.dim(), big.space.dim());
    for (std::size_t k = 0; k < big.space.dim(); ++k) {
      Vector v = big.space.basis().row(k);
      Vector restricted;
      for (auto z : small.points) {
        std::size_t off = big.offsets[position_in(big.points, z)];
        for (std::size_t r = 0; r < f.stalk_dim(z) * g.stalk_dim(z); ++r) restricted.push_back(v[off + r]);
      }
      Vector c = small.space.coordinates(restricted);
      for (std::size_t r = 0; r < c.size(); ++r) m.set(r, k, c[r]);
    }
    res.push_back(std::move(m));
  }
  return PosetSheaf(f.poset(), f.field(), std::move(dims), std::move(res));
}

SheafMorphism morphism_from_vector(const PosetSheaf& f, const PosetSheaf& g, const Vector& v) {
  std::vector<Matrix> comp;
  std::size_t off = 0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const std::size_t rows = g.stalk_dim(x), cols = f.stalk_dim(x);
    if (off + rows * cols > v.size()) fail(ErrorCode::DimensionMismatch, "natural-map vector too short");
    comp.emplace_back(f.field(), rows, cols,
                      std::vector<FieldElem>(v.begin() + static_cast<std::ptrdiff_t>(off),
                                             v.begin() + static_cast<std::ptrdiff_t>(off + rows * cols)));
    off += rows * cols;
  }
  if (off != v.size()) fail(ErrorCode::DimensionMismatch, "natural-map vector too long");
  return SheafMorphism(f, g, std::move(comp));
}

Vector morphism_to_vector(const SheafMorphism& m) {
  Vector v;
  for (const auto& c : m.components()) v.insert(v.end(), c.entries().begin(), c.entries().end());
  return v;
}

std::vector<SheafMorphism> hom_global(const PosetSheaf& f, const PosetSheaf& g) {
  NaturalMaps all = natural_maps(f, g, f.poset()->all_points());
  std::vector<SheafMorphism> out;
  for (std::size_t k = 0; k < all.space.dim(); ++k) out.push_back(morphism_from_vector(f, g, all.space.basis().row(k)));
  return out;
}

bool is_locally_constant(const PosetSheaf& f) {
  for (const auto& r : f.restrictions())
    if (!is_invertible(r)) return false;
  return true;
}

Vector Subquotient::class_of(std::size_t x, const Vector& v) const {
  const Matrix& r = reps.at(x);
  Matrix generators = transpose(vstack(r, denominator.at(x).basis()));
  Vector c = solve(generators, v);
  c.resize(r.rows());
  return c;
}

Subquotient subquotient(const PosetSheaf& f, std::vector<Subspace> num, std::vector<Subspace> den) {
  const std::size_t n = f.size();
  if (num.size() != n || den.size() != n) fail(ErrorCode::DimensionMismatch, "need one subspace per point");
  for (std::size_t x = 0; x < n; ++x) {
    if (num[x].ambient_dim() != f.stalk_dim(x) || den[x].ambient_dim() != f.stalk_dim(x))
      fail(ErrorCode::DimensionMismatch, "subspace ambient dimension differs from the stalk");
    for (std::size_t k = 0; k < den[x].dim(); ++k)
      ensure(num[x].contains(den[x].basis().row(k)), "subquotient denominator not contained in numerator");
  }
  std::vector<Matrix> reps;
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < n; ++x) {
    reps.push_back(complement_in(den[x], num[x]));
    dims.push_back(reps.back().rows());
  }
  // class coordinates before the sheaf exists
  auto class_of = [&](std::size_t x, const Vector& v) {
    Vector c = solve(transpose(vstack(reps[x], den[x].basis())), v);
    c.resize(reps[x].rows());
    return c;
  };
  const auto& covers = f.poset()->covers();
  std::vector<Matrix> res;
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    for (std::size_t k = 0; k < den[x].dim(); ++k)
      ensure(den[y].contains(f.res(i) * den[x].basis().row(k)), "denominator not stable under restriction");
    Matrix m(f.field(), dims[y], dims[x]);
    for (std::size_t k = 0; k < dims[x]; ++k) {
      Vector image_k = f.res(i) * reps[x].row(k);
      ensure(num[y].contains(image_k), "numerator not stable under restriction");
      Vector c = class_of(y, image_k);
      for (std::size_t r = 0; r < c.size(); ++r) m.set(r, k, c[r]);
    }
    res.push_back(std::move(m));
  }
  PosetSheaf sheaf(f.poset(), f.field(), std::move(dims), std::move(res));
  return Subquotient{std::move(sheaf), std::move(num), std::move(den), std::move(reps)};
}

SubSheaf kernel_sheaf(const SheafMorphism& m) {
  const PosetSheaf& f = m.source();
  std::vector<Subspace> spaces;
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < f.size(); ++x) {
    spaces.push_back(kernel(m.at(x)));
    dims.push_back(spaces.back().dim());
  }
  const auto& covers = f.poset()->covers();
  std::vector<Matrix> res;
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    res.push_back(restrict_map(f.res(i), spaces[x], spaces[y]));
  }
  PosetSheaf sub(f.poset(), f.field(), std::move(dims), std::move(res));
  std::vector<Matrix> incl;
  for (const auto& s : spaces) incl.push_back(s.inclusion());
  SheafMorphism inclusion(sub, f, std::move(incl));
  return SubSheaf{std::move(sub), std::move(spaces), std::move(inclusion)};
}

PosetSheaf relabel(const PosetSheaf& f, const PosetPtr& relabelled_poset, const std::vector<std::size_t>& perm) {
  const auto& covers = f.poset()->covers();
  std::vector<std::size_t> dims(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) dims[perm[x]] = f.stalk_dim(x);
  std::vector<std::optional<Matrix>> res(covers.size());
  for (std::size_t i = 0; i < covers.size(); ++i) {
    auto [x, y] = covers[i];
    auto j = relabelled_poset->cover_index(perm[x], perm[y]);
    if (!j) fail(ErrorCode::DimensionMismatch, "relabelled poset does not match the permutation");
    res[*j] = f.res(i);
  }
  std::vector<Matrix> out;
  for (auto& r : res) out.push_back(std::move(*r));
  return PosetSheaf(relabelled_poset, f.field(), std::move(dims), std::move(out));
}

}  // namespace gdesc
