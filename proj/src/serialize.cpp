#include "galdesc/serialize.hpp"

#include <optional>

namespace gdesc {

JsonPath JsonPath::operator/(const std::string& key) const {
  JsonPath p;
  p.ptr_ = ptr_ + "/" + key;
  return p;
}

JsonPath JsonPath::operator/(std::size_t index) const { return *this / std::to_string(index); }

void JsonPath::error(const std::string& what) const {
  fail(ErrorCode::SchemaError, "at " + (ptr_.empty() ? std::string("/") : ptr_) + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const JsonPath& path) {
  if (!j.is_object()) path.error("expected an object");
  auto it = j.find(key);
  if (it == j.end()) (path / key).error("missing required key");
  return *it;
}

std::size_t get_size(const Json& j, const JsonPath& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    path.error("expected a non-negative integer");
  return j.get<std::size_t>();
}

std::int64_t get_int(const Json& j, const JsonPath& path) {
  if (!j.is_number_integer()) path.error("expected an integer");
  return j.get<std::int64_t>();
}

std::string get_string(const Json& j, const JsonPath& path) {
  if (!j.is_string()) path.error("expected a string");
  return j.get<std::string>();
}

const Json& get_array(const Json& j, const JsonPath& path) {
  if (!j.is_array()) path.error("expected an array");
  return j;
}

void require_schema_version(const Json& doc, const JsonPath& path) {
  const auto v = get_int(member(doc, "schema_version", path), path / "schema_version");
  if (v != kSchemaVersion)
    (path / "schema_version").error("unsupported schema version " + std::to_string(v) + " (this tool reads version " +
                                    std::to_string(kSchemaVersion) + ")");
}

namespace {

FieldElem parse_elem(const Field& f, const Json& j, const JsonPath& path) {
  const std::string s = get_string(j, path);
  try {
    return f.parse(s);
  } catch (const Error& e) {
    fail(e.code(), "at " + path.str() + ": " + e.what());
  }
}

}  // namespace

Json field_to_json(const Field& f, const std::vector<FieldElem>& hints) {
  switch (f.kind()) {
    case FieldKind::Rationals: return Json{{"kind", "rationals"}};
    case FieldKind::Prime: return Json{{"kind", "prime"}, {"p", f.characteristic()}};
    case FieldKind::Extension: break;
  }
  Json modulus = Json::array();
  for (const auto& c : f.modulus()) modulus.push_back(f.base().format(c));
  Json j{{"kind", "extension"}, {"base", field_to_json(f.base())}, {"modulus", modulus}, {"symbol", f.symbol()}};
  if (!hints.empty()) {
    Json h = Json::array();
    for (const auto& x : hints) h.push_back(f.format(x));
    j["automorphism_hints"] = h;
  }
  return j;
}

FieldSpec field_from_json(const Json& j, const JsonPath& path, bool assert_irreducible) {
  const std::string kind = get_string(member(j, "kind", path), path / "kind");
  if (kind == "rationals") return {Field::rationals(), {}};
  if (kind == "prime") {
    const auto p = get_int(member(j, "p", path), path / "p");
    try {
      return {Field::prime(p), {}};
    } catch (const Error& e) {
      fail(e.code(), "at " + (path / "p").str() + ": " + e.what());
    }
  }
  if (kind != "extension") (path / "kind").error("unknown field kind '" + kind + "'");
  const Field base = field_from_json(member(j, "base", path), path / "base", assert_irreducible).field;
  const Json& mj = get_array(member(j, "modulus", path), path / "modulus");
  std::vector<FieldElem> modulus;
  for (std::size_t i = 0; i < mj.size(); ++i) modulus.push_back(parse_elem(base, mj[i], path / "modulus" / i));
  const std::string symbol = get_string(member(j, "symbol", path), path / "symbol");
  FieldSpec spec{Field::extension(base, std::move(modulus), symbol, assert_irreducible), {}};
  if (auto it = j.find("automorphism_hints"); it != j.end()) {
    const Json& hj = get_array(*it, path / "automorphism_hints");
    for (std::size_t i = 0; i < hj.size(); ++i)
      spec.hints.push_back(parse_elem(spec.field, hj[i], path / "automorphism_hints" / i));
  }
  return spec;
}

Json group_to_json(const GaloisGroup& group) {
  Json j = Json::array();
  for (const auto& g : group.elements()) j.push_back(group.field().format(g.image()));
  return j;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().format(m(r, c)));
    rows.push_back(row);
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"rows", rows}};
}

Matrix matrix_from_json(const Json& j, const Field& f, const JsonPath& path) {
  const Json& shape = get_array(member(j, "shape", path), path / "shape");
  if (shape.size() != 2) (path / "shape").error("expected [rows, cols]");
  const std::size_t rows = get_size(shape[0], path / "shape" / 0);
  const std::size_t cols = get_size(shape[1], path / "shape" / 1);
  const Json& rj = get_array(member(j, "rows", path), path / "rows");
  if (rj.size() != rows) (path / "rows").error("expected " + std::to_string(rows) + " rows");
  std::vector<FieldElem> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = get_array(rj[r], path / "rows" / r);
    if (row.size() != cols) (path / "rows" / r).error("expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) entries.push_back(parse_elem(f, row[c], path / "rows" / r / c));
  }
  return Matrix(f, rows, cols, std::move(entries));
}

Json vector_to_json(const Field& f, const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(f.format(x));
  return j;
}

Json cocycle_to_json(const GStructure& gs, const GaloisGroup& group) {
  Json j = Json::array();
  for (std::size_t g = 0; g < group.size(); ++g)
    j.push_back(Json{{"aut", group.field().format(group[g].image())}, {"matrix", matrix_to_json(gs.cocycle[g])}});
  return j;
}

GStructure cocycle_from_json(const Json& j, std::size_t dim, const GaloisGroup& group, const JsonPath& path) {
  const Field& L = group.field();
  get_array(j, path);
  std::vector<std::optional<Matrix>> slots(group.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const JsonPath at = path / i;
    const FieldElem image = parse_elem(L, member(j[i], "aut", at), at / "aut");
    const auto g = group.index_of(image);
    if (!g) (at / "aut").error("'" + L.format(image) + "' is not the image of the generator under a group element");
    if (slots[*g]) (at / "aut").error("automorphism listed twice");
    Matrix m = matrix_from_json(member(j[i], "matrix", at), L, at / "matrix");
    if (m.rows() != dim || m.cols() != dim) (at / "matrix").error("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    slots[*g] = std::move(m);
  }
  GStructure gs{LSpace{L, dim}, {}};
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (!slots[g]) {
      if (g != GaloisGroup::identity())
        path.error("missing matrix for automorphism '" + L.format(group[g].image()) + "'");
      slots[g] = Matrix::identity(L, dim);
    }
    gs.cocycle.push_back(std::move(*slots[g]));
  }
  return gs;
}

Json gstructure_to_json(const GStructure& gs, const GaloisGroup& group) {
  return Json{{"dim", gs.space.dim}, {"cocycle", cocycle_to_json(gs, group)}};
}

GStructure gstructure_from_json(const Json& j, const GaloisGroup& group, const JsonPath& path) {
  const std::size_t dim = get_size(member(j, "dim", path), path / "dim");
  return cocycle_from_json(member(j, "cocycle", path), dim, group, path / "cocycle");
}

Json poset_to_json(const FinPoset& p) {
  Json covers = Json::array();
  for (auto [x, y] : p.covers()) covers.push_back({x, y});
  return Json{{"points", p.size()}, {"covers", covers}};
}

PosetPtr poset_from_json(const Json& j, const JsonPath& path) {
  const std::size_t n = get_size(member(j, "points", path), path / "points");
  const Json& cj = get_array(member(j, "covers", path), path / "covers");
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < cj.size(); ++i) {
    const Json& c = get_array(cj[i], path / "covers" / i);
    if (c.size() != 2) (path / "covers" / i).error("expected a pair [x, y]");
    const std::size_t x = get_size(c[0], path / "covers" / i / 0), y = get_size(c[1], path / "covers" / i / 1);
    if (x >= n || y >= n) (path / "covers" / i).error("point out of range");
    covers.emplace_back(x, y);
  }
  try {
    return FinPoset::from_covers(n, std::move(covers));
  } catch (const Error& e) {
    throw Error(e.code(), "at " + path.str() + ": " + e.what(), e.witness());
  }
}

Json monotone_map_to_json(const MonotoneMap& f) {
  return Json{{"source", poset_to_json(*f.source())}, {"target", poset_to_json(*f.target())}, {"image", f.image()}};
}

MonotoneMap monotone_map_from_json(const Json& j, const JsonPath& path) {
  PosetPtr source = poset_from_json(member(j, "source", path), path / "source");
  PosetPtr target = poset_from_json(member(j, "target", path), path / "target");
  const Json& ij = get_array(member(j, "image", path), path / "image");
  std::vector<std::size_t> image;
  for (std::size_t i = 0; i < ij.size(); ++i) image.push_back(get_size(ij[i], path / "image" / i));
  return MonotoneMap(std::move(source), std::move(target), std::move(image));
}

Json sheaf_to_json(const PosetSheaf& f) {
  Json res = Json::array();
  const auto& covers = f.poset()->covers();
  for (std::size_t i = 0; i < covers.size(); ++i)
    res.push_back(Json{{"cover", {covers[i].first, covers[i].second}}, {"matrix", matrix_to_json(f.res(i))}});
  return Json{{"poset", poset_to_json(*f.poset())}, {"stalk_dims", f.stalk_dims()}, {"restrictions", res}};
}

PosetSheaf sheaf_from_json(const Json& j, const Field& field, const JsonPath& path) {
  PosetPtr poset = poset_from_json(member(j, "poset", path), path / "poset");
  const Json& dj = get_array(member(j, "stalk_dims", path), path / "stalk_dims");
  if (dj.size() != poset->size()) (path / "stalk_dims").error("need one dimension per point");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) dims.push_back(get_size(dj[i], path / "stalk_dims" / i));
  const Json& rj = get_array(member(j, "restrictions", path), path / "restrictions");
  std::vector<std::optional<Matrix>> res(poset->covers().size());
  for (std::size_t i = 0; i < rj.size(); ++i) {
    const JsonPath at = path / "restrictions" / i;
    const Json& c = get_array(member(rj[i], "cover", at), at / "cover");
    if (c.size() != 2) (at / "cover").error("expected a pair [x, y]");
    const auto k = poset->cover_index(get_size(c[0], at / "cover" / 0), get_size(c[1], at / "cover" / 1));
    if (!k) (at / "cover").error("not a covering pair of the poset");
    if (res[*k]) (at / "cover").error("restriction given twice");
    res[*k] = matrix_from_json(member(rj[i], "matrix", at), field, at / "matrix");
  }
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < res.size(); ++k) {
    if (!res[k]) (path / "restrictions").error("missing restriction for cover [" + std::to_string(poset->covers()[k].first) +
                                              ", " + std::to_string(poset->covers()[k].second) + "]");
    out.push_back(std::move(*res[k]));
  }
  return PosetSheaf(std::move(poset), field, std::move(dims), std::move(out));
}

Json morphism_to_json(const SheafMorphism& m) {
  Json j = Json::array();
  for (const auto& c : m.components()) j.push_back(matrix_to_json(c));
  return j;
}

SheafMorphism morphism_from_json(const Json& j, const PosetSheaf& source, const PosetSheaf& target, const JsonPath& path) {
  get_array(j, path);
  if (j.size() != source.size()) path.error("need one component per point");
  std::vector<Matrix> comp;
  for (std::size_t i = 0; i < j.size(); ++i) comp.push_back(matrix_from_json(j[i], source.field(), path / i));
  return SheafMorphism(source, target, std::move(comp));
}

Json sheaf_structure_to_json(const SheafGStructure& s, const GaloisGroup& group) {
  Json j = Json::array();
  for (const auto& gs : s.pointwise) j.push_back(cocycle_to_json(gs, group));
  return j;
}

SheafGStructure sheaf_structure_from_json(const Json& j, const PosetSheaf& sheaf, const GaloisGroup& group,
                                          const JsonPath& path) {
  get_array(j, path);
  if (j.size() != sheaf.size()) path.error("need one cocycle per point");
  SheafGStructure s{sheaf, {}};
  for (std::size_t x = 0; x < j.size(); ++x) s.pointwise.push_back(cocycle_from_json(j[x], sheaf.stalk_dim(x), group, path / x));
  return s;
}

Json complex_to_json(const BoundedComplex& c) {
  Json terms = Json::array(), diffs = Json::array();
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
    terms.push_back(sheaf_to_json(c.term(d)));
    if (d < c.max_deg()) diffs.push_back(morphism_to_json(c.diff(d)));
  }
  return Json{{"min_deg", c.min_deg()}, {"terms", terms}, {"differentials", diffs}};
}

BoundedComplex complex_from_json(const Json& j, const Field& field, const JsonPath& path) {
  const int min_deg = static_cast<int>(get_int(member(j, "min_deg", path), path / "min_deg"));
  const Json& tj = get_array(member(j, "terms", path), path / "terms");
  if (tj.empty()) (path / "terms").error("a complex needs at least one term");
  std::vector<PosetSheaf> terms;
  for (std::size_t i = 0; i < tj.size(); ++i) terms.push_back(sheaf_from_json(tj[i], field, path / "terms" / i));
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (!(*terms[i].poset() == *terms[0].poset())) (path / "terms" / i).error("all terms must live on the same poset");
  const Json& dj = get_array(member(j, "differentials", path), path / "differentials");
  if (dj.size() + 1 != terms.size()) (path / "differentials").error("need one differential per consecutive pair of terms");
  std::vector<SheafMorphism> diffs;
  for (std::size_t i = 0; i < dj.size(); ++i)
    diffs.push_back(morphism_from_json(dj[i], terms[i], terms[i + 1], path / "differentials" / i));
  return BoundedComplex(min_deg, std::move(terms), std::move(diffs));
}

Json complex_structure_to_json(const StrictComplexGStructure& s, const GaloisGroup& group) {
  Json j = Json::array();
  for (const auto& t : s.terms) j.push_back(sheaf_structure_to_json(t, group));
  return j;
}

StrictComplexGStructure complex_structure_from_json(const Json& j, const BoundedComplex& c, const GaloisGroup& group,
                                                    const JsonPath& path) {
  get_array(j, path);
  const std::size_t n = static_cast<std::size_t>(c.max_deg() - c.min_deg() + 1);
  if (j.size() != n) path.error("need one structure per term");
  StrictComplexGStructure s{c.min_deg(), {}};
  for (std::size_t i = 0; i < n; ++i)
    s.terms.push_back(sheaf_structure_from_json(j[i], c.term(c.min_deg() + static_cast<int>(i)), group, path / i));
  return s;
}

Json gluing_to_json(const GluingData& g) {
  return Json{{"monodromy", matrix_to_json(g.ls.monodromy())},
              {"phi_dim", g.phi_dim},
              {"u", matrix_to_json(g.u)},
              {"v", matrix_to_json(g.v)}};
}

GluingData gluing_from_json(const Json& j, const Field& field, const JsonPath& path) {
  Matrix t = matrix_from_json(member(j, "monodromy", path), field, path / "monodromy");
  const std::size_t phi = get_size(member(j, "phi_dim", path), path / "phi_dim");
  Matrix u = matrix_from_json(member(j, "u", path), field, path / "u");
  Matrix v = matrix_from_json(member(j, "v", path), field, path / "v");
  return GluingData{LocalSystemDisc(std::move(t)), phi, std::move(u), std::move(v)};
}

Json gluing_structure_to_json(const GluingGStructure& s, const GaloisGroup& group) {
  return Json{{"v", cocycle_to_json(s.v, group)}, {"phi", cocycle_to_json(s.phi, group)}};
}

GluingGStructure gluing_structure_from_json(const Json& j, const GluingData& g, const GaloisGroup& group,
                                            const JsonPath& path) {
  return GluingGStructure{cocycle_from_json(member(j, "v", path), g.ls.dim(), group, path / "v"),
                          cocycle_from_json(member(j, "phi", path), g.phi_dim, group, path / "phi")};
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return Json{{"name", r.name}, {"pass", r.pass}, {"checks", checks}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gdesc
