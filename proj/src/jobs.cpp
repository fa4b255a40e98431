#include "galdesc/jobs.hpp"

#include <map>
#include <sstream>

#include "galdesc/selftest.hpp"

namespace gdesc {

namespace {

std::string str(std::size_t n) { return std::to_string(n); }
std::string str(int n) { return std::to_string(n); }

std::string pair_name(const std::string& p, const std::string& what, std::size_t x, std::size_t y) {
  return p + what + "[" + str(x) + "," + str(y) + "]";
}

struct Context {
  FieldSpec spec;
  std::optional<GaloisGroup> group;

  const Field& L() const { return spec.field; }
  const Field& K() const { return spec.field.base(); }
  const GaloisGroup& G() const { return *group; }
};

Context load_context(const Json& doc, const JobOptions& options, bool need_extension) {
  const JsonPath root;
  require_schema_version(doc, root);
  Context c{field_from_json(member(doc, "field", root), root / "field", options.assert_irreducible), std::nullopt};
  if (c.spec.field.is_extension())
    c.group = GaloisGroup::compute(c.spec.field, c.spec.hints);
  else if (need_extension)
    (root / "field").error("this command needs an extension field L over its base K");
  return c;
}

// Certification of structures and descent results. Names are prefixed so one
// certificate can carry several objects; "A[g]" is the matrix of the g-th
// group element, the identity being implicit.

Factor cocycle_factor(const std::string& p, std::size_t g, std::size_t n) {
  return g == GaloisGroup::identity() ? Id(n) : W(p + "A[" + str(g) + "]");
}

void certify_structure(CertificateBuilder& cb, const std::string& p, const GStructure& gs, const GaloisGroup& group) {
  const std::size_t n = gs.space.dim;
  for (std::size_t g = 1; g < group.size(); ++g) {
    cb.witness(p + "A[" + str(g) + "]", gs.cocycle[g]);
    cb.invertible(p + "invertible[" + str(g) + "]", prod({W(p + "A[" + str(g) + "]")}));
  }
  for (std::size_t g = 1; g < group.size(); ++g)
    for (std::size_t h = 1; h < group.size(); ++h)
      cb.eq(p + "cocycle[" + str(g) + "," + str(h) + "]", prod({cocycle_factor(p, group.compose(g, h), n)}),
            prod({cocycle_factor(p, g, n), conj(cocycle_factor(p, h, n), g)}));
}

void certify_kform(CertificateBuilder& cb, const std::string& p, const GStructure& gs, const KForm& form,
                   const GaloisGroup& group) {
  const std::size_t n = gs.space.dim;
  cb.witness(p + "kbasis", form.kbasis);
  cb.witness(p + "kbasis_inverse", form.kbasis_inverse);
  cb.eq(p + "kbasis_invertible", prod({W(p + "kbasis"), W(p + "kbasis_inverse")}), prod({Id(n)}));
  for (std::size_t g = 1; g < group.size(); ++g)
    cb.eq(p + "invariant[" + str(g) + "]", prod({cocycle_factor(p, g, n), conj(WT(p + "kbasis"), g)}),
          prod({WT(p + "kbasis")}));
}

void certify_sheaf_structure(CertificateBuilder& cb, const std::string& p, const SheafGStructure& sgs,
                             const GaloisGroup& group) {
  const PosetSheaf& f = sgs.sheaf;
  for (std::size_t x = 0; x < f.size(); ++x) certify_structure(cb, p + "x" + str(x) + ".", sgs.pointwise[x], group);
  const auto& covers = f.poset()->covers();
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto [x, y] = covers[k];
    const std::string r = pair_name(p, "res", x, y);
    cb.witness(r, f.res(k));
    for (std::size_t g = 1; g < group.size(); ++g)
      cb.eq(pair_name(p, "compat", x, y) + "[" + str(g) + "]",
            prod({W(r), cocycle_factor(p + "x" + str(x) + ".", g, f.stalk_dim(x))}),
            prod({cocycle_factor(p + "x" + str(y) + ".", g, f.stalk_dim(y)), conj(W(r), g)}));
  }
}

void certify_sheaf_kform(CertificateBuilder& cb, const std::string& p, const SheafGStructure& sgs,
                         const SheafKForm& form, const GaloisGroup& group) {
  const PosetSheaf& f = sgs.sheaf;
  for (std::size_t x = 0; x < f.size(); ++x)
    certify_kform(cb, p + "x" + str(x) + ".", sgs.pointwise[x], form.pointwise[x], group);
  const auto& covers = f.poset()->covers();
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto [x, y] = covers[k];
    cb.witness(pair_name(p, "kres", x, y), form.ksheaf.res(k));
    cb.eq(pair_name(p, "square", x, y), prod({W(pair_name(p, "res", x, y)), WT(p + "x" + str(x) + ".kbasis")}),
          prod({WT(p + "x" + str(y) + ".kbasis"), W(pair_name(p, "kres", x, y))}));
  }
}

std::string deg_prefix(int d) { return "deg" + std::to_string(d) + "."; }

std::string diff_name(const std::string& what, int d, std::size_t x) {
  return what + std::to_string(d) + "[" + str(x) + "]";
}

void certify_complex_structure(CertificateBuilder& cb, const BoundedComplex& c, const StrictComplexGStructure& s,
                               const GaloisGroup& group) {
  for (int d = c.min_deg(); d <= c.max_deg(); ++d)
    certify_sheaf_structure(cb, deg_prefix(d), s.terms[static_cast<std::size_t>(d - c.min_deg())], group);
  for (int d = c.min_deg(); d < c.max_deg(); ++d) {
    const SheafMorphism m = c.diff(d);
    for (std::size_t x = 0; x < m.source().size(); ++x) {
      const std::string dn = diff_name("d", d, x);
      cb.witness(dn, m.at(x));
      const std::string px = deg_prefix(d) + "x" + str(x) + ".", qx = deg_prefix(d + 1) + "x" + str(x) + ".";
      for (std::size_t g = 1; g < group.size(); ++g)
        cb.eq("strict" + std::to_string(d) + "[" + str(x) + "," + str(g) + "]",
              prod({W(dn), cocycle_factor(px, g, m.source().stalk_dim(x))}),
              prod({cocycle_factor(qx, g, m.target().stalk_dim(x)), conj(W(dn), g)}));
    }
  }
  for (int d = c.min_deg(); d + 1 < c.max_deg(); ++d)
    for (std::size_t x = 0; x < c.poset()->size(); ++x)
      cb.eq(diff_name("dd", d, x), prod({W(diff_name("d", d + 1, x)), W(diff_name("d", d, x))}),
            prod({Zero(c.term(d + 2).stalk_dim(x), c.term(d).stalk_dim(x))}));
}

void certify_complex_kform(CertificateBuilder& cb, const BoundedComplex& c, const StrictComplexGStructure& s,
                           const ComplexKForm& form, const GaloisGroup& group) {
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
    const auto i = static_cast<std::size_t>(d - c.min_deg());
    certify_sheaf_kform(cb, deg_prefix(d), s.terms[i], form.termwise[i], group);
  }
  for (int d = c.min_deg(); d < c.max_deg(); ++d) {
    const SheafMorphism kd = form.kcomplex.diff(d);
    for (std::size_t x = 0; x < kd.source().size(); ++x) {
      cb.witness(diff_name("kd", d, x), kd.at(x));
      cb.eq(diff_name("square_d", d, x), prod({W(diff_name("d", d, x)), WT(deg_prefix(d) + "x" + str(x) + ".kbasis")}),
            prod({WT(deg_prefix(d + 1) + "x" + str(x) + ".kbasis"), W(diff_name("kd", d, x))}));
    }
  }
}

/// Witnesses T, u, v, psi (inclusion), t and the identities fixing psi as the
/// generalized 1-eigenspace together with the gluing relation.
void certify_gluing(CertificateBuilder& cb, const std::string& p, const GluingData& gd) {
  const NearbyCycles nc = nearby_unipotent(gd.ls);
  const std::size_t n = gd.ls.dim(), m = nc.psi.dim();
  cb.witness(p + "T", gd.ls.monodromy());
  cb.witness(p + "u", gd.u);
  cb.witness(p + "v", gd.v);
  cb.witness(p + "psi", nc.psi.inclusion());
  cb.witness(p + "t", nc.t_action);
  cb.witness(p + "T_minus_one", gd.ls.monodromy() - Matrix::identity(gd.ls.field(), n));
  cb.invertible(p + "T_invertible", prod({W(p + "T")}));
  cb.eq(p + "T_minus_one", prod({W(p + "T_minus_one")}), minus(prod({W(p + "T")}), prod({Id(n)})));
  cb.eq(p + "psi_invariant", prod({W(p + "T"), W(p + "psi")}), prod({W(p + "psi"), W(p + "t")}));
  cb.rank(p + "psi_independent", prod({W(p + "psi")}), m);
  if (n > 0) {
    std::vector<Factor> power(n, W(p + "T_minus_one"));
    cb.rank(p + "psi_is_generalized_eigenspace", prod(power), n - m);
    power.push_back(W(p + "psi"));
    cb.eq(p + "psi_killed", prod(power), prod({Zero(n, m)}));
  }
  cb.eq(p + "relation", prod({W(p + "v"), W(p + "u")}), minus(prod({Id(m)}), prod({W(p + "t")})));
}

void certify_gluing_structure(CertificateBuilder& cb, const std::string& p, const GluingData& gd,
                              const GluingGStructure& s, const GaloisGroup& group) {
  certify_structure(cb, p + "V.", s.v, group);
  certify_structure(cb, p + "phi.", s.phi, group);
  const GStructure ps = psi_structure(gd, s, group);
  certify_structure(cb, p + "psi.", ps, group);
  const std::size_t n = gd.ls.dim(), m = ps.space.dim, f = gd.phi_dim;
  for (std::size_t g = 1; g < group.size(); ++g) {
    const std::string gs = "[" + str(g) + "]";
    const Factor av = cocycle_factor(p + "V.", g, n), ap = cocycle_factor(p + "phi.", g, f),
                 as = cocycle_factor(p + "psi.", g, m);
    cb.eq(p + "T_equivariant" + gs, prod({av, conj(W(p + "T"), g)}), prod({W(p + "T"), av}));
    cb.eq(p + "psi_stable" + gs, prod({av, conj(W(p + "psi"), g)}), prod({W(p + "psi"), as}));
    cb.eq(p + "u_equivariant" + gs, prod({ap, conj(W(p + "u"), g)}), prod({W(p + "u"), as}));
    cb.eq(p + "v_equivariant" + gs, prod({as, conj(W(p + "v"), g)}), prod({W(p + "v"), ap}));
  }
}

void certify_gluing_kform(CertificateBuilder& cb, const GluingData& gd, const GluingGStructure& s,
                          const GluingKForm& form, const GaloisGroup& group) {
  certify_kform(cb, "V.", s.v, form.v_form, group);
  certify_kform(cb, "phi.", s.phi, form.phi_form, group);
  certify_gluing(cb, "k.", form.kdata);
  const Field& L = gd.ls.field();
  const NearbyCycles psi = nearby_unipotent(gd.ls), psi_k = nearby_unipotent(form.kdata.ls);
  const Matrix image = transpose(form.v_form.kbasis) * embed_matrix(psi_k.psi.inclusion(), L);
  Matrix a_psi(L, psi.psi.dim(), image.cols());
  for (std::size_t k = 0; k < image.cols(); ++k) {
    const Vector c = psi.psi.coordinates(image.col(k));
    for (std::size_t r = 0; r < c.size(); ++r) a_psi.set(r, k, c[r]);
  }
  cb.witness("a_psi", a_psi);
  cb.eq("square_T", prod({WT("V.kbasis"), W("k.T")}), prod({W("T"), WT("V.kbasis")}));
  cb.eq("square_psi", prod({W("psi"), W("a_psi")}), prod({WT("V.kbasis"), W("k.psi")}));
  cb.invertible("a_psi_invertible", prod({W("a_psi")}));
  cb.eq("square_u", prod({WT("phi.kbasis"), W("k.u")}), prod({W("u"), W("a_psi")}));
  cb.eq("square_v", prod({W("a_psi"), W("k.v")}), prod({W("v"), WT("phi.kbasis")}));
}

/// Comparison morphism between two sheaves: commuting squares and pointwise invertibility.
void certify_comparison(CertificateBuilder& cb, const SheafMorphism& m) {
  const PosetSheaf &a = m.source(), &b = m.target();
  const auto& covers = a.poset()->covers();
  for (std::size_t x = 0; x < a.size(); ++x) {
    cb.witness("c[" + str(x) + "]", m.at(x));
    cb.invertible("c_invertible[" + str(x) + "]", prod({W("c[" + str(x) + "]")}));
  }
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto [x, y] = covers[k];
    cb.witness(pair_name("", "lhs.res", x, y), a.res(k));
    cb.witness(pair_name("", "rhs.res", x, y), b.res(k));
    cb.eq(pair_name("", "c_commutes", x, y), prod({W(pair_name("", "rhs.res", x, y)), W("c[" + str(x) + "]")}),
          prod({W("c[" + str(y) + "]"), W(pair_name("", "lhs.res", x, y))}));
  }
}

/// Base change of a K-sheaf: every L restriction equals the embedded K one.
void certify_base_change(CertificateBuilder& cb, const std::string& p, const PosetSheaf& k) {
  const auto& covers = k.poset()->covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    const auto [x, y] = covers[i];
    cb.witness(pair_name(p, "input.res", x, y), k.res(i));
    cb.eq(pair_name(p, "base_change", x, y), prod({W(pair_name(p, "res", x, y))}),
          prod({W(pair_name(p, "input.res", x, y))}));
  }
}

Json kbasis_list(const std::vector<KForm>& forms) {
  Json j = Json::array();
  for (const auto& f : forms) j.push_back(matrix_to_json(f.kbasis));
  return j;
}

// Jobs. Each fills the builder and returns the pass flag plus a summary.

struct Outcome {
  bool pass = true;
  std::string summary;
};

using Builder = std::optional<CertificateBuilder>;

const std::map<std::string, std::string>& operations() {
  static const std::map<std::string, std::string> ops{
      {"extend", "extension of scalars with the natural semilinear structure"},
      {"descend-vect", "invariant-kernel descent of a semilinear vector space"},
      {"descend-sheaf", "pointwise descent of a sheaf with semilinear structure"},
      {"descend-complex", "termwise descent of a complex with strict semilinear structure"},
      {"descend-gluing", "descent of gluing data with semilinear structure"},
      {"check-gstructure", "cocycle and compatibility check of a semilinear structure"},
      {"check-compat", "comparison of an operation with extension of scalars"},
      {"hom-basis", "basis of global morphisms between sheaves"},
      {"selftest", "randomized invariant suites"},
      {"verify", "re-evaluation of certificate claims"},
  };
  return ops;
}

Builder& open(Builder& cb, const std::string& command, const Context& c) {
  cb.emplace(command, operations().at(command), c.L(), c.group ? &*c.group : nullptr, c.spec.hints);
  return cb;
}

Outcome job_extend(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "extend", c);
  const JsonPath root;
  Json& result = cb->result();
  if (doc.contains("dim")) {
    const std::size_t n = get_size(doc["dim"], root / "dim");
    const GStructure gs = extend_scalars(n, c.G());
    certify_structure(*cb, "", gs, c.G());
    result["structure"] = gstructure_to_json(gs, c.G());
    return {true, "extend: L^" + str(n) + " with its natural structure"};
  }
  if (doc.contains("sheaf")) {
    const PosetSheaf k = sheaf_from_json(doc["sheaf"], c.K(), root / "sheaf");
    const SheafGStructure s = extend_sheaf(k, c.G());
    certify_sheaf_structure(*cb, "", s, c.G());
    certify_base_change(*cb, "", k);
    result["sheaf"] = sheaf_to_json(s.sheaf);
    result["structure"] = sheaf_structure_to_json(s, c.G());
    return {true, "extend: sheaf with total dimension " + str(s.sheaf.total_dim())};
  }
  if (doc.contains("complex")) {
    const BoundedComplex k = complex_from_json(doc["complex"], c.K(), root / "complex");
    const ExtendedComplex e = extend_complex(k, c.G());
    certify_complex_structure(*cb, e.complex, e.structure, c.G());
    for (int d = k.min_deg(); d <= k.max_deg(); ++d) certify_base_change(*cb, deg_prefix(d), k.term(d));
    for (int d = k.min_deg(); d < k.max_deg(); ++d)
      for (std::size_t x = 0; x < k.poset()->size(); ++x) {
        cb->witness(diff_name("input.d", d, x), k.diff(d).at(x));
        cb->eq(diff_name("base_change_d", d, x), prod({W(diff_name("d", d, x))}), prod({W(diff_name("input.d", d, x))}));
      }
    result["complex"] = complex_to_json(e.complex);
    result["structure"] = complex_structure_to_json(e.structure, c.G());
    return {true, "extend: complex in degrees " + str(k.min_deg()) + ".." + str(k.max_deg())};
  }
  if (doc.contains("gluing")) {
    const GluingData k = gluing_from_json(doc["gluing"], c.K(), root / "gluing");
    check_gluing(k);
    const ExtendedGluing e = extend_gluing(k, c.G());
    certify_gluing(*cb, "", e.data);
    certify_gluing(*cb, "input.", k);
    certify_gluing_structure(*cb, "", e.data, e.structure, c.G());
    for (const char* name : {"T", "u", "v", "psi", "t"})
      cb->eq(std::string("base_change.") + name, prod({W(name)}), prod({W(std::string("input.") + name)}));
    result["gluing"] = gluing_to_json(e.data);
    result["structure"] = gluing_structure_to_json(e.structure, c.G());
    return {true, "extend: gluing data with dim V = " + str(k.ls.dim()) + ", dim psi = " +
                      str(nearby_unipotent(k.ls).psi.dim())};
  }
  root.error("expected one of the keys dim, sheaf, complex, gluing");
}

Outcome job_descend_vect(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "descend-vect", c);
  const GStructure gs = gstructure_from_json(member(doc, "structure", {}), c.G(), JsonPath() / "structure");
  const KForm form = descend(gs, c.G());
  certify_structure(*cb, "", gs, c.G());
  certify_kform(*cb, "", gs, form, c.G());
  cb->result()["kdim"] = form.kdim;
  cb->result()["kbasis"] = matrix_to_json(form.kbasis);
  return {true, "descend-vect: K-form of dimension " + str(form.kdim)};
}

Outcome job_descend_sheaf(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "descend-sheaf", c);
  const JsonPath root;
  const PosetSheaf f = sheaf_from_json(member(doc, "sheaf", root), c.L(), root / "sheaf");
  const SheafGStructure s = sheaf_structure_from_json(member(doc, "structure", root), f, c.G(), root / "structure");
  const SheafKForm form = descend_sheaf(s, c.G());
  certify_sheaf_structure(*cb, "", s, c.G());
  certify_sheaf_kform(*cb, "", s, form, c.G());
  const Report r = verify_sheaf_descent(s, form, c.G());
  cb->report(r);
  cb->result()["ksheaf"] = sheaf_to_json(form.ksheaf);
  cb->result()["kbasis"] = kbasis_list(form.pointwise);
  return {r.pass, std::string("descend-sheaf: ") + (r.pass ? "pass" : "fail") + ", total K-dimension " +
                      str(form.ksheaf.total_dim())};
}

Outcome job_descend_complex(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "descend-complex", c);
  const JsonPath root;
  const BoundedComplex cx = complex_from_json(member(doc, "complex", root), c.L(), root / "complex");
  const StrictComplexGStructure s = complex_structure_from_json(member(doc, "structure", root), cx, c.G(), root / "structure");
  check_complex_gstructure(cx, s, c.G());
  const ComplexKForm form = descend_complex_strict(cx, s, c.G());
  certify_complex_structure(*cb, cx, s, c.G());
  certify_complex_kform(*cb, cx, s, form, c.G());
  bool pass = true;
  if (cx.max_deg() == cx.min_deg() + 1) {
    const Report r = two_term_descent_via_cohomology(cx, s, c.G());
    cb->report(r);
    pass = r.pass;
  }
  Json kb = Json::array();
  for (const auto& t : form.termwise) kb.push_back(kbasis_list(t.pointwise));
  cb->result()["kcomplex"] = complex_to_json(form.kcomplex);
  cb->result()["kbasis"] = kb;
  return {pass, std::string("descend-complex: ") + (pass ? "pass" : "fail") + ", degrees " + str(cx.min_deg()) +
                    ".." + str(cx.max_deg())};
}

Outcome job_descend_gluing(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "descend-gluing", c);
  const JsonPath root;
  const GluingData gd = gluing_from_json(member(doc, "gluing", root), c.L(), root / "gluing");
  const GluingGStructure s = gluing_structure_from_json(member(doc, "structure", root), gd, c.G(), root / "structure");
  check_gluing(gd);
  const GluingKForm form = descend_gluing(gd, s, c.G());
  certify_gluing(*cb, "", gd);
  certify_gluing_structure(*cb, "", gd, s, c.G());
  certify_gluing_kform(*cb, gd, s, form, c.G());
  const Report r = verify_gluing_descent(gd, s, form, c.G());
  cb->report(r);
  cb->result()["kgluing"] = gluing_to_json(form.kdata);
  cb->result()["kbasis_v"] = matrix_to_json(form.v_form.kbasis);
  cb->result()["kbasis_phi"] = matrix_to_json(form.phi_form.kbasis);
  return {r.pass, std::string("descend-gluing: ") + (r.pass ? "pass" : "fail")};
}

Outcome job_check_gstructure(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "check-gstructure", c);
  const JsonPath root;
  const Json& sj = member(doc, "structure", root);
  if (doc.contains("sheaf")) {
    const PosetSheaf f = sheaf_from_json(doc["sheaf"], c.L(), root / "sheaf");
    const SheafGStructure s = sheaf_structure_from_json(sj, f, c.G(), root / "structure");
    check_sheaf_gstructure(s, c.G());
    certify_sheaf_structure(*cb, "", s, c.G());
    return {true, "check-gstructure: sheaf structure is valid"};
  }
  if (doc.contains("complex")) {
    const BoundedComplex cx = complex_from_json(doc["complex"], c.L(), root / "complex");
    const StrictComplexGStructure s = complex_structure_from_json(sj, cx, c.G(), root / "structure");
    check_complex_gstructure(cx, s, c.G());
    certify_complex_structure(*cb, cx, s, c.G());
    return {true, "check-gstructure: strict complex structure is valid"};
  }
  if (doc.contains("gluing")) {
    const GluingData gd = gluing_from_json(doc["gluing"], c.L(), root / "gluing");
    const GluingGStructure s = gluing_structure_from_json(sj, gd, c.G(), root / "structure");
    check_gluing(gd);
    check_gluing_gstructure(gd, s, c.G());
    certify_gluing(*cb, "", gd);
    certify_gluing_structure(*cb, "", gd, s, c.G());
    return {true, "check-gstructure: gluing structure is valid"};
  }
  const GStructure gs = gstructure_from_json(sj, c.G(), root / "structure");
  const GStructureCertificate cert = check_gstructure(gs, c.G());
  certify_structure(*cb, "", gs, c.G());
  cb->result()["checked_identities"] = cert.checked.size();
  return {true, "check-gstructure: cocycle is valid (" + str(cert.checked.size()) + " identities)"};
}

Outcome job_check_compat(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, true);
  open(cb, "check-compat", c);
  const JsonPath root;
  const std::string kind = get_string(member(doc, "kind", root), root / "kind");
  cb->result()["kind"] = kind;
  Report r;
  if (kind == "pullback" || kind == "pushforward") {
    const MonotoneMap f = monotone_map_from_json(member(doc, "map", root), root / "map");
    const PosetSheaf k = sheaf_from_json(member(doc, "sheaf", root), c.K(), root / "sheaf");
    const PosetPtr& expected = kind == "pullback" ? f.target() : f.source();
    if (!(*k.poset() == *expected))
      (root / "sheaf" / "poset").error(kind == "pullback" ? "the sheaf must live on the map's target"
                                                          : "the sheaf must live on the map's source");
    r = kind == "pullback" ? check_compat_pullback(f, k, c.G()) : check_compat_pushforward(f, k, c.G());
    if (r.pass)
      certify_comparison(*cb, kind == "pullback" ? pullback_comparison(f, k, c.G()) : pushforward_comparison(f, k, c.G()));
  } else if (kind == "hom") {
    const PosetSheaf a = sheaf_from_json(member(doc, "source", root), c.K(), root / "source");
    const PosetSheaf b = sheaf_from_json(member(doc, "target", root), c.K(), root / "target");
    if (!(*a.poset() == *b.poset())) (root / "target" / "poset").error("source and target must share a poset");
    r = check_compat_hom(a, b, c.G());
    const auto kb = hom_global(a, b);
    const auto lb = hom_global(base_change(a, c.L()), base_change(b, c.L()));
    cb->result()["dim_K"] = kb.size();
    cb->result()["dim_L"] = lb.size();
    if (r.pass) {
      certify_comparison(*cb, hom_comparison(a, b, c.G()));
      if (!kb.empty()) {
        std::vector<Vector> rows;
        for (const auto& m : kb) rows.push_back(morphism_to_vector(m));
        const Matrix basis_k = Matrix::from_rows(c.K(), rows.front().size(), rows);
        rows.clear();
        for (const auto& m : lb) rows.push_back(morphism_to_vector(m));
        const Matrix basis_l = Matrix::from_rows(c.L(), rows.front().size(), rows);
        cb->witness("basis_K", basis_k);
        cb->witness("basis_L", basis_l);
        cb->rank("basis_L_independent", prod({W("basis_L")}), lb.size());
        cb->rank("base_change_bijective_on_bases", prod({W("basis_K")}), lb.size());
      }
    }
  } else if (kind == "locally_constant") {
    const PosetSheaf f = sheaf_from_json(member(doc, "sheaf", root), c.L(), root / "sheaf");
    const SheafGStructure s = sheaf_structure_from_json(member(doc, "structure", root), f, c.G(), root / "structure");
    r = check_locally_constant_descent(s, c.G());
    const SheafKForm form = descend_sheaf(s, c.G());
    certify_sheaf_structure(*cb, "", s, c.G());
    certify_sheaf_kform(*cb, "", s, form, c.G());
    cb->result()["locally_constant"] = is_locally_constant(f);
    cb->result()["ksheaf"] = sheaf_to_json(form.ksheaf);
  } else {
    (root / "kind").error("unknown kind '" + kind + "' (expected pullback, pushforward, hom or locally_constant)");
  }
  cb->report(r);
  return {r.pass, "check-compat " + kind + ": " + (r.pass ? "pass" : "fail")};
}

Outcome job_hom_basis(const Json& doc, const JobOptions& o, Builder& cb) {
  const Context c = load_context(doc, o, false);
  open(cb, "hom-basis", c);
  const JsonPath root;
  const PosetSheaf a = sheaf_from_json(member(doc, "source", root), c.L(), root / "source");
  const PosetSheaf b = sheaf_from_json(member(doc, "target", root), c.L(), root / "target");
  if (!(*a.poset() == *b.poset())) (root / "target" / "poset").error("source and target must share a poset");
  const auto basis = hom_global(a, b);
  const auto& covers = a.poset()->covers();
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto [x, y] = covers[k];
    cb->witness(pair_name("", "F.res", x, y), a.res(k));
    cb->witness(pair_name("", "G.res", x, y), b.res(k));
  }
  Json list = Json::array();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string p = "h" + str(i);
    for (std::size_t x = 0; x < a.size(); ++x) cb->witness(p + "[" + str(x) + "]", basis[i].at(x));
    for (std::size_t k = 0; k < covers.size(); ++k) {
      const auto [x, y] = covers[k];
      cb->eq(pair_name(p + ".", "commutes", x, y),
             prod({W(pair_name("", "G.res", x, y)), W(p + "[" + str(x) + "]")}),
             prod({W(p + "[" + str(y) + "]"), W(pair_name("", "F.res", x, y))}));
    }
    list.push_back(morphism_to_json(basis[i]));
    rows.push_back(morphism_to_vector(basis[i]));
  }
  if (!basis.empty()) {
    cb->witness("basis_vectors", Matrix::from_rows(c.L(), rows.front().size(), rows));
    cb->rank("basis_independent", prod({W("basis_vectors")}), basis.size());
  }
  cb->result()["dim"] = basis.size();
  cb->result()["basis"] = list;
  return {true, "hom-basis: " + str(basis.size()) + " basis morphisms"};
}

Json bare_certificate(const std::string& command, const std::string& status) {
  const auto& ops = operations();
  auto it = ops.find(command);
  return Json{{"schema_version", kSchemaVersion},
              {"tool_version", GALDESC_VERSION},
              {"command", command},
              {"status", status},
              {"provenance", {{"operation", it == ops.end() ? std::string("unknown") : it->second}}}};
}

std::string describe_error(const Error& e) {
  std::ostringstream s;
  s << error_name(e.code());
  if (!e.witness().empty()) {
    s << " (";
    bool first = true;
    for (const auto& [k, v] : e.witness()) {
      s << (first ? "" : ", ") << k << "=" << v;
      first = false;
    }
    s << ")";
  }
  s << ": " << e.what();
  return s.str();
}

int exit_code_for(ErrorCode code) {
  return is_mathematical(code) || code == ErrorCode::Internal ? 1 : 2;
}

JobResult job_selftest(const Json& doc, const JobOptions& o) {
  SelftestConfig cfg;
  cfg.seed = o.seed;
  const JsonPath root;
  if (!doc.is_null()) {
    require_schema_version(doc, root);
    if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(get_int(doc["seed"], root / "seed"));
    if (doc.contains("count")) cfg.count = get_size(doc["count"], root / "count");
    for (const char* key : {"suites", "fields"}) {
      if (!doc.contains(key)) continue;
      const Json& a = get_array(doc[key], root / key);
      auto& out = std::string(key) == "suites" ? cfg.suites : cfg.fields;
      for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_string(a[i], root / key / i));
    }
  }
  const SelftestReport rep = run_selftest(cfg);
  JobResult res;
  res.exit_code = rep.pass() ? 0 : 1;
  res.certificate = bare_certificate("selftest", rep.pass() ? "pass" : "fail");
  res.certificate["report"] = selftest_to_json(rep);
  std::ostringstream s;
  for (const auto& r : rep.results)
    s << "selftest " << r.suite << " " << r.field << ": " << r.passed << "/" << r.instances << " passed\n";
  s << "selftest: " << (rep.pass() ? "pass" : "fail");
  res.summary = s.str();
  return res;
}

JobResult job_verify(const Json& doc) {
  const Report r = verify_certificate(doc);
  JobResult res;
  res.exit_code = r.pass ? 0 : 1;
  res.certificate = bare_certificate("verify", r.pass ? "pass" : "fail");
  res.certificate["report"] = report_to_json(r);
  res.certificate["verified"] = Json{{"command", doc.value("command", "")}, {"status", doc.value("status", "")}};
  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
  res.summary = "verify: " + str(r.checks.size() - failed) + "/" + str(r.checks.size()) + " claims hold";
  return res;
}

}  // namespace

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> cmds{"extend",          "descend-vect",     "descend-sheaf", "descend-complex",
                                             "descend-gluing",  "check-gstructure", "check-compat",  "hom-basis",
                                             "selftest",        "verify"};
  return cmds;
}

JobResult run_job(const std::string& command, const Json& input, const JobOptions& options) {
  using JobFn = Outcome (*)(const Json&, const JobOptions&, Builder&);
  static const std::map<std::string, JobFn> jobs{
      {"extend", job_extend},
      {"descend-vect", job_descend_vect},
      {"descend-sheaf", job_descend_sheaf},
      {"descend-complex", job_descend_complex},
      {"descend-gluing", job_descend_gluing},
      {"check-gstructure", job_check_gstructure},
      {"check-compat", job_check_compat},
      {"hom-basis", job_hom_basis},
  };
  Builder cb;
  try {
    if (command == "selftest") return job_selftest(input, options);
    if (command == "verify") return job_verify(input);
    auto it = jobs.find(command);
    if (it == jobs.end()) fail(ErrorCode::SchemaError, "unknown command '" + command + "'");
    const Outcome out = it->second(input, options, cb);
    cb->self_check();
    return JobResult{out.pass ? 0 : 1, cb->finish(out.pass ? "pass" : "fail"), out.summary};
  } catch (const Error& e) {
    JobResult res;
    res.exit_code = exit_code_for(e.code());
    if (cb) {
      res.certificate = cb->finish_error(e);
    } else {
      res.certificate = bare_certificate(command, res.exit_code == 2 ? "error" : "fail");
      res.certificate["error"] =
          Json{{"code", std::string(error_name(e.code()))}, {"message", e.what()}, {"witness", e.witness()}};
    }
    res.summary = command + ": " + res.certificate["status"].get<std::string>() + " " + describe_error(e);
    return res;
  } catch (const Json::exception& e) {
    JobResult res{2, bare_certificate(command, "error"), command + ": error SchemaError: " + e.what()};
    res.certificate["error"] = Json{{"code", "SchemaError"}, {"message", e.what()}, {"witness", Json::object()}};
    return res;
  }
}

JobResult run_job(const std::string& command, const std::string& input, const JobOptions& options) {
  Json doc;
  if (command == "selftest" && input.find_first_not_of(" \t\r\n") == std::string::npos) return run_job(command, doc, options);
  try {
    doc = Json::parse(input);
  } catch (const Json::parse_error& e) {
    JobResult res{2, bare_certificate(command, "error"), command + ": error ParseError: malformed JSON"};
    res.certificate["error"] = Json{{"code", "ParseError"}, {"message", e.what()}, {"witness", {{"byte", e.byte}}}};
    return res;
  }
  return run_job(command, doc, options);
}

Json suite_field_json(const Field& ext, const GaloisGroup& group) {
  std::vector<FieldElem> hints;
  for (std::size_t g = 1; g < group.size(); ++g) hints.push_back(group[g].image());
  return field_to_json(ext, hints);
}

}  // namespace gdesc
