#include "galdesc/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <thread>

#include "galdesc/jobs.hpp"

namespace gdesc {

namespace {

struct InstanceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw InstanceFailure(what);
}

bool same_components(const SheafMorphism& a, const SheafMorphism& b) { return a.components() == b.components(); }

bool same_complex(const BoundedComplex& a, const BoundedComplex& b) {
  if (a.min_deg() != b.min_deg() || a.max_deg() != b.max_deg()) return false;
  for (int d = a.min_deg(); d <= a.max_deg(); ++d)
    if (!(a.term(d) == b.term(d))) return false;
  for (int d = a.min_deg(); d < a.max_deg(); ++d)
    if (!same_components(a.diff(d), b.diff(d))) return false;
  return true;
}

/// Runs a command through the serialized interface and re-verifies its certificate.
Json certified(const std::string& command, Json doc, const SuiteField& f) {
  doc["schema_version"] = kSchemaVersion;
  doc["field"] = suite_field_json(f.ext, f.group);
  const JobResult res = run_job(command, doc);
  check(res.exit_code == 0, command + " exited with " + std::to_string(res.exit_code) + ": " + res.summary);
  const Report r = verify_certificate(Json::parse(canonical_dump(res.certificate)));
  check(r.pass, command + " certificate does not re-verify");
  return res.certificate;
}

std::vector<Matrix> random_bases(Random& rnd, const Field& f, const PosetSheaf& s) {
  std::vector<Matrix> b;
  for (std::size_t x = 0; x < s.size(); ++x) b.push_back(rnd.invertible(f, s.stalk_dim(x)));
  return b;
}

using Instance = std::function<Json(Random&, const SuiteField&)>;

Json vector_descent(Random& rnd, const SuiteField& f) {
  const std::size_t n = rnd.between(0, 4);
  const GStructure gs = rnd.gstructure(f.group, n);
  check_gstructure(gs, f.group);
  const KForm form = descend(gs, f.group);
  check(form.kdim == n, "K-dimension differs from L-dimension");
  check(is_invertible(form.kbasis), "kbasis is not L-invertible");
  const Matrix iso = transpose(form.kbasis);
  for (std::size_t g = 0; g < f.group.size(); ++g)
    check(gs.cocycle[g] * conjugate_matrix(f.group[g], iso) == iso, "iso does not intertwine the structures");
  const GStructure moved = twist(gs, rnd.invertible(f.ext, n), f.group);
  check(descend(moved, f.group).kdim == n, "twisted structure descends to another dimension");
  const Json structure = gstructure_to_json(gs, f.group);
  const Json cert = certified("descend-vect", Json{{"structure", structure}}, f);
  check(cert["result"]["kbasis"] == matrix_to_json(form.kbasis), "serialized route disagrees on the kbasis");
  return structure;
}

Json sheaf_descent(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(5);
  const SheafGStructure s = rnd.sheaf_gstructure(p, f.group, 3);
  check_sheaf_gstructure(s, f.group);
  const SheafKForm form = descend_sheaf(s, f.group);
  const Report r = verify_sheaf_descent(s, form, f.group);
  check(r.pass, "descent square fails");
  check(form.iso.is_isomorphism(), "comparison is not an isomorphism");
  check(check_locally_constant_descent(s, f.group).pass, "local constancy differs after descent");
  const Json doc{{"sheaf", sheaf_to_json(s.sheaf)}, {"structure", sheaf_structure_to_json(s, f.group)}};
  const Json cert = certified("descend-sheaf", doc, f);
  check(cert["result"]["ksheaf"] == sheaf_to_json(form.ksheaf), "serialized route disagrees on the K-sheaf");
  return doc;
}

Json compat_pullback(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(5), q = rnd.poset(5);
  const MonotoneMap m = rnd.monotone_map(p, q);
  const PosetSheaf g = rnd.sheaf(q, f.ext.base(), 3);
  check(check_compat_pullback(m, g, f.group).pass, "pullback comparison fails");
  return Json{{"map", monotone_map_to_json(m)}, {"sheaf", sheaf_to_json(g)}};
}

Json compat_pushforward(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(5), q = rnd.poset(5);
  const MonotoneMap m = rnd.monotone_map(p, q);
  const PosetSheaf s = rnd.sheaf(p, f.ext.base(), 3);
  check(check_compat_pushforward(m, s, f.group).pass, "pushforward comparison fails");
  const PosetSheaf direct = pushforward(m, base_change(s, f.ext)), other = base_change(pushforward(m, s), f.ext);
  check(direct.stalk_dims() == other.stalk_dims(), "pushforward stalk dimensions differ");
  return Json{{"map", monotone_map_to_json(m)}, {"sheaf", sheaf_to_json(s)}};
}

Json compat_hom(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(5);
  const PosetSheaf a = rnd.sheaf(p, f.ext.base(), 3), b = rnd.sheaf(p, f.ext.base(), 3);
  check(check_compat_hom(a, b, f.group).pass, "Hom comparison fails");
  const std::size_t dim_k = hom_global(a, b).size();
  check(hom_global(base_change(a, f.ext), base_change(b, f.ext)).size() == dim_k, "global Hom dimensions differ");
  // equivariant maps between extended sheaves are exactly the base-changed K-maps, also after twisting
  const SheafGStructure ea = extend_sheaf(a, f.group), eb = extend_sheaf(b, f.group);
  check(equivariant_hom_kdim(ea, eb, f.group) == dim_k, "equivariant Hom dimension differs");
  const SheafGStructure ta = twist_sheaf(ea, random_bases(rnd, f.ext, ea.sheaf), f.group);
  const SheafGStructure tb = twist_sheaf(eb, random_bases(rnd, f.ext, eb.sheaf), f.group);
  check(equivariant_hom_kdim(ta, tb, f.group) == dim_k, "equivariant Hom dimension changes under twisting");
  return Json{{"source", sheaf_to_json(a)}, {"target", sheaf_to_json(b)}};
}

Json morphism_recovery(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(5);
  const PosetSheaf a = rnd.sheaf(p, f.ext.base(), 3), b = rnd.sheaf(p, f.ext.base(), 3);
  const SheafMorphism fk = rnd.morphism(a, b), other = rnd.morphism(a, b);
  const SheafGStructure ea = extend_sheaf(a, f.group), eb = extend_sheaf(b, f.group);
  const SheafMorphism fl = base_change(fk, f.ext);
  check(same_components(descend_sheaf_morphism(fl, ea, eb, f.group), fk), "1⊗f does not descend to f");
  check(same_components(fk, other) == same_components(fl, base_change(other, f.ext)), "base change is not faithful");
  return Json{{"source", sheaf_to_json(a)}, {"target", sheaf_to_json(b)}, {"morphism", morphism_to_json(fk)}};
}

Json morphism_rejection(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(5);
  const Field& k = f.ext.base();
  PosetSheaf a = rnd.sheaf(p, k, 3), b = rnd.sheaf(p, k, 3);
  std::vector<SheafMorphism> basis = hom_global(a, b);
  for (int tries = 0; basis.empty() && tries < 50; ++tries) {
    a = rnd.sheaf(p, k, 3);
    b = tries < 25 ? rnd.sheaf(p, k, 3) : a;
    basis = hom_global(a, b);
  }
  check(!basis.empty(), "no nonzero morphisms found");
  const SheafMorphism fk = rnd.morphism(a, b);
  const SheafMorphism h = base_change(basis[rnd.below(basis.size())], f.ext);
  const SheafMorphism fl = base_change(fk, f.ext);
  std::vector<Matrix> comp;
  for (std::size_t x = 0; x < p->size(); ++x) comp.push_back(fl.at(x) + scale(h.at(x), f.ext.generator()));
  const SheafMorphism perturbed(fl.source(), fl.target(), std::move(comp));
  try {
    descend_sheaf_morphism(perturbed, extend_sheaf(a, f.group), extend_sheaf(b, f.group), f.group);
  } catch (const Error& e) {
    check(e.code() == ErrorCode::NotEquivariant, "rejected with the wrong error");
    check(e.witness().count("x") && e.witness().count("g"), "rejection lacks a named witness");
    const auto x = static_cast<std::size_t>(e.witness().at("x"));
    const auto g = static_cast<std::size_t>(e.witness().at("g"));
    check(g != GaloisGroup::identity() && x < p->size(), "witness out of range");
    check(!(conjugate_matrix(f.group[g], perturbed.at(x)) == perturbed.at(x)), "witness component is fixed");
    return Json{{"source", sheaf_to_json(a)}, {"target", sheaf_to_json(b)}, {"morphism", morphism_to_json(perturbed)}};
  }
  throw InstanceFailure("perturbed morphism was accepted");
}

Json gluing_extension(Random& rnd, const SuiteField& f) {
  const GluingData gd = rnd.gluing(f.ext.base(), 3);
  const NearbyCycles below = nearby_unipotent(gd.ls);
  const NearbyCycles above = nearby_unipotent(LocalSystemDisc(embed_matrix(gd.ls.monodromy(), f.ext)));
  check(above.psi.dim() == below.psi.dim(), "psi dimension changes under extension");
  check(above.psi.basis() == embed_matrix(below.psi.basis(), f.ext), "psi changes under extension");
  check(above.t_action == embed_matrix(below.t_action, f.ext), "t changes under extension");
  const ExtendedGluing e = extend_gluing(gd, f.group);
  check_gluing(e.data);
  check_gluing_gstructure(e.data, e.structure, f.group);
  return gluing_to_json(gd);
}

Json gluing_conjugation(Random& rnd, const SuiteField& f) {
  const GluingData gd = rnd.gluing(f.ext, 3);
  const NearbyCycles nc = nearby_unipotent(gd.ls);
  for (std::size_t g = 0; g < f.group.size(); ++g) {
    const FieldAut& aut = f.group[g];
    const NearbyCycles moved = nearby_unipotent(LocalSystemDisc(conjugate_matrix(aut, gd.ls.monodromy())));
    check(moved.psi == Subspace::span_of_rows(conjugate_matrix(aut, nc.psi.basis())), "psi does not commute with conjugation");
    check(moved.t_action == conjugate_matrix(aut, nc.t_action), "t does not commute with conjugation");
    check_gluing(conjugate_gluing(gd, aut));
  }
  return gluing_to_json(gd);
}

Json gluing_descent(Random& rnd, const SuiteField& f) {
  const GluingData gd = rnd.gluing(f.ext.base(), 3);
  const ExtendedGluing e = extend_gluing(gd, f.group);
  const GluingKForm natural = descend_gluing(e.data, e.structure, f.group);
  check(natural.kdata.ls.monodromy() == gd.ls.monodromy() && natural.kdata.u == gd.u && natural.kdata.v == gd.v,
        "natural round trip is not exact");
  const ExtendedGluing t =
      twist_gluing(e, rnd.invertible(f.ext, gd.ls.dim()), rnd.invertible(f.ext, gd.phi_dim), f.group);
  const GluingKForm form = descend_gluing(t.data, t.structure, f.group);
  check_gluing(form.kdata);
  check(verify_gluing_descent(t.data, t.structure, form, f.group).pass, "gluing descent does not verify");
  check(form.v_form.kbasis == descend(t.structure.v, f.group).kbasis, "V-component differs from standalone descent");
  check(form.phi_form.kbasis == descend(t.structure.phi, f.group).kbasis, "phi-component differs from standalone descent");
  const Json doc{{"gluing", gluing_to_json(t.data)}, {"structure", gluing_structure_to_json(t.structure, f.group)}};
  certified("descend-gluing", doc, f);
  return doc;
}

Json complexes(Random& rnd, const SuiteField& f) {
  const PosetPtr p = rnd.poset(4);
  const BoundedComplex c = rnd.complex(p, f.ext.base(), 2);
  const ExtendedComplex e = extend_complex(c, f.group);
  for (int d = c.min_deg(); d <= c.max_deg(); ++d)
    check(cohomology_sheaf(e.complex, d).stalk_dims() == cohomology_sheaf(c, d).stalk_dims(),
          "cohomology dimensions change under extension");
  check(same_complex(descend_complex_strict(e.complex, e.structure, f.group).kcomplex, c), "natural round trip is not exact");

  std::vector<std::vector<Matrix>> b;
  for (int d = c.min_deg(); d <= c.max_deg(); ++d) b.push_back(random_bases(rnd, f.ext, e.complex.term(d)));
  const ExtendedComplex t = twist_complex(e, b, f.group);
  check_complex_gstructure(t.complex, t.structure, f.group);
  const ComplexKForm form = descend_complex_strict(t.complex, t.structure, f.group);
  for (int d = c.min_deg(); d <= c.max_deg(); ++d)
    check(form.iso.at(d).is_isomorphism(), "descent comparison is not a termwise isomorphism");
  if (c.max_deg() == c.min_deg() + 1)
    check(two_term_descent_via_cohomology(t.complex, t.structure, f.group).pass, "the two descent routes disagree");

  for (int a = c.min_deg() - 1; a <= c.max_deg(); ++a) {
    const Truncation le = truncate_le(c, a), ge = truncate_ge(c, a + 1);
    for (int d = c.min_deg(); d <= c.max_deg(); ++d) {
      const auto h = cohomology_sheaf(c, d).stalk_dims();
      const auto hl = cohomology_sheaf(le.complex, d).stalk_dims(), hg = cohomology_sheaf(ge.complex, d).stalk_dims();
      for (std::size_t x = 0; x < h.size(); ++x)
        check(hl[x] + hg[x] == h[x] && (d <= a ? hg[x] : hl[x]) == 0, "truncations do not split cohomology");
    }
  }
  const Json doc{{"complex", complex_to_json(t.complex)}, {"structure", complex_structure_to_json(t.structure, f.group)}};
  certified("descend-complex", doc, f);
  return doc;
}

const std::map<std::string, std::pair<Instance, std::size_t>>& registry() {
  static const std::map<std::string, std::pair<Instance, std::size_t>> r{
      {"vector_descent", {vector_descent, 200}},
      {"sheaf_descent", {sheaf_descent, 100}},
      {"compat_pullback", {compat_pullback, 50}},
      {"compat_pushforward", {compat_pushforward, 50}},
      {"compat_hom", {compat_hom, 50}},
      {"morphism_recovery", {morphism_recovery, 100}},
      {"morphism_rejection", {morphism_rejection, 100}},
      {"gluing_extension", {gluing_extension, 100}},
      {"gluing_conjugation", {gluing_conjugation, 100}},
      {"gluing_descent", {gluing_descent, 100}},
      {"complexes", {complexes, 50}},
  };
  return r;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "vector_descent",   "sheaf_descent",      "compat_pullback",  "compat_pushforward",
      "compat_hom",       "morphism_recovery",  "morphism_rejection", "gluing_extension",
      "gluing_conjugation", "gluing_descent",   "complexes"};
  return names;
}

std::size_t default_count(const std::string& suite) {
  auto it = registry().find(suite);
  if (it == registry().end()) fail(ErrorCode::SchemaError, "unknown suite '" + suite + "'");
  return it->second.second;
}

SuiteResult run_suite(const std::string& suite, const SuiteField& field, std::size_t count, std::uint64_t seed) {
  auto it = registry().find(suite);
  if (it == registry().end()) fail(ErrorCode::SchemaError, "unknown suite '" + suite + "'");
  SuiteResult out{suite, field.name, count, 0, fnv1a(suite + "/" + field.name), {}};
  const std::uint64_t base = fnv1a(std::to_string(seed));
  for (std::size_t i = 0; i < count; ++i) {
    Random rnd(fnv1a(suite + "/" + field.name + "/" + std::to_string(i), base));
    try {
      const Json instance = it->second.first(rnd, field);
      out.hash = fnv1a(instance.dump(), out.hash);
      ++out.passed;
    } catch (const InstanceFailure& e) {
      out.failures.push_back("instance " + std::to_string(i) + ": " + e.what());
    } catch (const Error& e) {
      out.failures.push_back("instance " + std::to_string(i) + ": " + std::string(error_name(e.code())) + ": " + e.what());
    }
  }
  return out;
}

bool SelftestReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.pass(); });
}

SelftestReport run_selftest(const SelftestConfig& config) {
  const std::vector<std::string>& suites = config.suites.empty() ? suite_names() : config.suites;
  std::vector<SuiteField> fields;
  if (config.fields.empty()) {
    fields = suite_fields();
  } else {
    for (const auto& name : config.fields) fields.push_back(suite_field(name));
  }
  struct Task {
    std::string suite;
    const SuiteField* field;
    std::size_t count;
  };
  std::vector<Task> tasks;
  for (const auto& s : suites) {
    const std::size_t count = config.count ? *config.count : default_count(s);
    for (const auto& f : fields) tasks.push_back({s, &f, count});
  }

  SelftestReport report{config.seed, std::vector<SuiteResult>(tasks.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
      report.results[i] = run_suite(tasks[i].suite, *tasks[i].field, tasks[i].count, config.seed);
  };
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

Json selftest_to_json(const SelftestReport& report) {
  Json suites = Json::array();
  std::size_t instances = 0, passed = 0;
  for (const auto& r : report.results) {
    suites.push_back(Json{{"suite", r.suite},
                          {"field", r.field},
                          {"instances", r.instances},
                          {"passed", r.passed},
                          {"hash", hex(r.hash)},
                          {"failures", r.failures}});
    instances += r.instances;
    passed += r.passed;
  }
  return Json{{"seed", report.seed}, {"pass", report.pass()}, {"instances", instances}, {"passed", passed}, {"suites", suites}};
}

}  // namespace gdesc
