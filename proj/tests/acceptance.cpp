// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "galdesc/jobs.hpp"
#include "galdesc/selftest.hpp"
#include "support.hpp"

using namespace gdesc;

namespace {

struct SuiteRun {
  std::size_t instances = 0;
  std::size_t passed = 0;
  double seconds = 0;
  std::vector<std::string> failures;

  bool pass() const { return passed == instances && instances > 0; }
};

SuiteRun run(const std::vector<std::string>& suites) {
  SuiteRun out;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& suite : suites)
    for (const auto& f : suite_fields()) {
      const SuiteResult r = run_suite(suite, f, default_count(suite), 0);
      out.instances += r.instances;
      out.passed += r.passed;
      for (const auto& msg : r.failures) out.failures.push_back(suite + " " + f.name + " " + msg);
    }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

int failed = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  failed += !ok;
}

std::string counts(const SuiteRun& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu/%zu instances, %.1f s", r.passed, r.instances, r.seconds);
  return buf;
}

void show_failures(const SuiteRun& r) {
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) std::printf("  %s\n", r.failures[i].c_str());
}

// Worked examples against independent oracles.
bool worked_fixtures(std::string& detail) {
  const JobResult qi = run_job("descend-vect", testing::read_fixture("descend_vect_qi.json"));
  const JobResult f4 = run_job("descend-vect", testing::read_fixture("descend_vect_f4.json"));
  if (qi.exit_code != 0 || f4.exit_code != 0) {
    detail = "descend-vect failed on a fixture";
    return false;
  }
  const SuiteField sqi = suite_field("Qi"), sf4 = suite_field("F4");

  // Q(i), A = [i]: a + b i is fixed iff (a, b) solves [[1, -1], [-1, 1]] x = 0 over Q.
  const Field q = Field::rationals();
  const Subspace sol = kernel(testing::mat(q, 2, 2, {"1", "-1", "-1", "1"}));
  const FieldElem line = sqi.ext.from_base_coeffs(sol.basis().row(0));
  const FieldElem got_qi = sqi.ext.parse(qi.certificate.at("result").at("kbasis").at("rows")[0][0].get<std::string>());
  // any nonzero rational multiple spans the same K-line
  const bool qi_ok = sol.dim() == 1 && sqi.ext.in_base(sqi.ext.div(got_qi, line));

  // F4, A = [w]: enumerate x with w x^2 = x; the only K-basis of an F2-line is its nonzero point.
  const Field& f = sf4.ext;
  std::vector<FieldElem> fixed;
  for (const auto& x : f.elements())
    if (!f.is_zero(x) && f.mul(f.generator(), f.pow(x, 2)) == x) fixed.push_back(x);
  const FieldElem got_f4 = f.parse(f4.certificate.at("result").at("kbasis").at("rows")[0][0].get<std::string>());
  const bool f4_ok = fixed.size() == 1 && fixed[0] == got_f4 && got_f4 == f.pow(f.generator(), 2);

  detail = "Q(i): " + sqi.ext.format(got_qi) + ", F4: " + f.format(got_f4);
  return qi_ok && f4_ok;
}

// Jordan block: rank(I - t) = 1 and v u = I - t by direct arithmetic.
bool jordan_fixture(std::string& detail) {
  const Json doc = testing::load_fixture("jordan_gluing_q.json");
  const Field q = Field::rationals();
  const Json& g = doc.at("gluing");
  const Matrix t = matrix_from_json(g.at("monodromy"), q, {});
  const Matrix u = matrix_from_json(g.at("u"), q, {});
  const Matrix v = matrix_from_json(g.at("v"), q, {});
  const Matrix one_minus_t = Matrix::identity(q, 2) - t;
  const JobResult r = run_job("extend", doc);
  const bool ok = rank(one_minus_t) == 1 && v * u == one_minus_t && r.exit_code == 0 &&
                  run_job("verify", r.certificate).exit_code == 0;
  detail = "rank(I - t) = " + std::to_string(rank(one_minus_t));
  return ok;
}

bool two_term_fixtures(std::string& detail) {
  const JobResult r = run_job("descend-complex", testing::read_fixture("twisted_complex_qi.json"));
  const bool ok = r.exit_code == 0 && r.certificate.contains("report") && r.certificate.at("report").at("pass") == true;
  detail = ok ? "two-term fixture routes agree" : "two-term fixture failed";
  return ok;
}

}  // namespace

int main() {
  {
    const SuiteRun r = run({"vector_descent"});
    report(1, r.pass() && r.seconds < 10.0, "vector-space descent suite", counts(r));
    show_failures(r);
  }
  {
    std::string detail;
    const bool ok = worked_fixtures(detail);
    report(2, ok, "worked fixtures match derived oracles", detail);
  }
  {
    const SuiteRun r = run({"sheaf_descent"});
    report(3, r.pass() && r.seconds < 30.0, "sheaf descent with commuting squares", counts(r));
    show_failures(r);
  }
  {
    const SuiteRun r = run({"compat_hom"});
    report(4, r.pass() && r.seconds < 30.0, "hom compatibility", counts(r));
    show_failures(r);
  }
  {
    const SuiteRun r = run({"compat_pullback", "compat_pushforward"});
    report(5, r.pass(), "pullback and pushforward compatibility", counts(r));
    show_failures(r);
  }
  {
    const SuiteRun r = run({"morphism_recovery", "morphism_rejection"});
    report(6, r.pass(), "equivariant morphism recovery and rejection", counts(r));
    show_failures(r);
  }
  {
    const SuiteRun r = run({"gluing_extension", "gluing_conjugation", "gluing_descent"});
    std::string detail;
    const bool fixture = jordan_fixture(detail);
    report(7, r.pass() && fixture, "gluing suites and Jordan fixture", counts(r) + ", " + detail);
    show_failures(r);
  }
  {
    const SuiteRun r = run({"complexes"});
    std::string detail;
    const bool fixture = two_term_fixtures(detail);
    report(8, r.pass() && fixture, "complexes", counts(r) + ", " + detail);
    show_failures(r);
  }
  {
    const Json doc{{"schema_version", kSchemaVersion}, {"seed", 0}};
    const JobResult a = run_job("selftest", doc), b = run_job("selftest", doc);
    const std::string da = canonical_dump(a.certificate), db = canonical_dump(b.certificate);
    report(9, a.exit_code == 0 && da == db, "selftest determinism",
           "two seed-0 certificates, " + std::to_string(da.size()) + " bytes, " + (da == db ? "identical" : "different"));
  }
  return failed == 0 ? 0 : 1;
}
