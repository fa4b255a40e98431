#include <doctest.h>

#include "galdesc/jobs.hpp"
#include "support.hpp"

using namespace gdesc;

namespace {

struct Case {
  const char* command;
  const char* fixture;
  int exit_code;
  const char* error;
};

const Case kCases[] = {
    {"descend-vect", "descend_vect_qi.json", 0, nullptr},
    {"descend-vect", "descend_vect_f4.json", 0, nullptr},
    {"check-gstructure", "descend_vect_qi.json", 0, nullptr},
    {"check-gstructure", "broken_cocycle_qi.json", 1, "NotCocycle"},
    {"descend-sheaf", "twisted_chain_qi.json", 0, nullptr},
    {"check-gstructure", "incompatible_chain_qi.json", 1, "NotSheafMorphism"},
    {"descend-complex", "twisted_complex_qi.json", 0, nullptr},
    {"descend-complex", "homotopy_only_complex_qi.json", 1, "NotStrict"},
    {"descend-complex", "noncommuting_complex_qi.json", 1, "NotStrict"},
    {"extend", "jordan_gluing_q.json", 0, nullptr},
    {"extend", "jordan_gluing_bad_relation_q.json", 1, "RelationViolated"},
    {"descend-gluing", "twisted_disc_qi.json", 0, nullptr},
    {"descend-vect", "malformed.json", 2, "ParseError"},
    {"descend-vect", "future_schema.json", 2, "SchemaError"},
    {"descend-vect", "reducible_f2.json", 1, "Reducible"},
};

}  // namespace

TEST_CASE("fixtures produce the expected outcome") {
  for (const Case& c : kCases) {
    CAPTURE(c.fixture);
    CAPTURE(c.command);
    const JobResult r = run_job(c.command, testing::read_fixture(c.fixture));
    CHECK(r.exit_code == c.exit_code);
    CHECK(r.certificate.at("schema_version") == kSchemaVersion);
    CHECK(r.certificate.at("command") == c.command);
    if (c.error) {
      CHECK(r.certificate.at("error").at("code") == c.error);
    } else {
      CHECK(r.certificate.at("status") == "pass");
      const JobResult v = run_job("verify", r.certificate);
      CHECK(v.exit_code == 0);
    }
  }
}

TEST_CASE("fixture results match the worked examples") {
  const JobResult qi = run_job("descend-vect", testing::read_fixture("descend_vect_qi.json"));
  CHECK(qi.certificate.at("result").at("kbasis").at("rows") == Json::parse(R"([["1+1*i"]])"));
  const JobResult f4 = run_job("descend-vect", testing::read_fixture("descend_vect_f4.json"));
  CHECK(f4.certificate.at("result").at("kbasis").at("rows") == Json::parse(R"([["1+1*w"]])"));
}

TEST_CASE("tampered witnesses fail verification") {
  JobResult r = run_job("descend-vect", testing::read_fixture("descend_vect_qi.json"));
  REQUIRE(r.exit_code == 0);
  Json cert = r.certificate;
  cert["witnesses"]["kbasis"]["rows"][0][0] = "1+2*i";
  const JobResult v = run_job("verify", cert);
  CHECK(v.exit_code == 1);
  CHECK(v.certificate.at("status") == "fail");
  const Report rep = verify_certificate(cert);
  CHECK_FALSE(rep.pass);

  Json group = r.certificate;
  group["group"][1] = "1*i";
  CHECK_FALSE(verify_certificate(group).pass);

  Json broken = r.certificate;
  broken.erase("witnesses");
  CHECK(run_job("verify", broken).exit_code == 2);
}

TEST_CASE("every passing certificate verifies on random extend inputs") {
  Random rng(81);
  for (const auto& sf : suite_fields()) {
    const PosetPtr p = rng.poset(3);
    const Json field = suite_field_json(sf.ext, sf.group);
    const std::vector<Json> docs{
        {{"schema_version", 1}, {"field", field}, {"dim", 2}},
        {{"schema_version", 1}, {"field", field}, {"sheaf", sheaf_to_json(rng.sheaf(p, sf.ext.base()))}},
        {{"schema_version", 1}, {"field", field}, {"complex", complex_to_json(rng.complex(p, sf.ext.base()))}},
        {{"schema_version", 1}, {"field", field}, {"gluing", gluing_to_json(rng.gluing(sf.ext.base()))}},
    };
    for (const Json& doc : docs) {
      const JobResult r = run_job("extend", doc);
      CHECK(r.exit_code == 0);
      CHECK(run_job("verify", r.certificate).exit_code == 0);
    }
  }
}

TEST_CASE("check-compat kinds") {
  Random rng(82);
  const SuiteField sf = suite_field("F8");
  const Json field = suite_field_json(sf.ext, sf.group);
  const PosetPtr src = rng.poset(4), dst = rng.poset(3);
  const MonotoneMap m = rng.monotone_map(src, dst);
  const Json map = monotone_map_to_json(m);
  const std::vector<Json> docs{
      {{"schema_version", 1}, {"field", field}, {"kind", "pullback"}, {"map", map},
       {"sheaf", sheaf_to_json(rng.sheaf(dst, sf.ext.base()))}},
      {{"schema_version", 1}, {"field", field}, {"kind", "pushforward"}, {"map", map},
       {"sheaf", sheaf_to_json(rng.sheaf(src, sf.ext.base()))}},
      {{"schema_version", 1}, {"field", field}, {"kind", "hom"},
       {"source", sheaf_to_json(rng.sheaf(src, sf.ext.base()))},
       {"target", sheaf_to_json(rng.sheaf(src, sf.ext.base()))}},
  };
  for (const Json& doc : docs) {
    CAPTURE(doc.at("kind"));
    const JobResult r = run_job("check-compat", doc);
    CHECK(r.exit_code == 0);
    CHECK(run_job("verify", r.certificate).exit_code == 0);
  }
}

TEST_CASE("unknown commands and bad input are errors") {
  CHECK(run_job("frobnicate", "{}").exit_code == 2);
  CHECK(run_job("descend-vect", "{}").exit_code == 2);
  CHECK(run_job("descend-vect", "[1, 2").exit_code == 2);
}

TEST_CASE("selftest job is deterministic") {
  const Json doc{{"schema_version", 1}, {"seed", 5}, {"count", 3}, {"suites", {"vector_descent", "gluing_extension"}}};
  const JobResult a = run_job("selftest", doc), b = run_job("selftest", doc);
  CHECK(a.exit_code == 0);
  CHECK(canonical_dump(a.certificate) == canonical_dump(b.certificate));
}
