#include "galdesc/certificate.hpp"

namespace gdesc {

Factor W(std::string name) {
  Factor f;
  f.m = std::move(name);
  return f;
}

Factor WT(std::string name) {
  Factor f = W(std::move(name));
  f.t = true;
  return f;
}

Factor WInv(std::string name) {
  Factor f = W(std::move(name));
  f.inv = true;
  return f;
}

Factor conj(Factor f, std::size_t g) {
  f.conj = g;
  return f;
}

Factor Id(std::size_t n) {
  Factor f;
  f.identity = n;
  return f;
}

Factor Zero(std::size_t rows, std::size_t cols) {
  Factor f;
  f.zero = std::make_pair(rows, cols);
  return f;
}

Expr prod(std::vector<Factor> factors) { return Expr{Term{std::nullopt, std::move(factors)}}; }

Expr minus(Expr lhs, const Expr& rhs) {
  for (Term t : rhs) {
    t.negated = !t.negated;
    lhs.push_back(std::move(t));
  }
  return lhs;
}

namespace {

const char* kind_name(ClaimKind k) {
  switch (k) {
    case ClaimKind::Eq: return "eq";
    case ClaimKind::Invertible: return "invertible";
    case ClaimKind::Fixed: return "fixed";
    case ClaimKind::Rank: return "rank";
  }
  return "eq";
}

Json factor_to_json(const Factor& f) {
  if (f.identity) return Json{{"identity", *f.identity}};
  if (f.zero) return Json{{"zero", {f.zero->first, f.zero->second}}};
  Json j{{"m", f.m}};
  if (f.t) j["t"] = true;
  if (f.inv) j["inv"] = true;
  if (f.conj) j["conj"] = *f.conj;
  return j;
}

Json expr_to_json(const Expr& e, const Field& field) {
  Json terms = Json::array();
  for (const auto& t : e) {
    FieldElem coef = t.coef ? *t.coef : field.one();
    if (t.negated) coef = field.neg(coef);
    Json factors = Json::array();
    for (const auto& f : t.factors) factors.push_back(factor_to_json(f));
    Json jt{{"factors", factors}};
    if (!field.is_one(coef)) jt["coef"] = field.format(coef);
    terms.push_back(jt);
  }
  return terms;
}

/// Evaluation context shared by the builder and the verifier.
struct Evaluator {
  const Field& field;
  const GaloisGroup* group;
  const std::map<std::string, Matrix>& witnesses;

  Matrix lift(const Matrix& m) const { return m.field() == field ? m : embed_matrix(m, field); }

  Matrix factor(const Factor& f) const {
    if (f.identity) return Matrix::identity(field, *f.identity);
    if (f.zero) return Matrix(field, f.zero->first, f.zero->second);
    auto it = witnesses.find(f.m);
    if (it == witnesses.end()) fail(ErrorCode::SchemaError, "claim refers to unknown witness '" + f.m + "'");
    Matrix m = lift(it->second);
    if (f.t) m = transpose(m);
    if (f.inv) m = inverse(m);
    if (f.conj) {
      if (!group || *f.conj >= group->size()) fail(ErrorCode::SchemaError, "conjugation index out of range");
      m = conjugate_matrix((*group)[*f.conj], m);
    }
    return m;
  }

  Matrix term(const Term& t) const {
    std::optional<Matrix> acc;
    FieldElem coef = t.coef ? *t.coef : field.one();
    if (t.negated) coef = field.neg(coef);
    for (const auto& f : t.factors) {
      Matrix m = factor(f);
      acc = acc ? *acc * m : m;
    }
    if (!acc) fail(ErrorCode::SchemaError, "empty product in claim");
    return scale(*acc, coef);
  }

  Matrix expr(const Expr& e) const {
    if (e.empty()) fail(ErrorCode::SchemaError, "empty expression in claim");
    Matrix acc = term(e.front());
    for (std::size_t i = 1; i < e.size(); ++i) acc = acc + term(e[i]);
    return acc;
  }

  /// Witness map describes the first failure (group element for fixedness).
  bool holds(const Claim& c, Error::Witness& w) const {
    try {
      const Matrix lhs = expr(c.lhs);
      switch (c.kind) {
        case ClaimKind::Eq: return lhs == expr(c.rhs);
        case ClaimKind::Invertible: return is_invertible(lhs);
        case ClaimKind::Rank: return rank(lhs) == c.rank;
        case ClaimKind::Fixed:
          if (!group) return false;
          for (std::size_t g = 0; g < group->size(); ++g) {
            if (!(conjugate_matrix((*group)[g], lhs) == lhs)) {
              w["g"] = static_cast<std::int64_t>(g);
              return false;
            }
          }
          return true;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SchemaError) throw;
      w["evaluation_error"] = static_cast<int>(e.code());
    }
    return false;
  }
};

}  // namespace

Json claim_to_json(const Claim& c, const Field& field) {
  Json j{{"kind", kind_name(c.kind)}, {"label", c.label}};
  if (c.kind == ClaimKind::Eq) {
    j["lhs"] = expr_to_json(c.lhs, field);
    j["rhs"] = expr_to_json(c.rhs, field);
  } else {
    j["matrix"] = expr_to_json(c.lhs, field);
  }
  if (c.kind == ClaimKind::Rank) j["rank"] = c.rank;
  return j;
}

CertificateBuilder::CertificateBuilder(std::string command, std::string operation, const Field& field,
                                       const GaloisGroup* group, std::vector<FieldElem> hints)
    : command_(std::move(command)),
      operation_(std::move(operation)),
      field_(field),
      group_(group ? std::optional<GaloisGroup>(*group) : std::nullopt),
      hints_(std::move(hints)) {}

void CertificateBuilder::witness(const std::string& name, const Matrix& m) {
  ensure(m.field() == field_ || (field_.is_extension() && m.field() == field_.base()), "witness over a foreign field");
  ensure(witnesses_.emplace(name, m).second, "duplicate witness name");
}

void CertificateBuilder::eq(std::string label, Expr lhs, Expr rhs) {
  claims_.push_back(Claim{ClaimKind::Eq, std::move(label), std::move(lhs), std::move(rhs), 0});
}

void CertificateBuilder::invertible(std::string label, Expr m) {
  claims_.push_back(Claim{ClaimKind::Invertible, std::move(label), std::move(m), {}, 0});
}

void CertificateBuilder::fixed(std::string label, Expr m) {
  claims_.push_back(Claim{ClaimKind::Fixed, std::move(label), std::move(m), {}, 0});
}

void CertificateBuilder::rank(std::string label, Expr m, std::size_t r) {
  claims_.push_back(Claim{ClaimKind::Rank, std::move(label), std::move(m), {}, r});
}

void CertificateBuilder::report(const Report& r) { report_ = r; }

void CertificateBuilder::self_check() const {
  const Evaluator ev{field_, group_ ? &*group_ : nullptr, witnesses_};
  for (const auto& c : claims_) {
    Error::Witness w;
    if (!ev.holds(c, w)) fail(ErrorCode::Internal, "certificate claim '" + c.label + "' does not hold", w);
  }
}

Json CertificateBuilder::head(const std::string& status) const {
  Json j{{"schema_version", kSchemaVersion},
         {"tool_version", GALDESC_VERSION},
         {"command", command_},
         {"status", status},
         {"provenance", {{"operation", operation_}}},
         {"field", field_to_json(field_, hints_)}};
  if (group_) j["group"] = group_to_json(*group_);
  return j;
}

Json CertificateBuilder::finish(const std::string& status) const {
  Json j = head(status);
  Json w = Json::object();
  for (const auto& [name, m] : witnesses_) {
    Json mj = matrix_to_json(m);
    mj["field"] = m.field() == field_ ? "L" : "K";
    w[name] = mj;
  }
  j["witnesses"] = w;
  Json claims = Json::array();
  for (const auto& c : claims_) claims.push_back(claim_to_json(c, field_));
  j["claims"] = claims;
  j["result"] = result_;
  if (report_) j["report"] = report_to_json(*report_);
  return j;
}

Json CertificateBuilder::finish_error(const Error& e) const {
  const bool input_error = !is_mathematical(e.code()) && e.code() != ErrorCode::Internal;
  Json j = finish(input_error ? "error" : "fail");
  j["error"] = Json{{"code", std::string(error_name(e.code()))}, {"message", e.what()}, {"witness", e.witness()}};
  return j;
}

namespace {

Factor factor_from_json(const Json& j, const JsonPath& path) {
  if (!j.is_object()) path.error("expected an object");
  if (j.contains("identity")) return Id(get_size(j["identity"], path / "identity"));
  if (j.contains("zero")) {
    const Json& z = get_array(j["zero"], path / "zero");
    if (z.size() != 2) (path / "zero").error("expected [rows, cols]");
    return Zero(get_size(z[0], path / "zero" / 0), get_size(z[1], path / "zero" / 1));
  }
  Factor f = W(get_string(member(j, "m", path), path / "m"));
  if (f.m.empty()) (path / "m").error("empty witness name");
  if (j.contains("t")) f.t = j["t"].is_boolean() ? j["t"].get<bool>() : ((path / "t").error("expected a boolean"), false);
  if (j.contains("inv"))
    f.inv = j["inv"].is_boolean() ? j["inv"].get<bool>() : ((path / "inv").error("expected a boolean"), false);
  if (j.contains("conj")) f.conj = get_size(j["conj"], path / "conj");
  return f;
}

Expr expr_from_json(const Json& j, const Field& field, const JsonPath& path) {
  get_array(j, path);
  Expr e;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const JsonPath at = path / i;
    Term t;
    if (j[i].is_object() && j[i].contains("coef")) {
      const std::string s = get_string(j[i]["coef"], at / "coef");
      try {
        t.coef = field.parse(s);
      } catch (const Error& err) {
        (at / "coef").error(err.what());
      }
    }
    const Json& fj = get_array(member(j[i], "factors", at), at / "factors");
    for (std::size_t k = 0; k < fj.size(); ++k) t.factors.push_back(factor_from_json(fj[k], at / "factors" / k));
    e.push_back(std::move(t));
  }
  return e;
}

}  // namespace

Report verify_certificate(const Json& cert) {
  const JsonPath root;
  require_schema_version(cert, root);
  const FieldSpec spec = field_from_json(member(cert, "field", root), root / "field", true);
  const Field& L = spec.field;
  std::optional<GaloisGroup> group;
  Report r{"verify", true, {}};
  if (cert.contains("group")) {
    group = GaloisGroup::compute(L, spec.hints);
    r.add("group_matches", group_to_json(*group) == cert["group"]);
  }

  std::map<std::string, Matrix> witnesses;
  const Json& wj = member(cert, "witnesses", root);
  if (!wj.is_object()) (root / "witnesses").error("expected an object");
  for (const auto& [name, m] : wj.items()) {
    const JsonPath at = root / "witnesses" / name;
    const std::string over = get_string(member(m, "field", at), at / "field");
    if (over != "L" && over != "K") (at / "field").error("expected \"L\" or \"K\"");
    if (over == "K" && !L.is_extension()) (at / "field").error("the field has no base");
    witnesses.emplace(name, matrix_from_json(m, over == "K" ? L.base() : L, at));
  }

  const Evaluator ev{L, group ? &*group : nullptr, witnesses};
  const Json& cj = get_array(member(cert, "claims", root), root / "claims");
  for (std::size_t i = 0; i < cj.size(); ++i) {
    const JsonPath at = root / "claims" / i;
    Claim c;
    c.label = get_string(member(cj[i], "label", at), at / "label");
    const std::string kind = get_string(member(cj[i], "kind", at), at / "kind");
    if (kind == "eq") {
      c.kind = ClaimKind::Eq;
      c.lhs = expr_from_json(member(cj[i], "lhs", at), L, at / "lhs");
      c.rhs = expr_from_json(member(cj[i], "rhs", at), L, at / "rhs");
    } else {
      if (kind == "invertible")
        c.kind = ClaimKind::Invertible;
      else if (kind == "fixed")
        c.kind = ClaimKind::Fixed;
      else if (kind == "rank")
        c.kind = ClaimKind::Rank;
      else
        (at / "kind").error("unknown claim kind '" + kind + "'");
      c.lhs = expr_from_json(member(cj[i], "matrix", at), L, at / "matrix");
      if (c.kind == ClaimKind::Rank) c.rank = get_size(member(cj[i], "rank", at), at / "rank");
    }
    Error::Witness w;
    w["claim"] = static_cast<std::int64_t>(i);
    const bool ok = ev.holds(c, w);
    r.add(c.label, ok, std::move(w));
  }
  return r;
}

}  // namespace gdesc
