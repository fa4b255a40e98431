#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galdesc/serialize.hpp"

namespace gdesc {

/// One factor of a product: a named witness (optionally transposed, inverted
/// and conjugated by a group element), an identity or a zero block.
struct Factor {
  std::string m;
  bool t = false;
  bool inv = false;
  std::optional<std::size_t> conj;
  std::optional<std::size_t> identity;
  std::optional<std::pair<std::size_t, std::size_t>> zero;
};

/// Scaled product of factors.
struct Term {
  std::optional<FieldElem> coef;
  std::vector<Factor> factors;
  bool negated = false;
};

/// Sum of terms, evaluated over L.
using Expr = std::vector<Term>;

Factor W(std::string name);
Factor WT(std::string name);
Factor WInv(std::string name);
Factor conj(Factor f, std::size_t g);
Factor Id(std::size_t n);
Factor Zero(std::size_t rows, std::size_t cols);
Expr prod(std::vector<Factor> factors);
/// lhs - rhs as a single expression.
Expr minus(Expr lhs, const Expr& rhs);

enum class ClaimKind { Eq, Invertible, Fixed, Rank };

/// An identity asserted by a certificate: lhs = rhs, lhs invertible, every
/// entry of lhs fixed by the group, or rank(lhs) = rank.
struct Claim {
  ClaimKind kind = ClaimKind::Eq;
  std::string label;
  Expr lhs;
  Expr rhs;
  std::size_t rank = 0;
};

/// Collects named witness matrices and claims about them. Witnesses over K
/// are stored as such and embedded into L when claims are evaluated.
class CertificateBuilder {
 public:
  CertificateBuilder(std::string command, std::string operation, const Field& field, const GaloisGroup* group,
                     std::vector<FieldElem> hints = {});

  void witness(const std::string& name, const Matrix& m);
  bool has_witness(const std::string& name) const { return witnesses_.count(name) != 0; }
  void eq(std::string label, Expr lhs, Expr rhs);
  void invertible(std::string label, Expr m);
  void fixed(std::string label, Expr m);
  void rank(std::string label, Expr m, std::size_t r);
  Json& result() { return result_; }
  void report(const Report& r);

  /// Evaluates every claim in process (a failed claim means a bug in the
  /// producing operation, which surfaces as Internal).
  void self_check() const;

  /// status is "pass", "fail" or "error".
  Json finish(const std::string& status) const;
  Json finish_error(const Error& e) const;

 private:
  Json head(const std::string& status) const;

  std::string command_, operation_;
  Field field_;
  std::optional<GaloisGroup> group_;
  std::vector<FieldElem> hints_;
  std::map<std::string, Matrix> witnesses_;
  std::vector<Claim> claims_;
  Json result_ = Json::object();
  std::optional<Report> report_;
};

Json claim_to_json(const Claim& c, const Field& field);

/// Re-checks every claim of a serialized certificate from its witnesses
/// alone. One report check per claim, named by its label. Errors: SchemaError
/// for malformed certificates.
Report verify_certificate(const Json& cert);

}  // namespace gdesc
