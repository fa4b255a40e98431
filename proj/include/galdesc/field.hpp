#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gdesc {

using Rational = mpq_class;

/// Element of a field from the tower, stored as flat coordinates over the
/// prime field. For L = B[a]/(f) with [L:B] = d and B of absolute degree m,
/// coordinate j*m + i is the i-th prime coordinate of the coefficient of a^j.
/// Representatives are always reduced, so equality is coordinate equality.
class FieldElem {
 public:
  FieldElem() = default;
  explicit FieldElem(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  const std::vector<Rational>& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Rational> coords_;
};

enum class FieldKind { Rationals, Prime, Extension };

namespace detail {
struct FieldData;
}

/// Shared immutable handle on a field: Q, F_p, or a quotient B[a]/(f) with
/// B one of those or (at most once more) a quotient of them. Elements do not
/// carry their field; every operation goes through the handle.
class Field {
 public:
  static Field rationals();
  /// Rejects non-primes (trial division) and p >= 2^31.
  static Field prime(std::int64_t p);
  /// `modulus` holds coefficients over `base`, lowest degree first, and must be
  /// monic of degree >= 1. Irreducibility is checked; over Q-based fields an
  /// inconclusive check is accepted only with `assert_irreducible`.
  static Field extension(const Field& base, std::vector<FieldElem> modulus, std::string symbol,
                         bool assert_irreducible = false);

  FieldKind kind() const;
  bool is_extension() const { return kind() == FieldKind::Extension; }
  std::int64_t characteristic() const;
  /// Degree over the immediate base (1 for prime fields).
  int degree() const;
  /// Degree over the prime field.
  int absolute_degree() const;
  /// Tower depth: 0 for prime fields, 1 for K[x]/(f), 2 for towers.
  int depth() const;
  const Field& base() const;
  Field prime_field() const;
  const std::vector<FieldElem>& modulus() const;
  const std::string& symbol() const;
  /// How irreducibility of the modulus was established.
  const std::string& irreducibility_evidence() const;
  bool is_finite() const { return characteristic() != 0; }
  /// Number of elements for finite fields.
  std::optional<std::uint64_t> order() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t n) const;
  FieldElem from_rational(const Rational& q) const;
  /// Residue class of the adjoined variable.
  FieldElem generator() const;
  /// Image of a base-field element.
  FieldElem embed(const FieldElem& base_elem) const;
  /// Reduction of sum_j coeffs[j] * a^j (coeffs over the base, any length).
  FieldElem from_base_coeffs(std::span<const FieldElem> coeffs) const;
  /// The `degree()` coefficients of x over the base.
  std::vector<FieldElem> base_coeffs(const FieldElem& x) const;
  /// True iff x lies in the image of the base field.
  bool in_base(const FieldElem& x) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  /// Throws Singular on zero.
  FieldElem inv(const FieldElem& a) const;
  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  bool is_zero(const FieldElem& a) const;
  bool is_one(const FieldElem& a) const { return a == one(); }
  /// Checks that x has the right shape and reduced coordinates.
  bool contains(const FieldElem& x) const;

  /// All elements in a fixed order (finite fields only, at most 2^20 elements).
  std::vector<FieldElem> elements() const;

  /// Canonical text: "p/q" over Q, "r mod p" over F_p, "c0+c1*a+c2*a^2" for extensions.
  std::string format(const FieldElem& x) const;
  /// Same as format() but with bare residues over F_p.
  std::string format_bare(const FieldElem& x) const;
  FieldElem parse(std::string_view text) const;
  /// e.g. "F_2[w]/(w^2+w+1)".
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
  friend struct detail::FieldData;
};

// Primality by trial division.
bool is_prime(std::int64_t n);

}  // namespace gdesc
