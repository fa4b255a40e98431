#pragma once

#include <string>
#include <vector>

#include "galdesc/field.hpp"

namespace gdesc {

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
/// The zero polynomial is empty.
using Poly = std::vector<FieldElem>;

void poly_trim(const Field& f, Poly& p);
int poly_degree(const Poly& p);
Poly poly_add(const Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
Poly poly_scale(const Field& f, const Poly& a, const FieldElem& c);
Poly poly_derivative(const Field& f, const Poly& a);
Poly poly_monic(const Field& f, const Poly& a);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Field& f, const Poly& a, const Poly& b);
/// Monic gcd (empty when both inputs are zero).
Poly poly_gcd(const Field& f, const Poly& a, const Poly& b);

struct PolyExtGcd {
  Poly gcd, s, t;  // s*a + t*b = gcd, gcd monic
};
PolyExtGcd poly_ext_gcd(const Field& f, const Poly& a, const Poly& b);

FieldElem poly_eval(const Field& f, const Poly& p, const FieldElem& x);
/// Evaluates p (coefficients over ext.base()) at x in ext.
FieldElem poly_eval_in(const Field& ext, const Poly& p, const FieldElem& x);

/// Irreducibility over a finite field: root search up to degree 3, trial
/// division by every monic polynomial of degree <= deg/2 beyond that.
bool poly_is_irreducible_finite(const Field& f, const Poly& p);

enum class Verdict { Irreducible, Reducible, Inconclusive };

struct IrreducibilityResult {
  Verdict verdict;
  std::string evidence;
};

/// Rational-root test, then reduction modulo the first three primes not
/// dividing the leading coefficient or the discriminant. Sound when it
/// answers Irreducible or Reducible.
IrreducibilityResult rational_irreducibility(const std::vector<Rational>& coeffs);

}  // namespace gdesc
