#include "galdesc/polynomial.hpp"

#include "galdesc/error.hpp"

namespace gdesc {

void poly_trim(const Field& f, Poly& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] = f.add(out[i], a[i]);
    if (i < b.size()) out[i] = f.add(out[i], b[i]);
  }
  poly_trim(f, out);
  return out;
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] = f.add(out[i], a[i]);
    if (i < b.size()) out[i] = f.sub(out[i], b[i]);
  }
  poly_trim(f, out);
  return out;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  poly_trim(f, out);
  return out;
}

Poly poly_scale(const Field& f, const Poly& a, const FieldElem& c) {
  Poly out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(f.mul(x, c));
  poly_trim(f, out);
  return out;
}

Poly poly_derivative(const Field& f, const Poly& a) {
  Poly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(f.mul(f.from_int(static_cast<std::int64_t>(i)), a[i]));
  poly_trim(f, out);
  return out;
}

Poly poly_monic(const Field& f, const Poly& a) {
  if (a.empty()) return a;
  return poly_scale(f, a, f.inv(a.back()));
}

std::pair<Poly, Poly> poly_divmod(const Field& f, const Poly& a, const Poly& b) {
  if (b.empty()) fail(ErrorCode::Singular, "polynomial division by zero");
  Poly rem = a;
  poly_trim(f, rem);
  if (rem.size() < b.size()) return {Poly{}, rem};
  Poly quot(rem.size() - b.size() + 1, f.zero());
  const FieldElem lead_inv = f.inv(b.back());
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    FieldElem c = f.mul(rem.back(), lead_inv);
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] = f.sub(rem[shift + j], f.mul(c, b[j]));
    poly_trim(f, rem);
  }
  poly_trim(f, quot);
  return {quot, rem};
}

Poly poly_gcd(const Field& f, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  poly_trim(f, x);
  poly_trim(f, y);
  while (!y.empty()) {
    Poly r = poly_divmod(f, x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(f, x);
}

PolyExtGcd poly_ext_gcd(const Field& f, const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  poly_trim(f, r0);
  poly_trim(f, r1);
  Poly s0{f.one()}, s1{}, t0{}, t1{f.one()};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(f, r0, r1);
    Poly s2 = poly_sub(f, s0, poly_mul(f, q, s1));
    Poly t2 = poly_sub(f, t0, poly_mul(f, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {Poly{}, s0, t0};
  FieldElem lead_inv = f.inv(r0.back());
  return {poly_scale(f, r0, lead_inv), poly_scale(f, s0, lead_inv), poly_scale(f, t0, lead_inv)};
}

FieldElem poly_eval(const Field& f, const Poly& p, const FieldElem& x) {
  FieldElem acc = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

FieldElem poly_eval_in(const Field& ext, const Poly& p, const FieldElem& x) {
  FieldElem acc = ext.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = ext.add(ext.mul(acc, x), ext.embed(p[i]));
  return acc;
}

namespace {

// Calls visit(poly) for every monic polynomial of the given degree over a finite field.
template <class Visit>
bool for_each_monic(const Field& f, const std::vector<FieldElem>& elems, int degree, Visit&& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  while (true) {
    Poly p;
    p.reserve(degree + 1);
    for (std::size_t i : idx) p.push_back(elems[i]);
    p.push_back(f.one());
    if (!visit(p)) return false;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < elems.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) return true;
  }
}

}  // namespace

bool poly_is_irreducible_finite(const Field& f, const Poly& p_in) {
  Poly p = p_in;
  poly_trim(f, p);
  const int deg = poly_degree(p);
  if (deg < 1) return false;
  if (deg == 1) return true;
  const auto elems = f.elements();
  if (deg <= 3) {
    for (const auto& x : elems)
      if (f.is_zero(poly_eval(f, p, x))) return false;
    return true;
  }
  for (int k = 1; k <= deg / 2; ++k) {
    bool irreducible_so_far = for_each_monic(f, elems, k, [&](const Poly& d) {
      return !poly_divmod(f, p, d).second.empty();
    });
    if (!irreducible_so_far) return false;
  }
  return true;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

IrreducibilityResult rational_irreducibility(const std::vector<Rational>& coeffs_in) {
  std::vector<Rational> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) return {Verdict::Reducible, "constant polynomial"};
  if (deg == 1) return {Verdict::Irreducible, "degree one"};

  // primitive integer polynomial with positive leading coefficient
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : coeffs) z.push_back(c.get_num() * (lcm_den / c.get_den()));
  mpz_class content = 0;
  for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (auto& c : z) c /= content;
  if (z.back() < 0)
    for (auto& c : z) c = -c;

  if (z[0] == 0) return {Verdict::Reducible, "x divides the polynomial"};

  const mpz_class root_bound("1000000000000");
  mpz_class a0 = abs(z[0]), an = abs(z.back());
  bool root_test_complete = a0 <= root_bound && an <= root_bound;
  if (root_test_complete) {
    for (const auto& num : divisors(a0)) {
      for (const auto& den : divisors(an)) {
        for (int sign : {1, -1}) {
          Rational r(num * sign, den);
          r.canonicalize();
          Rational acc = 0;
          for (std::size_t i = z.size(); i-- > 0;) acc = acc * r + Rational(z[i]);
          if (acc == 0) return {Verdict::Reducible, "rational root " + r.get_str()};
        }
      }
    }
    if (deg <= 3) return {Verdict::Irreducible, "no rational root (degree <= 3)"};
  }

  std::vector<std::int64_t> tried;
  for (std::int64_t p = 2; p < 1000 && tried.size() < 3; ++p) {
    if (!is_prime(p)) continue;
    if (z.back() % p == 0) continue;
    Field fp = Field::prime(p);
    Poly reduced;
    for (const auto& c : z) reduced.push_back(fp.from_rational(Rational(c)));
    poly_trim(fp, reduced);
    // p must not divide the discriminant: reduction stays squarefree
    Poly g = poly_gcd(fp, reduced, poly_derivative(fp, reduced));
    if (poly_degree(g) != 0) continue;
    tried.push_back(p);
    if (poly_is_irreducible_finite(fp, reduced))
      return {Verdict::Irreducible, "irreducible modulo " + std::to_string(p)};
  }
  std::string list;
  for (auto p : tried) list += (list.empty() ? "" : ", ") + std::to_string(p);
  return {Verdict::Inconclusive, "reducible modulo " + (list.empty() ? std::string("no admissible prime") : list)};
}

}  // namespace gdesc
