#include "galdesc/field.hpp"

#include <cctype>
#include <limits>

#include "galdesc/error.hpp"
#include "galdesc/polynomial.hpp"

namespace gdesc {

namespace detail {

struct FieldData {
  FieldKind kind = FieldKind::Rationals;
  std::int64_t p = 0;
  std::optional<Field> base;
  std::vector<FieldElem> modulus;  // over base, monic
  int degree = 1;
  int abs_degree = 1;
  int depth = 0;
  std::string symbol;
  std::string evidence;

  static Field wrap(std::shared_ptr<const FieldData> d) { return Field(std::move(d)); }
};

}  // namespace detail

namespace {

using detail::FieldData;

long as_long(const Rational& q) { return q.get_num().get_si(); }

Rational scalar_reduce(std::int64_t p, const Rational& q) {
  if (p == 0) return q;
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  if (den == 0) fail(ErrorCode::Singular, "denominator divisible by the characteristic");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
  mpz_class r = (num * inv) % p;
  return Rational(r);
}

Rational scalar_add(std::int64_t p, const Rational& a, const Rational& b) {
  if (p == 0) return a + b;
  long r = as_long(a) + as_long(b);
  if (r >= p) r -= p;
  return Rational(r);
}

Rational scalar_sub(std::int64_t p, const Rational& a, const Rational& b) {
  if (p == 0) return a - b;
  long r = as_long(a) - as_long(b);
  if (r < 0) r += p;
  return Rational(r);
}

Rational scalar_mul(std::int64_t p, const Rational& a, const Rational& b) {
  if (p == 0) return a * b;
  return Rational(static_cast<long>((static_cast<__int128>(as_long(a)) * as_long(b)) % p));
}

Rational scalar_inv(std::int64_t p, const Rational& a) {
  if (a == 0) fail(ErrorCode::Singular, "inverse of zero");
  if (p == 0) return 1 / a;
  // extended Euclid on machine integers
  long t = 0, new_t = 1, r = p, new_r = as_long(a);
  while (new_r != 0) {
    long q = r / new_r;
    long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return Rational(t);
}

int base_abs_degree(const FieldData& d) { return d.base ? d.base->absolute_degree() : 1; }

bool is_symbol(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Minimal polynomial over the prime field (characteristic zero) of x, by
// finding the first linear dependency among 1, x, x^2, ...
std::vector<Rational> minimal_polynomial_q(const Field& f, const FieldElem& x) {
  const std::size_t n = static_cast<std::size_t>(f.absolute_degree());
  // rows: reduced echelon basis of span{x^0..x^{k-1}} with the combination that produced each row
  std::vector<std::vector<Rational>> rows, combos;
  std::vector<std::size_t> pivots;
  FieldElem power = f.one();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Rational> v = power.coords();
    std::vector<Rational> c(n + 1, Rational(0));
    c[k] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rational coef = v[pivots[r]];
      if (coef == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] -= coef * rows[r][j];
      for (std::size_t j = 0; j <= n; ++j) c[j] -= coef * combos[r][j];
    }
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv == n) {
      // c is a relation sum c_j x^j = 0 with c_k = 1
      c.resize(k + 1);
      return c;
    }
    Rational lead = v[piv];
    for (auto& e : v) e /= lead;
    for (auto& e : c) e /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rational coef = rows[r][piv];
      if (coef == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[r][j] -= coef * v[j];
      for (std::size_t j = 0; j <= n; ++j) combos[r][j] -= coef * c[j];
    }
    rows.push_back(std::move(v));
    combos.push_back(std::move(c));
    pivots.push_back(piv);
    power = f.mul(power, x);
  }
  ensure(false, "minimal polynomial degree exceeds dimension");
  return {};
}

IrreducibilityResult tower_irreducibility_q(const Field& tentative) {
  const int n = tentative.absolute_degree();
  const Field& base = tentative.base();
  for (int c = 0; c <= 3; ++c) {
    FieldElem candidate = tentative.add(
        tentative.generator(), tentative.embed(base.mul(base.from_int(c), base.generator())));
    std::vector<Rational> m = minimal_polynomial_q(tentative, candidate);
    if (static_cast<int>(m.size()) - 1 != n) continue;
    IrreducibilityResult r = rational_irreducibility(m);
    if (r.verdict != Verdict::Inconclusive)
      r.evidence = "minimal polynomial of a primitive element over Q: " + r.evidence;
    return r;
  }
  return {Verdict::Inconclusive, "no primitive element found among the first candidates"};
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::rationals() {
  auto d = std::make_shared<FieldData>();
  d->kind = FieldKind::Rationals;
  return Field(std::move(d));
}

Field Field::prime(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31)) fail(ErrorCode::NotPrime, "prime too large: " + std::to_string(p));
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  auto d = std::make_shared<FieldData>();
  d->kind = FieldKind::Prime;
  d->p = p;
  return Field(std::move(d));
}

Field Field::extension(const Field& base, std::vector<FieldElem> modulus, std::string symbol,
                       bool assert_irreducible) {
  if (base.depth() >= 2) fail(ErrorCode::TowerTooDeep, "towers deeper than two levels are not supported");
  if (!is_symbol(symbol)) fail(ErrorCode::SchemaError, "invalid generator symbol '" + symbol + "'");
  for (const Field* b = &base; b->is_extension(); b = &b->base())
    if (b->symbol() == symbol) fail(ErrorCode::SchemaError, "generator symbol '" + symbol + "' already used in the base");
  if (modulus.size() < 2) fail(ErrorCode::SchemaError, "modulus must have degree >= 1");
  for (const auto& c : modulus)
    if (!base.contains(c)) fail(ErrorCode::SchemaError, "modulus coefficient not in base field");
  if (!base.is_one(modulus.back())) fail(ErrorCode::SchemaError, "modulus must be monic");

  auto d = std::make_shared<FieldData>();
  d->kind = FieldKind::Extension;
  d->p = base.characteristic();
  d->base = base;
  d->modulus = modulus;
  d->degree = static_cast<int>(modulus.size()) - 1;
  d->abs_degree = d->degree * base.absolute_degree();
  d->depth = base.depth() + 1;
  d->symbol = std::move(symbol);
  Field result(d);

  if (d->degree == 1) {
    d->evidence = "degree one";
  } else if (base.is_finite()) {
    if (!poly_is_irreducible_finite(base, modulus))
      fail(ErrorCode::Reducible, "modulus " + result.describe() + " is reducible");
    d->evidence = d->degree <= 3 ? "no root in the base field" : "trial division by all monic factors of degree <= deg/2";
  } else {
    IrreducibilityResult r;
    if (base.kind() == FieldKind::Rationals) {
      std::vector<Rational> q;
      for (const auto& c : modulus) q.push_back(c.coords()[0]);
      r = rational_irreducibility(q);
    } else {
      r = tower_irreducibility_q(result);
    }
    if (r.verdict == Verdict::Reducible)
      fail(ErrorCode::Reducible, "modulus " + result.describe() + " is reducible: " + r.evidence);
    if (r.verdict == Verdict::Inconclusive) {
      if (!assert_irreducible)
        fail(ErrorCode::UnverifiableIrreducibility,
             "irreducibility of " + result.describe() + " could not be verified (" + r.evidence +
                 "); pass an explicit irreducibility assertion");
      r.evidence = "asserted by caller";
    }
    d->evidence = r.evidence;
  }
  return result;
}

FieldKind Field::kind() const { return d_->kind; }
std::int64_t Field::characteristic() const { return d_->p; }
int Field::degree() const { return d_->degree; }
int Field::absolute_degree() const { return d_->abs_degree; }
int Field::depth() const { return d_->depth; }

const Field& Field::base() const {
  if (!d_->base) fail(ErrorCode::SchemaError, "prime field has no base");
  return *d_->base;
}

Field Field::prime_field() const {
  Field f = *this;
  while (f.is_extension()) f = f.base();
  return f;
}

const std::vector<FieldElem>& Field::modulus() const { return d_->modulus; }
const std::string& Field::symbol() const { return d_->symbol; }
const std::string& Field::irreducibility_evidence() const { return d_->evidence; }

std::optional<std::uint64_t> Field::order() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t q = 1;
  for (int i = 0; i < absolute_degree(); ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d_->p)) return std::nullopt;
    q *= static_cast<std::uint64_t>(d_->p);
  }
  return q;
}

FieldElem Field::zero() const { return FieldElem(std::vector<Rational>(d_->abs_degree, Rational(0))); }

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(std::int64_t n) const { return from_rational(Rational(static_cast<long>(n))); }

FieldElem Field::from_rational(const Rational& q) const {
  std::vector<Rational> c(d_->abs_degree, Rational(0));
  c[0] = scalar_reduce(d_->p, q);
  return FieldElem(std::move(c));
}

FieldElem Field::generator() const {
  if (!is_extension()) fail(ErrorCode::SchemaError, "prime field has no generator");
  const Field& b = base();
  std::vector<FieldElem> c{b.zero(), b.one()};
  return from_base_coeffs(c);
}

FieldElem Field::embed(const FieldElem& base_elem) const {
  if (!is_extension()) fail(ErrorCode::SchemaError, "prime field has no base");
  std::vector<Rational> c(d_->abs_degree, Rational(0));
  for (std::size_t i = 0; i < base_elem.size(); ++i) c[i] = base_elem.coords()[i];
  return FieldElem(std::move(c));
}

FieldElem Field::from_base_coeffs(std::span<const FieldElem> coeffs) const {
  const Field& b = base();
  std::vector<FieldElem> work(coeffs.begin(), coeffs.end());
  const std::size_t deg = static_cast<std::size_t>(d_->degree);
  for (std::size_t k = work.size(); k-- > deg;) {
    if (b.is_zero(work[k])) continue;
    const FieldElem c = work[k];
    for (std::size_t j = 0; j < deg; ++j)
      work[k - deg + j] = b.sub(work[k - deg + j], b.mul(c, d_->modulus[j]));
  }
  const int m = b.absolute_degree();
  std::vector<Rational> out(d_->abs_degree, Rational(0));
  for (std::size_t j = 0; j < deg && j < work.size(); ++j)
    for (int i = 0; i < m; ++i) out[j * m + i] = work[j].coords()[i];
  return FieldElem(std::move(out));
}

std::vector<FieldElem> Field::base_coeffs(const FieldElem& x) const {
  const int m = base_abs_degree(*d_);
  std::vector<FieldElem> out;
  out.reserve(d_->degree);
  for (int j = 0; j < d_->degree; ++j)
    out.emplace_back(std::vector<Rational>(x.coords().begin() + j * m, x.coords().begin() + (j + 1) * m));
  return out;
}

bool Field::in_base(const FieldElem& x) const {
  const int m = base_abs_degree(*d_);
  for (std::size_t i = m; i < x.size(); ++i)
    if (x.coords()[i] != 0) return false;
  return true;
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = scalar_add(d_->p, a.coords()[i], b.coords()[i]);
  return FieldElem(std::move(c));
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = scalar_sub(d_->p, a.coords()[i], b.coords()[i]);
  return FieldElem(std::move(c));
}

FieldElem Field::neg(const FieldElem& a) const { return sub(zero(), a); }

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
  if (!is_extension()) return FieldElem({scalar_mul(d_->p, a.coords()[0], b.coords()[0])});
  const Field& bf = base();
  auto ac = base_coeffs(a);
  auto bc = base_coeffs(b);
  std::vector<FieldElem> prod(ac.size() + bc.size() - 1, bf.zero());
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (bf.is_zero(ac[i])) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      if (bf.is_zero(bc[j])) continue;
      prod[i + j] = bf.add(prod[i + j], bf.mul(ac[i], bc[j]));
    }
  }
  return from_base_coeffs(prod);
}

FieldElem Field::inv(const FieldElem& a) const {
  if (is_zero(a)) fail(ErrorCode::Singular, "inverse of zero");
  if (!is_extension()) return FieldElem({scalar_inv(d_->p, a.coords()[0])});
  const Field& bf = base();
  Poly ap = base_coeffs(a);
  poly_trim(bf, ap);
  Poly mod = d_->modulus;
  PolyExtGcd eg = poly_ext_gcd(bf, ap, mod);
  if (poly_degree(eg.gcd) != 0)
    fail(ErrorCode::Reducible, "zero divisor found: modulus of " + describe() + " is reducible");
  return from_base_coeffs(eg.s);
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
  FieldElem result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

bool Field::is_zero(const FieldElem& a) const {
  for (const auto& c : a.coords())
    if (c != 0) return false;
  return true;
}

bool Field::contains(const FieldElem& x) const {
  if (static_cast<int>(x.size()) != d_->abs_degree) return false;
  for (const auto& c : x.coords()) {
    if (d_->p == 0) {
      Rational copy = c;
      copy.canonicalize();
      if (copy.get_num() != c.get_num() || copy.get_den() != c.get_den()) return false;
    } else {
      if (c.get_den() != 1 || c < 0 || c >= d_->p) return false;
    }
  }
  return true;
}

std::vector<FieldElem> Field::elements() const {
  auto q = order();
  if (!q || *q > (1u << 20)) fail(ErrorCode::SchemaError, "field too large to enumerate");
  std::vector<FieldElem> out;
  out.reserve(*q);
  std::vector<long> digits(d_->abs_degree, 0);
  for (std::uint64_t k = 0; k < *q; ++k) {
    std::vector<Rational> c(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) c[i] = Rational(digits[i]);
    out.emplace_back(std::move(c));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < d_->p) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::string Field::format_bare(const FieldElem& x) const {
  if (!is_extension()) return x.coords()[0].get_str();
  const Field& b = base();
  auto coeffs = base_coeffs(x);
  std::string out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (b.is_zero(coeffs[j])) continue;
    // compound coefficients (tower case) are parenthesised
    bool prime_only = true;
    for (std::size_t i = 1; i < coeffs[j].size(); ++i)
      if (coeffs[j].coords()[i] != 0) prime_only = false;
    std::string cs = prime_only ? coeffs[j].coords()[0].get_str() : "(" + b.format_bare(coeffs[j]) + ")";
    std::string term = cs;
    if (j >= 1) {
      term += "*" + d_->symbol;
      if (j > 1) term += "^" + std::to_string(j);
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

std::string Field::format(const FieldElem& x) const {
  if (kind() == FieldKind::Prime) return x.coords()[0].get_str() + " mod " + std::to_string(d_->p);
  return format_bare(x);
}

namespace {

class ElemParser {
 public:
  explicit ElemParser(std::string_view text) : s_(text) {}

  FieldElem parse_all(const Field& f) {
    FieldElem v = parse_sum(f);
    skip_ws();
    if (pos_ != s_.size()) error("unexpected trailing input");
    return v;
  }

  void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "cannot parse field element '" + std::string(s_) + "': " + what);
  }

  std::string_view rest() const { return s_.substr(pos_); }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }
  bool accept_symbol(const std::string& sym) {
    skip_ws();
    if (s_.substr(pos_, sym.size()) != sym) return false;
    std::size_t end = pos_ + sym.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  FieldElem parse_rational(const Field& f) {
    mpz_class num(number());
    mpz_class den(1);
    if (accept('/')) {
      den = mpz_class(number());
      if (den == 0) error("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return f.from_rational(q);
  }

  // A term: [coefficient] ['*'] [symbol ['^' n]]
  FieldElem parse_term(const Field& f) {
    bool have_coef = false;
    FieldElem coef = f.one();
    if (accept('(')) {
      const Field& inner = f.is_extension() ? f.base() : f;
      FieldElem c = parse_sum(inner);
      if (!accept(')')) error("missing ')'");
      coef = f.is_extension() ? f.embed(c) : c;
      have_coef = true;
    } else if (peek_digit()) {
      coef = parse_rational(f);
      have_coef = true;
    }
    if (f.is_extension()) {
      bool star = have_coef ? accept('*') : false;
      if (accept_symbol(f.symbol())) {
        std::uint64_t e = 1;
        if (accept('^')) e = std::stoull(number());
        coef = f.mul(coef, f.pow(f.generator(), e));
        return coef;
      }
      if (star) error("expected generator symbol after '*'");
    }
    if (!have_coef) error("expected a term");
    return coef;
  }

  FieldElem parse_sum(const Field& f) {
    FieldElem acc = f.zero();
    bool first = true;
    while (true) {
      bool negative = false;
      if (accept('-')) {
        negative = true;
      } else if (accept('+')) {
      } else if (!first) {
        break;
      }
      FieldElem t = parse_term(f);
      acc = negative ? f.sub(acc, t) : f.add(acc, t);
      first = false;
    }
    return acc;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElem Field::parse(std::string_view text) const {
  // optional "mod p" suffix naming the characteristic
  std::string_view body = text;
  auto mod_pos = text.find(" mod ");
  if (mod_pos != std::string_view::npos) {
    std::string suffix(text.substr(mod_pos + 5));
    std::int64_t p = 0;
    try {
      p = std::stoll(suffix);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad modulus suffix in '" + std::string(text) + "'");
    }
    if (p != d_->p) fail(ErrorCode::ParseError, "element '" + std::string(text) + "' names the wrong characteristic");
    body = text.substr(0, mod_pos);
  }
  ElemParser parser(body);
  return parser.parse_all(*this);
}

std::string Field::describe() const {
  switch (kind()) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "F_" + std::to_string(d_->p);
    case FieldKind::Extension: break;
  }
  const Field& b = base();
  std::string poly;
  for (std::size_t j = d_->modulus.size(); j-- > 0;) {
    const FieldElem& c = d_->modulus[j];
    if (b.is_zero(c)) continue;
    std::string cs = b.format_bare(c);
    bool unit = b.is_one(c) && j > 0;
    std::string term;
    if (b.is_extension() && !b.in_base(c)) cs = "(" + cs + ")";
    else if (b.is_extension()) cs = c.coords()[0].get_str();
    if (j == 0) {
      term = cs;
    } else {
      term = unit ? d_->symbol : cs + "*" + d_->symbol;
      if (j > 1) term += "^" + std::to_string(j);
    }
    if (!poly.empty() && term[0] != '-') poly += "+";
    poly += term;
  }
  return b.describe() + "[" + d_->symbol + "]/(" + poly + ")";
}

bool operator==(const Field& a, const Field& b) {
  if (a.d_ == b.d_) return true;
  if (a.kind() != b.kind() || a.characteristic() != b.characteristic()) return false;
  if (!a.is_extension()) return true;
  return a.symbol() == b.symbol() && a.modulus() == b.modulus() && a.base() == b.base();
}

}  // namespace gdesc
