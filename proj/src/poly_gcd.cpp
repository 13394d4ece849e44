#include "pencils/errors.hpp"
#include "pencils/polynomial.hpp"

namespace pencils {

namespace {

bool monomial_divides(const Exp2& a, const Exp2& b) {
  return a.i <= b.i && a.j <= b.j;
}

// Polynomials in K[X] are represented as bivariate polynomials with no Y.
bool is_univariate_x(const BivariatePolynomial& f) {
  for (const auto& [e, c] : f.terms())
    if (e.j != 0) return false;
  return true;
}

int degree_in_y(const BivariatePolynomial& f) {
  int d = 0;
  for (const auto& [e, c] : f.terms()) d = std::max(d, e.j);
  return d;
}

// Coefficient of Y^j viewed in K[X].
BivariatePolynomial y_layer(const BivariatePolynomial& f, int j) {
  BivariatePolynomial r(f.field());
  for (const auto& [e, c] : f.terms())
    if (e.j == j) r.set_coeff({e.i, 0}, c);
  return r;
}

// Euclid in K[X] with monic remainders; result monic.
BivariatePolynomial gcd_univariate_x(BivariatePolynomial a,
                                     BivariatePolynomial b) {
  auto deg = [](const BivariatePolynomial& p) { return p.degree_x(); };
  while (!b.is_zero()) {
    // a mod b
    BivariatePolynomial r = a;
    int db = deg(b);
    FieldElement lb = b.coeff({db, 0});
    while (!r.is_zero() && deg(r) >= db) {
      int dr = deg(r);
      FieldElement q = r.coeff({dr, 0}) / lb;
      r -= b * BivariatePolynomial::monomial(b.field(), {dr - db, 0}, q);
    }
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

// gcd over K[X] of all Y-layer coefficients, monic.
BivariatePolynomial content_y(const BivariatePolynomial& f) {
  BivariatePolynomial c(f.field());
  for (int j = 0; j <= degree_in_y(f); ++j) {
    BivariatePolynomial layer = y_layer(f, j);
    if (layer.is_zero()) continue;
    c = c.is_zero() ? layer.monic() : gcd_univariate_x(c, layer);
    if (c.is_constant()) break;
  }
  return c;
}

BivariatePolynomial primitive_part_y(const BivariatePolynomial& f,
                                     const BivariatePolynomial& content) {
  auto q = try_exact_divide(f, content);
  if (!q) throw InternalError("content does not divide its polynomial");
  return *q;
}

// One pseudo-reduction chain: returns R with deg_Y(R) < deg_Y(B) and
// gcd(A,B) = gcd(B,R) over K(X)[Y].
BivariatePolynomial pseudo_remainder_y(BivariatePolynomial R,
                                       const BivariatePolynomial& B) {
  int db = degree_in_y(B);
  BivariatePolynomial lb = y_layer(B, db);
  while (!R.is_zero() && degree_in_y(R) >= db) {
    int dr = degree_in_y(R);
    BivariatePolynomial t =
        y_layer(R, dr) * BivariatePolynomial::monomial(
                             R.field(), {0, dr - db}, FieldElement::one(R.field()));
    R = lb * R - t * B;
  }
  return R;
}

}  // namespace

std::optional<BivariatePolynomial> try_exact_divide(
    const BivariatePolynomial& f, const BivariatePolynomial& g) {
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  BivariatePolynomial q(f.field());
  BivariatePolynomial r = f;
  Exp2 eg = g.leading_monomial();
  FieldElement cg = g.leading_coefficient();
  while (!r.is_zero()) {
    Exp2 er = r.leading_monomial();
    if (!monomial_divides(eg, er)) return std::nullopt;
    BivariatePolynomial t = BivariatePolynomial::monomial(
        f.field(), {er.i - eg.i, er.j - eg.j}, r.leading_coefficient() / cg);
    q += t;
    r -= t * g;
  }
  return q;
}

BivariatePolynomial exact_divide(const BivariatePolynomial& f,
                                 const BivariatePolynomial& g) {
  auto q = try_exact_divide(f, g);
  if (!q) throw InternalError("exact_divide: not divisible");
  return *q;
}

BivariatePolynomial gcd_bivariate(const BivariatePolynomial& f,
                                  const BivariatePolynomial& g) {
  if (f.is_zero() && g.is_zero())
    throw ZeroPolynomial("gcd of two zero polynomials");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  const CoefficientField& k = f.field();
  if (f.is_constant() || g.is_constant())
    return BivariatePolynomial::constant(FieldElement::one(k));

  // Pure K[X] inputs short-circuit to univariate Euclid.
  if (is_univariate_x(f) && is_univariate_x(g))
    return gcd_univariate_x(f, g);

  BivariatePolynomial cf = content_y(f);
  BivariatePolynomial cg = content_y(g);
  BivariatePolynomial c = gcd_univariate_x(cf, cg);

  BivariatePolynomial A = primitive_part_y(f, cf);
  BivariatePolynomial B = primitive_part_y(g, cg);
  if (degree_in_y(A) < degree_in_y(B)) std::swap(A, B);

  BivariatePolynomial gpp = BivariatePolynomial::constant(FieldElement::one(k));
  if (degree_in_y(B) > 0) {
    for (;;) {
      BivariatePolynomial R = pseudo_remainder_y(A, B);
      if (R.is_zero()) {
        gpp = primitive_part_y(B, content_y(B));
        break;
      }
      if (degree_in_y(R) == 0) break;  // coprime primitive parts
      A = std::move(B);
      B = primitive_part_y(R, content_y(R));
    }
  }
  return (c * gpp).monic();
}

BivariatePolynomial gcd_bivariate(const BivariatePolynomial& f,
                                  const BivariatePolynomial& g,
                                  const BivariatePolynomial& h) {
  BivariatePolynomial r = gcd_bivariate(f, g);
  if (h.is_zero()) return r;
  return gcd_bivariate(r, h);
}

BivariatePolynomial SquarefreeDecomposition::reconstruct(
    const CoefficientField& k) const {
  BivariatePolynomial p = BivariatePolynomial::constant(constant);
  for (const auto& [g, m] : parts) p *= g.pow(static_cast<unsigned>(m));
  (void)k;
  return p;
}

SquarefreeDecomposition squarefree_decompose(const BivariatePolynomial& f) {
  if (f.is_zero())
    throw ZeroPolynomial("squarefree decomposition of zero");
  const CoefficientField& k = f.field();
  int d = *f.total_degree();
  if (k.is_prime_field() && k.characteristic <= static_cast<std::uint64_t>(d))
    throw CharacteristicTooSmall("need characteristic 0 or > deg f = " +
                                 std::to_string(d));

  SquarefreeDecomposition out;
  out.constant = FieldElement::one(k);
  if (f.is_constant()) {
    out.constant = f.constant_term();
    return out;
  }

  BivariatePolynomial fx = f.derivative(Var::X);
  BivariatePolynomial fy = f.derivative(Var::Y);
  BivariatePolynomial u = gcd_bivariate(f, fx, fy);
  BivariatePolynomial w = exact_divide(f, u);  // squarefree part

  int mult = 1;
  while (!w.is_constant()) {
    BivariatePolynomial v =
        u.is_constant() ? BivariatePolynomial::constant(FieldElement::one(k))
                        : gcd_bivariate(u, w);
    BivariatePolynomial gi = exact_divide(w, v);
    if (!gi.is_constant()) out.parts.emplace_back(gi.monic(), mult);
    u = exact_divide(u, v);
    w = std::move(v);
    ++mult;
  }

  BivariatePolynomial prod =
      BivariatePolynomial::constant(FieldElement::one(k));
  for (const auto& [g, m] : out.parts) prod *= g.pow(static_cast<unsigned>(m));
  BivariatePolynomial c = exact_divide(f, prod);
  if (!c.is_constant())
    throw InternalError("squarefree decomposition lost a factor");
  out.constant = c.constant_term();
  if (out.reconstruct(k) != f)
    throw InternalError("squarefree reconstruction mismatch");
  return out;
}

}  // namespace pencils
