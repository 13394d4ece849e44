#include "pencils/spectrum.hpp"

#include <random>

#include "pencils/errors.hpp"
#include "pencils/fp_kernels.hpp"
#include "pencils/matrix.hpp"

namespace pencils {

// ---------------------------------------------------------------------------
// Pencil

Pencil Pencil::make(BivariatePolynomial f, BivariatePolynomial g) {
  if (!(f.field() == g.field()))
    throw FieldMismatch("pencil members over different fields");
  if (f.is_zero() || g.is_zero())
    throw ZeroPolynomial("pencil needs nonzero f and g");
  int d = std::max(*f.total_degree(), *g.total_degree());
  if (d < 2)
    throw DegreeTooSmall("pencil degree must be >= 2, got " +
                         std::to_string(d));
  if (!gcd_bivariate(f, g).is_constant())
    throw CompositeOrNonReduced("f/g is not reduced: gcd(f, g) is not constant");
  HomogeneousPolynomial3 fs = homogenize(f, d);
  HomogeneousPolynomial3 gs = homogenize(g, d);
  return Pencil(std::move(f), std::move(g), d, std::move(fs), std::move(gs));
}

HomogeneousPolynomial3 Pencil::member(const FieldElement& mu,
                                      const FieldElement& lambda) const {
  return f_sharp_.scaled(mu) + g_sharp_.scaled(lambda);
}

// ---------------------------------------------------------------------------
// Member statistics

MemberStatistics member_statistics(const HomogeneousPolynomial3& F) {
  if (F.is_zero()) throw ZeroPolynomial("statistics of the zero member");
  const CoefficientField& k = F.field();
  long long d = F.declared_degree();
  if (k.is_prime_field() &&
      static_cast<long long>(k.characteristic) <= d * (d - 1))
    throw CharacteristicTooSmall("need characteristic 0 or > d(d-1)");

  MemberStatistics st;
  st.e_infinity = F.z_valuation();
  BivariatePolynomial affine = F.dehomogenize();

  long long affine_factor_count = 0;
  if (!affine.is_constant()) {
    SquarefreeDecomposition sq = squarefree_decompose(affine);
    for (const auto& [gk, mult] : sq.parts) {
      int dg = *gk.total_degree();
      // Squarefree g_k: dim ker R(g_k#) = r_k - 1 counts the absolutely
      // irreducible factors without computing them.
      long long rk = static_cast<long long>(
                         build_matrix_R_hom(homogenize(gk, dg))
                             .kernel_dimension()) +
                     1;
      st.classes.push_back({mult, rk, dg});
      affine_factor_count += rk;
      st.m += static_cast<long long>(mult) * rk;
      st.omega += static_cast<long long>(mult - 1) * dg;
    }
  }
  st.n = affine_factor_count + (st.e_infinity > 0 ? 1 : 0);
  st.m += st.e_infinity;
  st.omega += std::max<long long>(st.e_infinity - 1, 0);
  long long sum_excess = st.m - st.n;  // sum (e_i - 1)
  st.theta = (st.omega + 1) * st.omega / 2 - sum_excess;

  st.kernel_dim = build_matrix_R_hom(F).kernel_dimension();
  if (st.m - 1 + st.omega + st.theta !=
      static_cast<long long>(st.kernel_dim))
    throw KeyEquationMismatch(
        "m-1+omega+theta = " +
        std::to_string(st.m - 1 + st.omega + st.theta) + " but dim ker R = " +
        std::to_string(st.kernel_dim) + " for " + F.str());
  return st;
}

// ---------------------------------------------------------------------------
// Brute-force spectrum over F_p

std::vector<SpectralPoint> spectrum_bruteforce(const Pencil& pencil) {
  const CoefficientField& k = pencil.field();
  long long d = pencil.degree();
  if (!k.is_prime_field())
    throw FieldMismatch("spectrum_bruteforce needs a prime field");
  if (static_cast<long long>(k.characteristic) <= d * (d - 1))
    throw CharacteristicTooSmall("need p > d(d-1)");
  std::uint64_t p = k.characteristic;

  RuppertMatrix A = build_matrix_R_hom(pencil.f_sharp());
  RuppertMatrix B = build_matrix_R_hom(pencil.g_sharp());
  std::size_t rows = A.entries().rows(), cols = A.entries().cols();

  FpMat fa(rows, cols, p), fb(rows, cols, p);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      fa.at(i, j) = A.entries().at(i, j).residue_value();
      fb.at(i, j) = B.entries().at(i, j).residue_value();
    }

  std::vector<SpectralPoint> out;
  FpMat member(rows, cols, p);
  // All (mu : 1), then (1 : 0). Member rows are B + mu*A, assembled with
  // the row kernels.
  for (std::uint64_t mu = 0; mu <= p; ++mu) {
    bool infinity = (mu == p);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        member.at(i, j) = infinity ? fa.at(i, j) : fb.at(i, j);
    if (!infinity && mu != 0)
      for (std::size_t i = 0; i < rows; ++i)
        fpk::row_addmul(&member.at(i, 0), &fa.at(i, 0), cols, mu, p);
    std::size_t dim = member.kernel_dimension();
    if (dim == 0) continue;

    SpectralPoint sp;
    sp.point = infinity
                   ? ProjectivePoint::infinity(k)
                   : ProjectivePoint::finite(FieldElement::residue(k, mu));
    sp.kernel_dim = dim;
    HomogeneousPolynomial3 m = pencil.member(sp.point.mu, sp.point.lambda);
    sp.e_infinity = m.z_valuation();
    sp.degree_deficient = sp.e_infinity > 0;
    out.push_back(std::move(sp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// kappa

namespace {

BivariatePolynomial top_form(const BivariatePolynomial& f, int d) {
  BivariatePolynomial r(f.field());
  for (const auto& [e, c] : f.terms())
    if (e.total() == d) r.set_coeff(e, c);
  return r;
}

}  // namespace

KappaResult compute_kappa(const Pencil& pencil) {
  const CoefficientField& k = pencil.field();
  int d = pencil.degree();
  BivariatePolynomial tf = top_form(pencil.f(), d);
  BivariatePolynomial tg = top_form(pencil.g(), d);

  KappaResult res;
  if (tf.is_zero()) {
    res.member = ProjectivePoint::infinity(k);
  } else if (tg.is_zero()) {
    res.member = ProjectivePoint::finite(FieldElement::zero(k));
  } else {
    // Z | mu f# + lambda g# iff the degree-d forms cancel, which needs them
    // proportional.
    Exp2 e = tf.leading_monomial();
    FieldElement cf = tf.leading_coefficient();
    FieldElement cg = tg.coeff(e);
    if (!cg.is_zero() && tf.scaled(cg) == tg.scaled(cf))
      res.member = ProjectivePoint::finite(-(cg / cf));
  }
  if (res.member) {
    HomogeneousPolynomial3 m =
        pencil.member(res.member->mu, res.member->lambda);
    res.e_infinity = m.z_valuation();
  }
  res.kappa = std::max<long long>(res.e_infinity - 1, 0);
  return res;
}

// ---------------------------------------------------------------------------
// Bertini reduction

BertiniResult bertini_reduce(const NVariatePolynomial& F, std::uint64_t seed) {
  if (!F.field.is_rationals())
    throw FieldMismatch("bertini_reduce works over Q");
  if (F.nvars < 3) throw InconsistentDegrees("bertini_reduce needs n >= 3");
  auto deg = F.total_degree();
  if (!deg) throw ZeroPolynomial("bertini_reduce of zero polynomial");
  if (*deg < 2)
    throw DegreeTooSmall("degree >= 2 required downstream, got " +
                         std::to_string(*deg));
  const CoefficientField& k = F.field;
  int d = *deg, n = F.nvars;
  long long bound = 10LL * d * n;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> draw(-bound, bound);

  for (int attempt = 0; attempt < 5; ++attempt) {
    std::vector<std::array<long long, 3>> subs;
    std::vector<BivariatePolynomial> lines;
    for (int i = 0; i < n; ++i) {
      std::array<long long, 3> row{draw(rng), draw(rng), draw(rng)};
      subs.push_back(row);
      BivariatePolynomial line(k);
      line.set_coeff({1, 0}, FieldElement::integer(k, row[0]));
      line.set_coeff({0, 1}, FieldElement::integer(k, row[1]));
      line.set_coeff({0, 0}, FieldElement::integer(k, row[2]));
      lines.push_back(std::move(line));
    }
    BivariatePolynomial out(k);
    for (const auto& [exps, c] : F.terms) {
      BivariatePolynomial term = BivariatePolynomial::constant(c);
      for (int i = 0; i < n; ++i)
        if (exps[static_cast<std::size_t>(i)] > 0)
          term *= lines[static_cast<std::size_t>(i)].pow(
              static_cast<unsigned>(exps[static_cast<std::size_t>(i)]));
      out += term;
    }
    if (!out.is_zero() && *out.total_degree() == d)
      return {std::move(out), std::move(subs), attempt};
  }
  throw DegreeDropPersistent(
      "all 5 substitution draws lost total degree; pathological input");
}

}  // namespace pencils
