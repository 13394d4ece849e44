#include "pencils/ruppert.hpp"

#include <algorithm>
#include <map>

#include "pencils/errors.hpp"

namespace pencils {

std::vector<Exp2> monomials_up_to(int n) {
  std::vector<Exp2> out;
  for (int t = 0; t <= n; ++t)
    for (int i = 0; i <= t; ++i) out.push_back({i, t - i});
  return out;
}

std::vector<Exp2> monomials_of_degree(int n) {
  std::vector<Exp2> out;
  if (n < 0) return out;
  for (int i = 0; i <= n; ++i) out.push_back({i, n - i});
  return out;
}

std::vector<Exp3> monomials3_of_degree(int n) {
  std::vector<Exp3> out;
  if (n < 0) return out;
  for (int t = 0; t <= n; ++t)
    for (int i = 0; i <= t; ++i) out.push_back({i, t - i, n - t});
  // Re-sort into graded-lex (all have the same total degree, so this is lex
  // on (i, j)).
  std::sort(out.begin(), out.end(), [](const Exp3& a, const Exp3& b) {
    return GradedLex3{}(a, b);
  });
  return out;
}

DomainBasis basis_full_pairs(const CoefficientField& k, int nu) {
  if (nu < 1) throw NuTooSmall("nu must be >= 1");
  DomainBasis b{DomainKind::FullPairs, nu, k, {}};
  BivariatePolynomial zero(k);
  for (const Exp2& m : monomials_up_to(nu - 1))
    b.pairs.emplace_back(
        BivariatePolynomial::monomial(k, m, FieldElement::one(k)), zero);
  for (const Exp2& m : monomials_up_to(nu - 1))
    b.pairs.emplace_back(
        zero, BivariatePolynomial::monomial(k, m, FieldElement::one(k)));
  return b;
}

DomainBasis basis_E(const CoefficientField& k, int nu) {
  if (nu < 1) throw NuTooSmall("nu must be >= 1");
  DomainBasis b{DomainKind::ConstrainedPairs, nu, k, {}};
  BivariatePolynomial zero(k);
  FieldElement one = FieldElement::one(k);
  for (const Exp2& m : monomials_up_to(nu - 2))
    b.pairs.emplace_back(BivariatePolynomial::monomial(k, m, one), zero);
  for (const Exp2& m : monomials_up_to(nu - 2))
    b.pairs.emplace_back(zero, BivariatePolynomial::monomial(k, m, one));
  // Top-degree pairs (Y*Q, -X*Q), Q of exact degree nu-2: XG+YH cancels in
  // degree nu.
  for (const Exp2& q : monomials_of_degree(nu - 2))
    b.pairs.emplace_back(
        BivariatePolynomial::monomial(k, {q.i, q.j + 1}, one),
        BivariatePolynomial::monomial(k, {q.i + 1, q.j}, -one));
  if (b.pairs.size() !=
      static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu) - 1)
    throw InternalError("basis_E dimension mismatch");
  return b;
}

BivariatePolynomial ruppert_image(const BivariatePolynomial& f,
                                  const BivariatePolynomial& G,
                                  const BivariatePolynomial& H) {
  return (f * G.derivative(Var::Y) - G * f.derivative(Var::Y)) -
         (f * H.derivative(Var::X) - H * f.derivative(Var::X));
}

namespace {

FieldMat matrix_from_images(
    const CoefficientField& k, const std::vector<Exp2>& codomain,
    const std::vector<BivariatePolynomial>& images) {
  std::map<Exp2, std::size_t, GradedLex2> row_of;
  for (std::size_t r = 0; r < codomain.size(); ++r)
    row_of.emplace(codomain[r], r);
  FieldMat m(codomain.size(), images.size(), k);
  for (std::size_t c = 0; c < images.size(); ++c) {
    for (const auto& [e, v] : images[c].terms()) {
      auto it = row_of.find(e);
      if (it == row_of.end())
        throw DegreeLeakage("image term outside codomain: X^" +
                            std::to_string(e.i) + "Y^" + std::to_string(e.j));
      m.at(it->second, c) = v;
    }
  }
  return m;
}

}  // namespace

RuppertMatrix build_matrix_G(const BivariatePolynomial& f, int nu) {
  if (f.is_zero()) throw ZeroPolynomial("G_nu of zero polynomial");
  int d = *f.total_degree();
  if (nu < 1 || nu < d)
    throw NuTooSmall("need nu >= deg f = " + std::to_string(d));
  DomainBasis basis = basis_full_pairs(f.field(), nu);
  std::vector<BivariatePolynomial> images;
  images.reserve(basis.pairs.size());
  for (const auto& [G, H] : basis.pairs) images.push_back(ruppert_image(f, G, H));
  std::vector<Exp2> codomain = monomials_up_to(nu + d - 2);
  FieldMat m = matrix_from_images(f.field(), codomain, images);
  return RuppertMatrix(MapKind::G_nu, std::move(basis), std::move(codomain),
                       std::move(m), f.str());
}

RuppertMatrix build_matrix_R(const BivariatePolynomial& f, int nu) {
  if (f.is_zero()) throw ZeroPolynomial("R_nu of zero polynomial");
  int d = *f.total_degree();
  if (nu < 1 || nu < d)
    throw NuTooSmall("need nu >= deg f = " + std::to_string(d));
  DomainBasis basis = basis_E(f.field(), nu);
  std::vector<BivariatePolynomial> images;
  images.reserve(basis.pairs.size());
  // The degree-(nu+d-2) component of the image dies exactly when nu = d:
  // the top pair (Y*Q, -X*Q) maps to (nu-d) f_d Q + lower order. Only in
  // that case is the codomain truncated; for nu > d the kernel is the
  // honest kernel of the untruncated restriction, which is what the kernel
  // shift identities against G_{nu-1} are about.
  int codomain_degree = (nu == d) ? nu + d - 3 : nu + d - 2;
  for (const auto& [G, H] : basis.pairs) {
    BivariatePolynomial img = ruppert_image(f, G, H);
    auto deg = img.total_degree();
    if (deg && *deg > codomain_degree)
      throw DegreeLeakage("R_d image has degree " + std::to_string(*deg) +
                          " > " + std::to_string(codomain_degree));
    images.push_back(std::move(img));
  }
  std::vector<Exp2> codomain = monomials_up_to(codomain_degree);
  FieldMat m = matrix_from_images(f.field(), codomain, images);
  return RuppertMatrix(MapKind::R_nu, std::move(basis), std::move(codomain),
                       std::move(m), f.str());
}

RuppertMatrix build_matrix_R_of_one(const CoefficientField& k, int d) {
  if (d < 1) throw NuTooSmall("d must be >= 1");
  DomainBasis basis = basis_E(k, d);
  std::vector<BivariatePolynomial> images;
  images.reserve(basis.pairs.size());
  for (const auto& [G, H] : basis.pairs)
    images.push_back(G.derivative(Var::Y) - H.derivative(Var::X));
  std::vector<Exp2> codomain = monomials_up_to(d - 2);
  FieldMat m = matrix_from_images(k, codomain, images);
  return RuppertMatrix(MapKind::R_nu, std::move(basis), std::move(codomain),
                       std::move(m), "1");
}

RuppertMatrix build_matrix_R_hom(const HomogeneousPolynomial3& F) {
  if (F.is_zero()) throw ZeroPolynomial("R of zero polynomial");
  int d = F.declared_degree();
  if (d < 1) throw NuTooSmall("R needs degree >= 1");
  const CoefficientField& k = F.field();
  // The affine basis of E_d homogenized to degree d-1 is a basis of
  // E = {Z | XG + YH}.
  DomainBasis basis = basis_E(k, d);
  basis.kind = DomainKind::HomogeneousConstrained;

  std::vector<Exp3> codomain = monomials3_of_degree(2 * d - 3);
  std::map<Exp3, std::size_t, GradedLex3> row_of;
  for (std::size_t r = 0; r < codomain.size(); ++r)
    row_of.emplace(codomain[r], r);
  FieldMat m(codomain.size(), basis.pairs.size(), k);

  for (std::size_t c = 0; c < basis.pairs.size(); ++c) {
    HomogeneousPolynomial3 G = homogenize(basis.pairs[c].first, d - 1);
    HomogeneousPolynomial3 H = homogenize(basis.pairs[c].second, d - 1);
    HomogeneousPolynomial3 img =
        (F * G.derivative(Var::Y) - G * F.derivative(Var::Y)) -
        (F * H.derivative(Var::X) - H * F.derivative(Var::X));
    if (img.is_zero()) continue;
    if (img.z_valuation() < 1)
      throw DegreeLeakage("R image not divisible by Z");
    HomogeneousPolynomial3 q = img.div_z_power(1);
    for (const auto& [e, v] : q.terms()) {
      auto it = row_of.find(e);
      if (it == row_of.end()) throw DegreeLeakage("R image outside codomain");
      m.at(it->second, c) = v;
    }
  }
  return RuppertMatrix(MapKind::R_homogeneous, std::move(basis),
                       std::move(codomain), std::move(m), F.str());
}

RuppertMatrix::Kernel RuppertMatrix::kernel() const {
  Kernel out;
  out.coordinates = entries_.kernel_basis();
  out.dimension = out.coordinates.size();
  const CoefficientField& k = domain_.field;
  for (const auto& v : out.coordinates) {
    BivariatePolynomial G(k), H(k);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      G += domain_.pairs[j].first.scaled(v[j]);
      H += domain_.pairs[j].second.scaled(v[j]);
    }
    out.basis.emplace_back(std::move(G), std::move(H));
  }
  return out;
}

RuppertMatrix RuppertMatrix::linear_combination(const FieldElement& u,
                                                const RuppertMatrix& A,
                                                const FieldElement& v,
                                                const RuppertMatrix& B) {
  if (A.entries_.rows() != B.entries_.rows() ||
      A.entries_.cols() != B.entries_.cols())
    throw InternalError("linear_combination: shape mismatch");
  FieldMat m(A.entries_.rows(), A.entries_.cols(), A.domain_.field);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      m.at(i, j) = u * A.entries_.at(i, j) + v * B.entries_.at(i, j);
  RuppertMatrix r = A;
  r.entries_ = std::move(m);
  r.source_ = "(" + u.str() + ")*(" + A.source_ + ") + (" + v.str() + ")*(" +
              B.source_ + ")";
  return r;
}

namespace {
long long binom2(long long n) { return n * (n - 1) / 2; }
}  // namespace

long long dim_ker_G_formula(int r, int d, int nu,
                            const std::vector<std::pair<int, int>>& pairs) {
  if (r < 1 || static_cast<std::size_t>(r) != pairs.size())
    throw InconsistentDegrees("r must equal the number of (d_i, e_i) pairs");
  long long sum_de = 0, sum_excess = 0;
  for (const auto& [di, ei] : pairs) {
    if (di < 1 || ei < 1) throw InconsistentDegrees("d_i, e_i must be >= 1");
    sum_de += static_cast<long long>(di) * ei;
    sum_excess += static_cast<long long>(di) * (ei - 1);
  }
  if (sum_de != d)
    throw InconsistentDegrees("sum d_i e_i = " + std::to_string(sum_de) +
                              " != d = " + std::to_string(d));
  if (nu < d) throw InconsistentDegrees("nu < d");
  return (r - 1) + binom2(2 + nu - d + sum_excess);
}

long long dim_ker_R_hom_formula(int r,
                                const std::vector<std::pair<int, int>>& pairs) {
  if (r < 1 || static_cast<std::size_t>(r) != pairs.size())
    throw InconsistentDegrees("r must equal the number of (d_i, e_i) pairs");
  long long sum_excess = 0;
  for (const auto& [di, ei] : pairs) {
    if (di < 1 || ei < 1) throw InconsistentDegrees("d_i, e_i must be >= 1");
    sum_excess += static_cast<long long>(di) * (ei - 1);
  }
  return (r - 2) + binom2(2 + sum_excess);
}

std::optional<std::vector<FieldElement>> coordinates_in_basis(
    const DomainBasis& basis, const BivariatePolynomial& G,
    const BivariatePolynomial& H) {
  const CoefficientField& k = basis.field;
  // Stack (G-part, H-part) coefficient vectors over all monomials appearing
  // anywhere, then look for a kernel vector of [basis | target] whose last
  // coordinate is nonzero.
  std::map<Exp2, std::size_t, GradedLex2> rows_g, rows_h;
  auto note = [](std::map<Exp2, std::size_t, GradedLex2>& rows,
                 const BivariatePolynomial& p) {
    for (const auto& [e, c] : p.terms()) rows.emplace(e, 0);
  };
  for (const auto& [bg, bh] : basis.pairs) {
    note(rows_g, bg);
    note(rows_h, bh);
  }
  note(rows_g, G);
  note(rows_h, H);
  std::size_t idx = 0;
  for (auto& [e, r] : rows_g) r = idx++;
  for (auto& [e, r] : rows_h) r = idx++;

  FieldMat m(idx, basis.pairs.size() + 1, k);
  auto fill = [&](const BivariatePolynomial& p,
                  const std::map<Exp2, std::size_t, GradedLex2>& rows,
                  std::size_t col) {
    for (const auto& [e, c] : p.terms()) m.at(rows.at(e), col) = c;
  };
  for (std::size_t j = 0; j < basis.pairs.size(); ++j) {
    fill(basis.pairs[j].first, rows_g, j);
    fill(basis.pairs[j].second, rows_h, j);
  }
  fill(G, rows_g, basis.pairs.size());
  fill(H, rows_h, basis.pairs.size());

  for (const auto& v : m.kernel_basis()) {
    const FieldElement& last = v.back();
    if (last.is_zero()) continue;
    FieldElement s = -(FieldElement::one(k) / last);
    std::vector<FieldElement> coords;
    coords.reserve(basis.pairs.size());
    for (std::size_t j = 0; j + 1 < v.size(); ++j) coords.push_back(v[j] * s);
    return coords;
  }
  return std::nullopt;
}

std::vector<PolyPair> squarefree_R_kernel_witnesses(
    const std::vector<BivariatePolynomial>& factors,
    const std::vector<int>& degrees) {
  if (factors.empty()) throw FactorsNotCoprime("no factors given");
  if (degrees.size() != factors.size())
    throw InconsistentDegrees("degrees list length mismatch");
  const CoefficientField& k = factors[0].field();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].is_zero() || factors[i].is_constant())
      throw FactorsNotCoprime("factors must be nonconstant");
    if (*factors[i].total_degree() != degrees[i])
      throw InconsistentDegrees("stated degree does not match factor " +
                                std::to_string(i));
  }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (!gcd_bivariate(factors[i], factors[j]).is_constant())
        throw FactorsNotCoprime("factors " + std::to_string(i) + " and " +
                                std::to_string(j) + " share a factor");

  BivariatePolynomial f = BivariatePolynomial::constant(FieldElement::one(k));
  for (const auto& fi : factors) f *= fi;
  if (!gcd_bivariate(f, f.derivative(Var::X), f.derivative(Var::Y))
           .is_constant())
    throw FactorsNotCoprime("product is not squarefree");

  std::vector<BivariatePolynomial> cofactors;  // f / f_i
  for (std::size_t i = 0; i < factors.size(); ++i)
    cofactors.push_back(exact_divide(f, factors[i]));

  int d = *f.total_degree();
  RuppertMatrix R = build_matrix_R(f, d);

  std::vector<PolyPair> witnesses;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    FieldElement d1 = FieldElement::integer(k, degrees[0]);
    FieldElement di = FieldElement::integer(k, degrees[i]);
    BivariatePolynomial G =
        (cofactors[0] * factors[0].derivative(Var::X)).scaled(-di) +
        (cofactors[i] * factors[i].derivative(Var::X)).scaled(d1);
    BivariatePolynomial H =
        (cofactors[0] * factors[0].derivative(Var::Y)).scaled(-di) +
        (cofactors[i] * factors[i].derivative(Var::Y)).scaled(d1);
    auto coords = coordinates_in_basis(R.domain(), G, H);
    if (!coords)
      throw InternalError("squarefree witness lies outside E_d");
    for (const FieldElement& y : R.entries().apply(*coords))
      if (!y.is_zero())
        throw InternalError("squarefree witness not in ker R_d");
    witnesses.emplace_back(std::move(G), std::move(H));
  }
  return witnesses;
}

}  // namespace pencils
