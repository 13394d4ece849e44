#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pencils/errors.hpp"
#include "pencils/spectrum.hpp"
#include "util.hpp"

using namespace pencils;

namespace {
const CoefficientField Q = CoefficientField::rationals();
BivariatePolynomial P(const std::string& s) { return parse_bivariate(s, Q); }
}  // namespace

TEST_CASE("pencil construction guards") {
  CHECK_THROWS_AS(Pencil::make(P("X*Y"), P("X*Y")), CompositeOrNonReduced);
  CHECK_THROWS_AS(Pencil::make(P("(X+Y)*X"), P("X")), CompositeOrNonReduced);
  CHECK_THROWS_AS(Pencil::make(P("X"), P("Y")), DegreeTooSmall);
  CHECK_THROWS_AS(Pencil::make(P("X*Y"), BivariatePolynomial::zero(Q)),
                  ZeroPolynomial);
  auto F7 = CoefficientField::prime_field(7);
  CHECK_THROWS_AS(Pencil::make(P("X*Y"), parse_bivariate("X+Y", F7)),
                  FieldMismatch);
  Pencil ok = Pencil::make(P("X*Y"), P("X+Y"));
  CHECK(ok.degree() == 2);
  CHECK(ok.member(FieldElement::one(Q), FieldElement::zero(Q)) ==
        homogenize(P("X*Y"), 2));
}

TEST_CASE("member statistics worked examples") {
  MemberStatistics xy = member_statistics(homogenize(P("X*Y"), 2));
  CHECK(xy.n == 2);
  CHECK(xy.m == 2);
  CHECK(xy.omega == 0);
  CHECK(xy.theta == 0);
  CHECK(xy.kernel_dim == 1);

  MemberStatistics z2 = member_statistics(homogenize(P("1"), 2));  // Z^2
  CHECK(z2.n == 1);
  CHECK(z2.m == 2);
  CHECK(z2.omega == 1);
  CHECK(z2.theta == 0);
  CHECK(z2.e_infinity == 2);
  CHECK(z2.kernel_dim == 2);

  MemberStatistics irr =
      member_statistics(homogenize(P("Y^2 - X^3 - X"), 3));
  CHECK(irr.n == 1);
  CHECK(irr.m == 1);
  CHECK(irr.omega == 0);
  CHECK(irr.theta == 0);
  CHECK(irr.kernel_dim == 0);
}

TEST_CASE("member statistics is invariant under scaling") {
  std::mt19937_64 rng(55);
  auto F1009 = CoefficientField::prime_field(1009);
  for (const auto& k : {Q, F1009}) {
    for (const char* s : {"X*Y", "(X+Y)^2", "Y^2 - X^3 - X"}) {
      BivariatePolynomial f = parse_bivariate(s, k);
      int d = *f.total_degree();
      HomogeneousPolynomial3 F = homogenize(f, d + 1);  // forces e_inf = 1
      MemberStatistics base = member_statistics(F);
      for (int t = 0; t < 3; ++t) {
        FieldElement c = testutil::random_nonzero_scalar(k, rng);
        MemberStatistics scaled = member_statistics(F.scaled(c));
        CHECK(scaled.n == base.n);
        CHECK(scaled.m == base.m);
        CHECK(scaled.omega == base.omega);
        CHECK(scaled.theta == base.theta);
        CHECK(scaled.e_infinity == base.e_infinity);
      }
    }
  }
}

TEST_CASE("key equation equals the homogeneous dimension formula, symbolically") {
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<int> rr(1, 4), dd(1, 3), ee(1, 4);
  for (int t = 0; t < 200; ++t) {
    int r = rr(rng);
    std::vector<std::pair<int, int>> pairs;
    long long m = 0, omega = 0, excess = 0;
    for (int i = 0; i < r; ++i) {
      int di = dd(rng), ei = ee(rng);
      pairs.emplace_back(di, ei);
      m += ei;
      omega += static_cast<long long>(di) * (ei - 1);
      excess += ei - 1;
    }
    long long theta = (omega + 1) * omega / 2 - excess;
    CHECK(m - 1 + omega + theta == dim_ker_R_hom_formula(r, pairs));
  }
}

TEST_CASE("spect polynomial: conic pencil") {
  Pencil pencil = Pencil::make(P("X*Y"), P("X+Y"));
  BinaryForm S = spect_polynomial(pencil, 7);
  CHECK(S.degree() <= 3);
  // roots exactly (1:0) and (0:1)
  CHECK(S.evaluate(FieldElement::one(Q), FieldElement::zero(Q)).is_zero());
  CHECK(S.evaluate(FieldElement::zero(Q), FieldElement::one(Q)).is_zero());
  CHECK(!S.evaluate(FieldElement::one(Q), FieldElement::one(Q)).is_zero());
  CHECK(!S.evaluate(FieldElement::integer(Q, 2), FieldElement::one(Q))
             .is_zero());
}

TEST_CASE("spect polynomial: double line root multiplicity") {
  Pencil pencil = Pencil::make(P("Y - X^2"), P("1"));
  BinaryForm S = spect_polynomial(pencil, 11);
  CHECK(S.degree() <= 3);
  // (0:1) (member Z^2, kernel dim 2) must be a root of multiplicity >= 2:
  // U^2 divides S, i.e. coeffs of U^0 V^D and U^1 V^(D-1) vanish.
  REQUIRE(S.degree() >= 2);
  CHECK(S.coeffs[0].is_zero());
  CHECK(S.coeffs[1].is_zero());
}

TEST_CASE("spect detects composite rational functions") {
  // f/g = (XY)^2 is composite; every member is reducible.
  Pencil pencil = Pencil::make(P("X^2*Y^2"), P("1"));
  CHECK_THROWS_AS(spect_polynomial(pencil, 3), CompositeOrNonReduced);
}

TEST_CASE("spect polynomial sample-size guard over small fields") {
  // d = 2 needs p > 4; F_3 is too small
  auto F3 = CoefficientField::prime_field(3);
  Pencil pencil = Pencil::make(parse_bivariate("X*Y", F3),
                               parse_bivariate("X+Y", F3));
  CHECK_THROWS_AS(spect_polynomial(pencil, 1), InsufficientSamplePoints);
}

TEST_CASE("brute-force spectrum over F_101") {
  auto F101 = CoefficientField::prime_field(101);
  Pencil planted = Pencil::make(parse_bivariate("(X+Y)*(X-Y+1)", F101),
                                parse_bivariate("X^2+Y^2+1", F101));
  std::vector<SpectralPoint> pts = spectrum_bruteforce(planted);
  bool found_infinity = false;
  for (const SpectralPoint& sp : pts)
    if (sp.point.is_infinity()) {
      found_infinity = true;
      CHECK(sp.kernel_dim == 1);  // r = 2 squarefree member
    }
  CHECK(found_infinity);

  Pencil dbl = Pencil::make(parse_bivariate("Y - X^2", F101),
                            parse_bivariate("1", F101));
  std::vector<SpectralPoint> dpts = spectrum_bruteforce(dbl);
  REQUIRE(dpts.size() >= 1);
  bool found_zero = false;
  for (const SpectralPoint& sp : dpts)
    if (!sp.point.is_infinity() && sp.point.mu.is_zero()) {
      found_zero = true;
      CHECK(sp.kernel_dim == 2);
      CHECK(sp.degree_deficient);
    }
  CHECK(found_zero);

  // d = 3 needs p > 6; F_5 is too small
  auto F5 = CoefficientField::prime_field(5);
  Pencil small = Pencil::make(parse_bivariate("X^3+Y+1", F5),
                              parse_bivariate("Y^3+X", F5));
  CHECK_THROWS_AS(spectrum_bruteforce(small), CharacteristicTooSmall);
}

TEST_CASE("kappa worked examples") {
  KappaResult k1 = compute_kappa(Pencil::make(P("X*Y"), P("X+Y")));
  CHECK(k1.e_infinity == 1);
  CHECK(k1.kappa == 0);
  REQUIRE(k1.member.has_value());
  CHECK(k1.member->mu.is_zero());

  KappaResult k2 = compute_kappa(Pencil::make(P("Y - X^2"), P("1")));
  CHECK(k2.e_infinity == 2);
  CHECK(k2.kappa == 1);

  KappaResult k3 = compute_kappa(Pencil::make(P("X^2+Y+1"), P("Y^2+X")));
  CHECK(k3.e_infinity == 0);
  CHECK(k3.kappa == 0);
  CHECK(!k3.member.has_value());

  // proportional top forms of full degree
  KappaResult k4 = compute_kappa(Pencil::make(P("X^2+Y"), P("2*X^2+X")));
  CHECK(k4.e_infinity >= 1);
  REQUIRE(k4.member.has_value());
}

TEST_CASE("analyze dense: conic pencil aggregates") {
  PencilReport rep =
      analyze(Pencil::make(P("X*Y"), P("X+Y")), AnalysisMode::Dense, 7);
  CHECK(rep.rho == 2);
  CHECK(rep.m == 2);
  CHECK(rep.omega == 0);
  CHECK(rep.theta == 0);
  CHECK(rep.spectral_points.size() == 2);
  CHECK(rep.aggregates_complete);
  CHECK(rep.all_bounds_hold());
  REQUIRE(rep.spect.has_value());
  CHECK(rep.spect->form.degree() <= 3);
  long long total_kernel = 0;
  for (const SpectralPoint& sp : rep.spectral_points)
    total_kernel += static_cast<long long>(sp.kernel_dim);
  CHECK(total_kernel <= rep.spect->form.degree());
}

TEST_CASE("analyze agrees across Q and F_1009 on a rational-spectrum pencil") {
  auto F1009 = CoefficientField::prime_field(1009);
  for (const auto& [fs, gs] :
       {std::pair{"X*Y", "X+Y"}, std::pair{"Y - X^2", "1"},
        std::pair{"(X+Y)*(X-Y+1)", "X^2+Y^2+1"}}) {
    PencilReport rq =
        analyze(Pencil::make(P(fs), P(gs)), AnalysisMode::Dense, 9);
    PencilReport rp = analyze(Pencil::make(parse_bivariate(fs, F1009),
                                           parse_bivariate(gs, F1009)),
                              AnalysisMode::Dense, 9);
    if (!rq.aggregates_complete || !rp.aggregates_complete) continue;
    CHECK(rq.rho == rp.rho);
    CHECK(rq.m == rp.m);
    CHECK(rq.omega == rp.omega);
    CHECK(rq.theta == rp.theta);
    CHECK(rq.kappa.kappa == rp.kappa.kappa);
    CHECK(rq.spectral_points.size() == rp.spectral_points.size());
  }
}

TEST_CASE("brute-force spectrum is reparametrization invariant") {
  auto F101 = CoefficientField::prime_field(101);
  std::mt19937_64 rng(77);
  Pencil base = Pencil::make(parse_bivariate("X*Y", F101),
                             parse_bivariate("X+Y", F101));
  auto dims = [](const std::vector<SpectralPoint>& pts) {
    std::vector<std::size_t> v;
    for (const auto& sp : pts) v.push_back(sp.kernel_dim);
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::size_t> base_dims = dims(spectrum_bruteforce(base));
  int done = 0;
  while (done < 4) {
    FieldElement a = testutil::random_scalar(F101, rng);
    FieldElement b = testutil::random_scalar(F101, rng);
    FieldElement c = testutil::random_scalar(F101, rng);
    FieldElement d = testutil::random_scalar(F101, rng);
    if ((a * d - b * c).is_zero()) continue;
    BivariatePolynomial f2 = base.f().scaled(a) + base.g().scaled(b);
    BivariatePolynomial g2 = base.f().scaled(c) + base.g().scaled(d);
    if (f2.is_zero() || g2.is_zero()) continue;
    if (std::max(*f2.total_degree(), *g2.total_degree()) != base.degree())
      continue;
    CHECK(dims(spectrum_bruteforce(Pencil::make(f2, g2))) == base_dims);
    ++done;
  }
}

TEST_CASE("bertini reduction") {
  NVariatePolynomial F = parse_nvariate("X1*X2*X3", Q, 3);
  BertiniResult res = bertini_reduce(F, 5);
  CHECK(*res.reduced.total_degree() == 3);
  CHECK(res.substitution.size() == 3);
  // planted profile: three lines, squarefree, r = 3 -> kernel dim 2
  CHECK(build_matrix_R_hom(homogenize(res.reduced, 3)).kernel_dimension() ==
        2);

  BertiniResult conic =
      bertini_reduce(parse_nvariate("X1^2 + X2^2 + X3^2", Q, 3), 6);
  CHECK(*conic.reduced.total_degree() == 2);
  CHECK(build_matrix_R_hom(homogenize(conic.reduced, 2))
            .kernel_dimension() == 0);

  CHECK_THROWS_AS(bertini_reduce(parse_nvariate("X1 + X2 - X3", Q, 3), 1),
                  DegreeTooSmall);
  CHECK_THROWS_AS(bertini_reduce(parse_nvariate("X1*X2", Q, 2), 1),
                  InconsistentDegrees);

  // determinism: same seed, same reduction
  BertiniResult again = bertini_reduce(F, 5);
  CHECK(again.reduced == res.reduced);
  CHECK(again.substitution == res.substitution);
}

TEST_CASE("sparse analyze on the Lo pencil") {
  // d = 4: f = X(X+1)(X+2)Y + X, g = 1
  Pencil pencil = Pencil::make(P("X*(X+1)*(X+2)*Y + X"), P("1"));
  PencilReport rep =
      analyze(pencil, AnalysisMode::Sparse, 13, PolygonChoice::Auto);
  REQUIRE(rep.sparse.has_value());
  const SparseData& sd = *rep.sparse;
  CHECK(sd.n_total == 8);   // 2d
  CHECK(sd.n_x == 4);       // d
  CHECK(sd.n_y == 2);       // closed-region reading
  CHECK(sd.n_edge == 4);    // d
  CHECK(rep.kappa.kappa == 3);  // d-1
  CHECK(sd.bound_rhs == 2 * 8 - 4 - 2 - 4 + 3);
  CHECK(rep.all_bounds_hold());
}
