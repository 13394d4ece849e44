#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pencils/errors.hpp"
#include "pencils/ruppert.hpp"
#include "util.hpp"

using namespace pencils;
using testutil::random_nonzero_poly;

namespace {
const CoefficientField Q = CoefficientField::rationals();

BivariatePolynomial P(const std::string& s) { return parse_bivariate(s, Q); }
}  // namespace

TEST_CASE("basis_E dimensions and shape") {
  DomainBasis b2 = basis_E(Q, 2);
  REQUIRE(b2.dimension() == 3);
  CHECK(b2.pairs[0].first == P("1"));
  CHECK(b2.pairs[0].second.is_zero());
  CHECK(b2.pairs[1].first.is_zero());
  CHECK(b2.pairs[1].second == P("1"));
  CHECK(b2.pairs[2].first == P("Y"));
  CHECK(b2.pairs[2].second == P("-X"));

  CHECK(basis_E(Q, 3).dimension() == 8);
  CHECK(basis_E(Q, 1).dimension() == 0);
  CHECK(basis_full_pairs(Q, 3).dimension() == 12);  // nu(nu+1)

  // deg(XG + YH) <= nu-1 on every element
  for (int nu : {2, 3, 4, 5}) {
    for (const auto& [G, H] : basis_E(Q, nu).pairs) {
      BivariatePolynomial s = P("X") * G + P("Y") * H;
      if (!s.is_zero()) CHECK(*s.total_degree() <= nu - 1);
    }
  }
}

TEST_CASE("G_nu kernel dimensions on worked pencil members") {
  CHECK(build_matrix_G(P("X^2+Y^2+1"), 2).kernel_dimension() == 1);
  CHECK(build_matrix_G(P("(X+Y)*(X-Y)"), 2).kernel_dimension() == 2);
  CHECK(build_matrix_G(P("(X+Y)^2"), 2).kernel_dimension() == 3);
}

TEST_CASE("G_nu formula matches nullspace") {
  // r=1, d=nu=3, single cubic
  CHECK(dim_ker_G_formula(1, 3, 3, {{3, 1}}) == 1);
  // r=2, d=nu=4: (X+1)^2 (X^2+Y+1)
  CHECK(dim_ker_G_formula(2, 4, 4, {{1, 2}, {2, 1}}) == 4);
  CHECK(build_matrix_G(P("(X+1)^2*(X^2+Y+1)"), 4).kernel_dimension() == 4);
  // r=1, d=2, nu=3 on (X+Y)^2
  CHECK(dim_ker_G_formula(1, 2, 3, {{1, 2}}) == 6);
  CHECK(build_matrix_G(P("(X+Y)^2"), 3).kernel_dimension() == 6);

  CHECK_THROWS_AS(dim_ker_G_formula(1, 3, 3, {{2, 1}}), InconsistentDegrees);
  CHECK_THROWS_AS(dim_ker_G_formula(2, 3, 3, {{3, 1}}), InconsistentDegrees);
}

TEST_CASE("R_nu worked examples and degree truncation") {
  RuppertMatrix R = build_matrix_R(P("(X+Y)^2"), 2);
  CHECK(R.kernel_dimension() == 2);
  CHECK(dim_ker_R_hom_formula(1, {{1, 2}}) == 2);

  // absolutely irreducible: kernel 0
  CHECK(build_matrix_R(P("Y^2 - X^3 - X"), 3).kernel_dimension() == 0);
  CHECK(build_matrix_R(P("X^2+Y^2+1"), 2).kernel_dimension() == 0);

  CHECK_THROWS_AS(build_matrix_R(BivariatePolynomial::zero(Q), 2),
                  ZeroPolynomial);
  CHECK_THROWS_AS(build_matrix_R(P("X^3"), 2), NuTooSmall);
}

TEST_CASE("kernel of R_2((X+Y)^2) contains the hand-computed span") {
  RuppertMatrix R = build_matrix_R(P("(X+Y)^2"), 2);
  auto ker = R.kernel();
  REQUIRE(ker.dimension == 2);
  // (1,1) and (Y,-X) both lie in the kernel.
  for (auto [g, h] : {std::pair{P("1"), P("1")}, std::pair{P("Y"), P("-X")}}) {
    auto coords = coordinates_in_basis(R.domain(), g, h);
    REQUIRE(coords.has_value());
    for (const auto& y : R.entries().apply(*coords)) CHECK(y.is_zero());
  }
}

TEST_CASE("rank of R_d(1) is d(d-1)/2") {
  for (int d = 2; d <= 8; ++d) {
    RuppertMatrix R = build_matrix_R_of_one(Q, d);
    CHECK(R.rank() == static_cast<std::size_t>(d * (d - 1) / 2));
  }
}

TEST_CASE("homogeneous R worked examples") {
  // F = Z^2
  HomogeneousPolynomial3 z2 = homogenize(P("1"), 2);
  CHECK(build_matrix_R_hom(z2).kernel_dimension() == 2);
  // F = XY
  CHECK(build_matrix_R_hom(homogenize(P("X*Y"), 2)).kernel_dimension() == 1);
  // absolutely irreducible cubic
  CHECK(build_matrix_R_hom(homogenize(P("Y^2 - X^3 - X"), 3))
            .kernel_dimension() == 0);
  // kernel() returns an empty basis there
  auto ker = build_matrix_R_hom(homogenize(P("Y^2 - X^3 - X"), 3)).kernel();
  CHECK(ker.dimension == 0);
  CHECK(ker.basis.empty());
}

TEST_CASE("R_hom formula cross-checks with Z powers") {
  // F = Z^3 * (X^2 + YZ + Z^2): r=2, pairs {(1,3),(2,1)}
  HomogeneousPolynomial3 F =
      homogenize(P("1"), 3) * homogenize(P("X^2 + Y + 1"), 2);
  CHECK(dim_ker_R_hom_formula(2, {{1, 3}, {2, 1}}) == 6);
  CHECK(build_matrix_R_hom(F).kernel_dimension() == 6);
  CHECK(dim_ker_R_hom_formula(2, {{1, 1}, {1, 1}}) == 1);  // squarefree r=2
}

TEST_CASE("dimprop kernel shifts") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 6; ++t) {
    BivariatePolynomial f = random_nonzero_poly(Q, rng, 3, 4);
    if (f.is_constant()) continue;
    int d = *f.total_degree();
    CHECK(build_matrix_R(f, d).kernel_dimension() ==
          build_matrix_G(f, d).kernel_dimension() - 1);
    for (int nu = d + 1; nu <= d + 2; ++nu)
      CHECK(build_matrix_R(f, nu).kernel_dimension() ==
            build_matrix_G(f, nu - 1).kernel_dimension());
  }
}

TEST_CASE("R(F) and R_d(F(X,Y,1)) have equal kernel dimension") {
  for (const char* s : {"X^2+Y^2+1", "(X+Y)^2", "X*Y", "Y^2 - X^3 - X",
                        "(X+1)^2*(X^2+Y+1)"}) {
    BivariatePolynomial f = P(s);
    int d = *f.total_degree();
    CHECK(build_matrix_R_hom(homogenize(f, d)).kernel_dimension() ==
          build_matrix_R(f, d).kernel_dimension());
  }
}

TEST_CASE("operator linearity in the source polynomial") {
  std::mt19937_64 rng(13);
  auto F1009 = CoefficientField::prime_field(1009);
  for (const auto& k : {Q, F1009}) {
    int done = 0;
    while (done < 5) {
      // Same total degree so the three matrices share the codomain.
      BivariatePolynomial f = random_nonzero_poly(k, rng, 3, 4);
      BivariatePolynomial g = random_nonzero_poly(k, rng, 3, 4);
      FieldElement u = testutil::random_nonzero_scalar(k, rng);
      FieldElement v = testutil::random_nonzero_scalar(k, rng);
      BivariatePolynomial h = f.scaled(u) + g.scaled(v);
      if (f.is_constant() || h.is_zero()) continue;
      int d = *f.total_degree();
      if (g.total_degree() != d || h.total_degree() != d) continue;
      int nu = d + 1;
      RuppertMatrix A = build_matrix_G(f, nu);
      RuppertMatrix B = build_matrix_G(g, nu);
      RuppertMatrix C = build_matrix_G(h, nu);
      RuppertMatrix L = RuppertMatrix::linear_combination(u, A, v, B);
      for (std::size_t i = 0; i < C.entries().rows(); ++i)
        for (std::size_t j = 0; j < C.entries().cols(); ++j)
          CHECK(C.entries().at(i, j) == L.entries().at(i, j));
      ++done;
    }
  }
}

TEST_CASE("squarefree kernel witnesses") {
  auto w1 = squarefree_R_kernel_witnesses({P("X+Y"), P("X-Y")}, {1, 1});
  CHECK(w1.size() == 1);

  auto w0 = squarefree_R_kernel_witnesses({P("X^2+Y^2+1")}, {2});
  CHECK(w0.empty());

  auto w2 = squarefree_R_kernel_witnesses({P("X"), P("Y"), P("X+Y+1")},
                                          {1, 1, 1});
  REQUIRE(w2.size() == 2);
  // linear independence: coordinates in E_d span a 2-dimensional space
  BivariatePolynomial f = P("X*Y*(X+Y+1)");
  RuppertMatrix R = build_matrix_R(f, 3);
  auto c0 = coordinates_in_basis(R.domain(), w2[0].first, w2[0].second);
  auto c1 = coordinates_in_basis(R.domain(), w2[1].first, w2[1].second);
  REQUIRE(c0.has_value());
  REQUIRE(c1.has_value());
  FieldMat m(c0->size(), 2, Q);
  for (std::size_t i = 0; i < c0->size(); ++i) {
    m.at(i, 0) = (*c0)[i];
    m.at(i, 1) = (*c1)[i];
  }
  CHECK(m.rank() == 2);

  CHECK_THROWS_AS(
      squarefree_R_kernel_witnesses({P("X+Y"), P("(X+Y)*X")}, {1, 2}),
      FactorsNotCoprime);
  CHECK_THROWS_AS(squarefree_R_kernel_witnesses({P("X+Y")}, {2}),
                  InconsistentDegrees);
}

TEST_CASE("planted-product formula agreement, mixed multiplicities") {
  // f = (X+2Y+1)^3 (XY+1): r=2, pairs {(1,3),(2,1)}, d=5
  BivariatePolynomial f = P("(X+2*Y+1)^3*(X*Y+1)");
  long long expect = dim_ker_G_formula(2, 5, 5, {{1, 3}, {2, 1}});
  CHECK(build_matrix_G(f, 5).kernel_dimension() ==
        static_cast<std::size_t>(expect));
}
