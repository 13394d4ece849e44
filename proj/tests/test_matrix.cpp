#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pencils/matrix.hpp"

using namespace pencils;

TEST_CASE("FpMat rank, kernel and det on known matrices") {
  std::uint64_t p = 1009;
  FpMat m(2, 3, p);
  // [1 2 3; 2 4 6]: rank 1, kernel dim 2
  m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
  m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 6;
  CHECK(m.rank() == 1);
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    for (std::size_t i = 0; i < 2; ++i) {
      unsigned __int128 s = 0;
      for (std::size_t j = 0; j < 3; ++j)
        s += static_cast<unsigned __int128>(m.at(i, j)) * v[j];
      CHECK(static_cast<std::uint64_t>(s % p) == 0);
    }
  }

  FpMat sq(2, 2, p);
  sq.at(0, 0) = 3; sq.at(0, 1) = 5; sq.at(1, 0) = 7; sq.at(1, 1) = 2;
  CHECK(sq.det() == (3 * 2 + p - (5 * 7) % p) % p);
}

TEST_CASE("zero matrix kernel has full dimension") {
  FpMat z(4, 5, 101);
  CHECK(z.rank() == 0);
  CHECK(z.kernel_basis().size() == 5);
  QMat qz(4, 5);
  CHECK(qz.rank() == 0);
  CHECK(qz.kernel_basis().size() == 5);
}

TEST_CASE("QMat exact kernel with fractional entries") {
  QMat m(2, 3);
  m.at(0, 0) = mpq_class(1, 2); m.at(0, 1) = mpq_class(1, 3); m.at(0, 2) = 1;
  m.at(1, 0) = 1;               m.at(1, 1) = mpq_class(2, 3); m.at(1, 2) = 2;
  CHECK(m.rank() == 1);
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    for (std::size_t i = 0; i < 2; ++i) {
      mpq_class s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += m.at(i, j) * v[j];
      CHECK(s == 0);
    }
    // primitive integer normalization
    for (const auto& x : v) CHECK(x.get_den() == 1);
  }
}

TEST_CASE("QMat determinant is exact") {
  QMat m(3, 3);
  int vals[3][3] = {{2, 0, 1}, {1, 3, 2}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = vals[i][j];
  CHECK(m.det() == 2 * (3 * 4 - 2 * 1) - 0 + 1 * (1 * 1 - 0));

  QMat f(2, 2);
  f.at(0, 0) = mpq_class(1, 2); f.at(0, 1) = mpq_class(1, 3);
  f.at(1, 0) = mpq_class(1, 5); f.at(1, 1) = mpq_class(1, 7);
  CHECK(f.det() == mpq_class(1, 14) - mpq_class(1, 15));
}

TEST_CASE("random matrices: rank-nullity and kernel membership both fields") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    QMat q(rows, cols);
    FpMat f(rows, cols, 1009);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        int v = entry(rng);
        q.at(i, j) = v;
        f.at(i, j) = static_cast<std::uint64_t>((v + 1009) % 1009);
      }
    CHECK(q.rank() + q.kernel_basis().size() == cols);
    CHECK(f.rank() + f.kernel_basis().size() == cols);
    // Entries are tiny, so rank over Q and over F_1009 agree here.
    CHECK(q.rank() == f.rank());
    for (const auto& v : q.kernel_basis()) {
      for (std::size_t i = 0; i < rows; ++i) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += q.at(i, j) * v[j];
        CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("FieldMat dispatches and applies") {
  auto k = CoefficientField::prime_field(101);
  FieldMat m(2, 2, k);
  m.at(0, 0) = FieldElement::integer(k, 1);
  m.at(0, 1) = FieldElement::integer(k, 2);
  m.at(1, 0) = FieldElement::integer(k, 2);
  m.at(1, 1) = FieldElement::integer(k, 4);
  CHECK(m.rank() == 1);
  CHECK(m.kernel_dimension() == 1);
  auto ker = m.kernel_basis();
  auto y = m.apply(ker[0]);
  CHECK(y[0].is_zero());
  CHECK(y[1].is_zero());
}
