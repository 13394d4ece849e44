#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "pencils/errors.hpp"
#include "pencils/newton.hpp"
#include "util.hpp"

using namespace pencils;
using testutil::random_nonzero_poly;

namespace {
const CoefficientField Q = CoefficientField::rationals();
BivariatePolynomial P(const std::string& s) { return parse_bivariate(s, Q); }

// Independent lattice-count oracle: Pick's theorem for full polygons,
// gcd counts for segments.
long long pick_count(const LatticePolygon& p) {
  const auto& v = p.vertices();
  if (v.size() == 1) return 1;
  if (v.size() == 2)
    return std::gcd(std::abs(v[1].x - v[0].x), std::abs(v[1].y - v[0].y)) + 1;
  long long twice_area = 0, boundary = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice_area += a.x * b.y - a.y * b.x;
    boundary += std::gcd(std::abs(b.x - a.x), std::abs(b.y - a.y));
  }
  // N = I + B = (A - B/2 + 1) + B; 2A + B is always even
  return (twice_area + boundary) / 2 + 1;
}
}  // namespace

TEST_CASE("newton polygon worked examples") {
  LatticePolygon n1 = newton_polygon(P("1 + X*Y + X^2*Y^2 + X^3*Y^2 + X^2*Y^3"));
  CHECK(n1.vertices() == std::vector<LatticePoint>{{0, 0}, {3, 2}, {2, 3}});
  CHECK(n1.count_total() == 5);
  CHECK(n1.count_x_axis() == 1);
  CHECK(n1.count_y_axis() == 1);

  LatticePolygon n2 = newton_polygon(P("(1+X+Y)^3"));
  CHECK(n2.vertices() == std::vector<LatticePoint>{{0, 0}, {3, 0}, {0, 3}});
  CHECK(n2.count_total() == 10);

  LatticePolygon n3 = newton_polygon(P("X"));
  CHECK(n3.vertices() == std::vector<LatticePoint>{{1, 0}});
  CHECK(n3.is_degenerate());
  CHECK(n3.count_total() == 1);

  CHECK_THROWS_AS(newton_polygon(BivariatePolynomial::zero(Q)),
                  ZeroPolynomial);
}

TEST_CASE("superior envelope worked examples") {
  LatticePolygon p = LatticePolygon::hull_of(
      {{0, 0}, {1, 1}, {2, 2}, {3, 2}, {2, 3}});
  LatticePolygon env = superior_envelope(p);
  CHECK(env.vertices() ==
        std::vector<LatticePoint>{{0, 0}, {3, 0}, {3, 2}, {2, 3}, {0, 3}});
  CHECK(env.count_total() == 15);
  CHECK(env.count_x_axis() == 4);
  CHECK(env.count_y_axis() == 4);

  LatticePolygon tri = newton_polygon(P("(1+X+Y)^4"));
  CHECK(superior_envelope(tri) == tri);

  // Lo rectangle [0, d-1] x [0, 1] for d = 5
  LatticePolygon rect = LatticePolygon::hull_of({{0, 0}, {4, 0}, {4, 1}, {0, 1}});
  CHECK(superior_envelope(rect) == rect);
  CHECK(rect.count_total() == 10);   // 2d
  CHECK(rect.count_x_axis() == 5);   // d
  CHECK(rect.count_y_axis() == 2);   // published example reads d; see report
}

TEST_CASE("good edges") {
  LatticePolygon tri = newton_polygon(P("(1+X+Y)^3"));
  auto edges = find_good_edges(tri);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].a == 1);
  CHECK(edges[0].b == 1);
  CHECK(edges[0].level == 3);
  CHECK(edges[0].points_on_edge == 4);

  LatticePolygon rect = LatticePolygon::hull_of({{0, 0}, {4, 0}, {4, 1}, {0, 1}});
  auto redges = find_good_edges(rect);
  // right vertical edge and top horizontal edge both qualify
  REQUIRE(redges.size() == 2);
  auto top = select_good_edge(rect);
  REQUIRE(top.has_value());
  CHECK(top->a == 0);
  CHECK(top->b == 1);
  CHECK(top->level == 1);
  CHECK(top->points_on_edge == 5);  // N_E = d

  LatticePolygon n1 = LatticePolygon::hull_of({{0, 0}, {3, 2}, {2, 3}});
  auto gedges = find_good_edges(n1);
  REQUIRE(gedges.size() == 1);
  CHECK(gedges[0].a == 1);
  CHECK(gedges[0].b == 1);
  CHECK(gedges[0].level == 5);
  CHECK(gedges[0].points_on_edge == 2);

  // a single column has no good edge
  LatticePolygon col = LatticePolygon::hull_of({{0, 0}, {0, 3}});
  CHECK(find_good_edges(col).empty());
}

TEST_CASE("good edge dominance property") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    BivariatePolynomial f = random_nonzero_poly(Q, rng, 5, 6);
    LatticePolygon p = newton_polygon(f);
    for (const GoodEdge& e : find_good_edges(p)) {
      for (const auto& q : p.lattice_points()) {
        long long w = e.a * q.x + e.b * q.y;
        CHECK(w >= 0);
        CHECK(w <= e.level);
      }
      CHECK(e.points_on_edge >= 1);
    }
  }
}

TEST_CASE("lattice counts match Pick's theorem") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    BivariatePolynomial f = random_nonzero_poly(Q, rng, 6, 7);
    LatticePolygon p = newton_polygon(f);
    CHECK(p.count_total() == pick_count(p));
    LatticePolygon env = superior_envelope(p);
    CHECK(env.count_total() == pick_count(env));
  }
}

TEST_CASE("minkowski sum") {
  LatticePolygon sx = LatticePolygon::hull_of({{0, 0}, {1, 0}});
  LatticePolygon sy = LatticePolygon::hull_of({{0, 0}, {0, 1}});
  LatticePolygon sq = minkowski_sum(sx, sy);
  CHECK(sq.vertices() ==
        std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});

  LatticePolygon pt = LatticePolygon::hull_of({{0, 0}});
  LatticePolygon p = newton_polygon(P("1 + X*Y + X^2*Y^3"));
  CHECK(minkowski_sum(p, pt) == p);

  CHECK(minkowski_sum(newton_polygon(P("X+1")), newton_polygon(P("X*Y+Y"))) ==
        newton_polygon(P("(X+1)*(X*Y+Y)")));
}

TEST_CASE("Ostrowski identity on random sparse products") {
  std::mt19937_64 rng(29);
  auto F1009 = CoefficientField::prime_field(1009);
  for (const auto& k : {Q, F1009}) {
    for (int t = 0; t < 25; ++t) {
      BivariatePolynomial f = random_nonzero_poly(k, rng, 4, 4);
      BivariatePolynomial g = random_nonzero_poly(k, rng, 4, 4);
      CHECK(newton_polygon(f * g) ==
            minkowski_sum(newton_polygon(f), newton_polygon(g)));
    }
  }
}

TEST_CASE("superior envelope monotonicity under division") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 25; ++t) {
    BivariatePolynomial g = random_nonzero_poly(Q, rng, 3, 3);
    BivariatePolynomial h = random_nonzero_poly(Q, rng, 3, 3);
    BivariatePolynomial f = g * h;  // g divides f
    CHECK(superior_envelope(newton_polygon(f))
              .contains(newton_polygon(exact_divide(f, g))));
  }
}

TEST_CASE("basis_E_N dimensions") {
  // dense triangle, d = 3, diagonal edge: 2*10-4-4-4 = 8 = d^2-1
  LatticePolygon tri = newton_polygon(P("(1+X+Y)^3"));
  auto edge = select_good_edge(tri);
  REQUIRE(edge.has_value());
  DomainBasis b = basis_E_N(tri, edge, edge->level, Q);
  CHECK(b.dimension() == 8);

  // Lo rectangle d=5 with the closed-region counts: 2*10-5-2-5 = 8 = 2d-2
  LatticePolygon rect = LatticePolygon::hull_of({{0, 0}, {4, 0}, {4, 1}, {0, 1}});
  auto top = select_good_edge(rect);
  DomainBasis br = basis_E_N(rect, top, top->level, Q);
  CHECK(br.dimension() == 8);

  // single column, no good edge: k free H slots
  LatticePolygon col = LatticePolygon::hull_of({{0, 0}, {0, 3}});
  DomainBasis bc = basis_E_N(col, std::nullopt, 0, Q);
  CHECK(bc.dimension() == 3);

  // every basis pair satisfies the defining containments
  for (const auto& [G, H] : b.pairs) {
    if (!G.is_zero()) CHECK(region_contains_support(tri, P("X") * G));
    if (!H.is_zero()) CHECK(region_contains_support(tri, P("Y") * H));
    BivariatePolynomial s = P("X") * G.scaled(FieldElement::integer(Q, edge->a)) +
                            P("Y") * H.scaled(FieldElement::integer(Q, edge->b));
    if (!s.is_zero()) CHECK(s.weighted_degree(edge->a, edge->b) <= edge->level - 1);
  }

  // independent rank check of the stacked basis vectors
  FieldMat stack(2 * tri.lattice_points().size(), b.pairs.size(), Q);
  std::size_t col_idx = 0;
  for (const auto& [G, H] : b.pairs) {
    std::size_t row = 0;
    for (const auto& m : tri.lattice_points()) {
      if (m.x >= 1)
        stack.at(row, col_idx) =
            G.coeff({static_cast<int>(m.x - 1), static_cast<int>(m.y)});
      ++row;
      if (m.y >= 1)
        stack.at(row, col_idx) =
            H.coeff({static_cast<int>(m.x), static_cast<int>(m.y - 1)});
      ++row;
    }
    ++col_idx;
  }
  CHECK(stack.rank() == b.dimension());

  CHECK_THROWS_AS(
      basis_E_N(tri, GoodEdge{{3, 0}, {0, 3}, 1, 1, 2, 4}, 2, Q),
      EdgeNotGood);
}

TEST_CASE("SR matrix equals dense R on a dense irreducible") {
  BivariatePolynomial h = P("X^2+Y^2+1");
  LatticePolygon dense = newton_polygon(P("(1+X+Y)^2"));
  auto edge = select_good_edge(dense);
  RuppertMatrix sr = build_matrix_SR(h, dense, edge);
  RuppertMatrix r = build_matrix_R(h, 2);
  CHECK(sr.domain().dimension() == r.domain().dimension());
  CHECK(sr.kernel_dimension() == r.kernel_dimension());
  CHECK(sr.kernel_dimension() == 0);
}

TEST_CASE("SR of the constant 1") {
  LatticePolygon dense = newton_polygon(P("(1+X+Y)^2"));
  auto edge = select_good_edge(dense);
  RuppertMatrix sr = build_matrix_SR(P("1"), dense, edge);
  // kernel = pairs with dG/dY = dH/dX inside the constraints
  auto ker = sr.kernel();
  for (const auto& [G, H] : ker.basis)
    CHECK(G.derivative(Var::Y) == H.derivative(Var::X));
}

TEST_CASE("SR characteristic guard and polygon mismatch") {
  LatticePolygon dense = newton_polygon(P("(1+X+Y)^3"));
  auto F5 = CoefficientField::prime_field(5);
  CHECK_THROWS_AS(
      build_matrix_SR(parse_bivariate("X*Y+1", F5), dense, std::nullopt),
      CharacteristicTooSmall);
  LatticePolygon small = newton_polygon(P("1+X+Y"));
  CHECK_THROWS_AS(build_matrix_SR(P("X^2"), small, std::nullopt),
                  PolygonMismatch);
}

TEST_CASE("sparse kernel witnesses: squarefree pair and cube") {
  auto w1 = sparse_kernel_witnesses({{P("X+Y+1"), 1}, {P("X-Y"), 1}}, 1, 1);
  CHECK(w1.size() == 1);

  auto w2 = sparse_kernel_witnesses({{P("X+Y+1"), 3}}, 1, 1);
  REQUIRE(w2.size() == 2);
  // linear independence of the two witnesses
  BivariatePolynomial f = P("(X+Y+1)^3");
  LatticePolygon nf = newton_polygon(f);
  auto edge = select_good_edge(nf);
  RuppertMatrix sr = build_matrix_SR(f, nf, edge);
  auto c0 = coordinates_in_basis(sr.domain(), w2[0].first, w2[0].second);
  auto c1 = coordinates_in_basis(sr.domain(), w2[1].first, w2[1].second);
  REQUIRE(c0.has_value());
  REQUIRE(c1.has_value());
  FieldMat m(c0->size(), 2, Q);
  for (std::size_t i = 0; i < c0->size(); ++i) {
    m.at(i, 0) = (*c0)[i];
    m.at(i, 1) = (*c1)[i];
  }
  CHECK(m.rank() == 2);
  // both lie in ker SR(f)
  for (const auto& c : {*c0, *c1})
    for (const auto& y : sr.entries().apply(c)) CHECK(y.is_zero());
}

TEST_CASE("sparse witness caveat: f(0,0) = 0 breaks the N(f) containment") {
  // f = X^3 (Y^2 + X + 1): X*G_1^(3) = X(Y^2+X+1) has support outside N(f)
  // but inside N^+(f). sparse_kernel_witnesses accepts it (f(0,0) = 0).
  BivariatePolynomial f = P("X^3*(Y^2+X+1)");
  auto ws = sparse_kernel_witnesses({{P("X"), 3}, {P("Y^2+X+1"), 1}}, 0, 1);
  CHECK(ws.size() == 3);
  LatticePolygon nf = newton_polygon(f);
  LatticePolygon nplus = superior_envelope(nf);
  BivariatePolynomial g13 = exact_divide(f, P("X^3"));  // (f/X^3) dX(X)
  CHECK(!region_contains_support(nf, P("X") * g13));
  CHECK(region_contains_support(nplus, P("X") * g13));
}

TEST_CASE("sparse witness precondition failures") {
  CHECK_THROWS_AS(sparse_kernel_witnesses({{P("X"), 1}, {P("X*Y"), 1}}, 1, 1),
                  FactorsNotCoprime);
  auto F3 = CoefficientField::prime_field(3);
  CHECK_THROWS_AS(
      sparse_kernel_witnesses({{parse_bivariate("X+Y+1", F3), 3}}, 1, 1),
      CharacteristicTooSmall);
}

TEST_CASE("renderings are deterministic and well-formed") {
  LatticePolygon tri = newton_polygon(P("(1+X+Y)^2"));
  auto edges = find_good_edges(tri);
  std::vector<LatticePoint> support{{0, 0}, {2, 0}, {0, 2}};
  std::string svg = render_svg(tri, edges, support);
  CHECK(svg == render_svg(tri, edges, support));
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polygon") != std::string::npos);
  std::string art = render_ascii(tri, edges, support);
  CHECK(art.find('*') != std::string::npos);
  CHECK(art.find('#') != std::string::npos);
}
