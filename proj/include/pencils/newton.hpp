#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pencils/polynomial.hpp"
#include "pencils/ruppert.hpp"

namespace pencils {

struct LatticePoint {
  long long x = 0, y = 0;
  bool operator==(const LatticePoint&) const = default;
};

// Convex lattice polygon in the first quadrant. Degenerate hulls (a point or
// a segment) are legal values everywhere. Lattice counts follow the
// closed-region reading: N counts every lattice point of the region, and
// N_X / N_Y count the points lying on the X- / Y-axis. (The published
// worked examples count the closed region even where the prose says
// interior points; the CLI surfaces the discrepancy where it shows.)
class LatticePolygon {
public:
  // Convex hull of arbitrary points (all coordinates must be >= 0).
  static LatticePolygon hull_of(std::vector<LatticePoint> points);

  // Counter-clockwise vertex list; extreme points only.
  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  // true when the hull is a single point or a segment.
  bool is_degenerate() const { return vertices_.size() < 3; }

  bool contains(LatticePoint p) const;
  bool contains(const LatticePolygon& other) const;
  // Every lattice point of the closed region, graded-lex order.
  const std::vector<LatticePoint>& lattice_points() const { return points_; }

  long long count_total() const { return n_total_; }
  long long count_x_axis() const { return n_x_; }
  long long count_y_axis() const { return n_y_; }

  long long max_x() const;
  long long max_y() const;
  // Largest i+j over the lattice points: the analysis degree of the region.
  long long max_total_degree() const;

  bool operator==(const LatticePolygon& o) const {
    return vertices_ == o.vertices_;
  }

private:
  LatticePolygon() = default;
  void enumerate_points();

  std::vector<LatticePoint> vertices_;
  std::vector<LatticePoint> points_;
  long long n_total_ = 0, n_x_ = 0, n_y_ = 0;
};

// Edge of a polygon whose primitive outward normal (a, b) is componentwise
// nonnegative and whose level a*x+b*y = c strictly dominates every off-edge
// lattice point of the polygon.
struct GoodEdge {
  LatticePoint from, to;       // CCW endpoints
  long long a = 0, b = 0;      // primitive outward normal
  long long level = 0;         // c in aX + bY = c
  long long points_on_edge = 0;  // N_E

  bool operator==(const GoodEdge&) const = default;
};

// Convex hull of the support (error on the zero polynomial).
LatticePolygon newton_polygon(const BivariatePolynomial& f);

// Smallest convex set containing P and the origin bordered off the axes by
// edges of non-positive slope: hull(P + {(0,0),(x_max,0),(0,y_max)}), with a
// hard post-assertion of the slope property.
LatticePolygon superior_envelope(const LatticePolygon& p);

// All good edges of P, CCW order. Degenerate polygons have none.
std::vector<GoodEdge> find_good_edges(const LatticePolygon& p);
// The analysis pick: largest N_E, ties broken by lexicographically smallest
// (a, b).
std::optional<GoodEdge> select_good_edge(const LatticePolygon& p);

LatticePolygon minkowski_sum(const LatticePolygon& p, const LatticePolygon& q);

// Basis of E_N: pairs (G, H) with supp(XG), supp(YH) inside the polygon and,
// when an edge is given, the top weighted-degree components coupled so that
// d_{a,b}(aXG + bYH) <= d_weighted - 1. Dimension 2N - N_X - N_Y - N_E when
// d_weighted is the edge level.
DomainBasis basis_E_N(const LatticePolygon& region,
                      const std::optional<GoodEdge>& edge,
                      long long d_weighted, const CoefficientField& k);

// SR(h) on basis_E_N; codomain monomials of degree <= 2d-2 for the region's
// analysis degree d. Requires N(h) inside the region and characteristic 0 or
// > d(d-1).
RuppertMatrix build_matrix_SR(const BivariatePolynomial& h,
                              const LatticePolygon& region,
                              const std::optional<GoodEdge>& edge);

// Explicit kernel elements of the sparse map attached to a planted
// factorization f = f_1^{e_1} ... f_r^{e_r}:
//   G_i^(1) = -d_{a,b}(f_i) (f/f_1) d_X f_1 + d_{a,b}(f_1) (f/f_i) d_X f_i
//   G_i^(k) = (f/f_i^k) d_X f_i                    (k = 2..e_i)
// and the same with d_Y. Newton/weighted-degree containments are verified;
// the N(f) containment for k >= 2 is only demanded when f(0,0) != 0.
std::vector<PolyPair> sparse_kernel_witnesses(
    const std::vector<std::pair<BivariatePolynomial, int>>& factors,
    long long a, long long b);

// True when every support point of f lies in the region.
bool region_contains_support(const LatticePolygon& region,
                             const BivariatePolynomial& f);

// Deterministic renderings used by the CLI: fixed 32-px lattice pitch SVG
// with the hull filled at 20% opacity and good edges stroked heavier; ASCII
// with dots for lattice points and asterisks for support points.
std::string render_svg(const LatticePolygon& p,
                       const std::vector<GoodEdge>& good_edges,
                       const std::vector<LatticePoint>& support);
std::string render_ascii(const LatticePolygon& p,
                         const std::vector<GoodEdge>& good_edges,
                         const std::vector<LatticePoint>& support);

}  // namespace pencils
