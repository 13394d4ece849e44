#include "pencils/newton.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pencils/errors.hpp"

namespace pencils {

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a,
                const LatticePoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

LatticePolygon LatticePolygon::hull_of(std::vector<LatticePoint> pts) {
  if (pts.empty()) throw InternalError("hull of empty point set");
  for (const auto& p : pts)
    if (p.x < 0 || p.y < 0)
      throw InternalError("lattice polygon outside the first quadrant");
  std::sort(pts.begin(), pts.end(), [](const LatticePoint& a,
                                       const LatticePoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolygon poly;
  if (pts.size() <= 2) {
    poly.vertices_ = pts;
  } else {
    // Andrew's monotone chain; <= pops collinear points so vertices are
    // extreme.
    std::vector<LatticePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
      h[k++] = p;
    }
    std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
      while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
      h[k++] = *it;
    }
    h.resize(k - 1);
    poly.vertices_ = std::move(h);
    if (poly.vertices_.size() == 2 && poly.vertices_[0] == poly.vertices_[1])
      poly.vertices_.pop_back();
  }
  poly.enumerate_points();
  return poly;
}

bool LatticePolygon::contains(LatticePoint p) const {
  if (vertices_.size() == 1) return p == vertices_[0];
  if (vertices_.size() == 2) {
    const auto& a = vertices_[0];
    const auto& b = vertices_[1];
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % vertices_.size()];
    if (cross(a, b, p) < 0) return false;
  }
  return true;
}

bool LatticePolygon::contains(const LatticePolygon& other) const {
  for (const auto& v : other.vertices_)
    if (!contains(v)) return false;
  return true;
}

void LatticePolygon::enumerate_points() {
  points_.clear();
  long long mx = max_x(), my = max_y();
  for (long long y = 0; y <= my; ++y)
    for (long long x = 0; x <= mx; ++x)
      if (contains({x, y})) points_.push_back({x, y});
  std::sort(points_.begin(), points_.end(),
            [](const LatticePoint& a, const LatticePoint& b) {
              long long ta = a.x + a.y, tb = b.x + b.y;
              if (ta != tb) return ta < tb;
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  n_total_ = static_cast<long long>(points_.size());
  n_x_ = std::count_if(points_.begin(), points_.end(),
                       [](const LatticePoint& p) { return p.y == 0; });
  n_y_ = std::count_if(points_.begin(), points_.end(),
                       [](const LatticePoint& p) { return p.x == 0; });
}

long long LatticePolygon::max_x() const {
  long long m = 0;
  for (const auto& v : vertices_) m = std::max(m, v.x);
  return m;
}

long long LatticePolygon::max_y() const {
  long long m = 0;
  for (const auto& v : vertices_) m = std::max(m, v.y);
  return m;
}

long long LatticePolygon::max_total_degree() const {
  long long m = 0;
  for (const auto& v : vertices_) m = std::max(m, v.x + v.y);
  return m;
}

LatticePolygon newton_polygon(const BivariatePolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomial("Newton polygon of zero polynomial");
  std::vector<LatticePoint> pts;
  for (const Exp2& e : f.support()) pts.push_back({e.i, e.j});
  return LatticePolygon::hull_of(std::move(pts));
}

LatticePolygon superior_envelope(const LatticePolygon& p) {
  std::vector<LatticePoint> pts = p.vertices();
  pts.push_back({0, 0});
  pts.push_back({p.max_x(), 0});
  pts.push_back({0, p.max_y()});
  LatticePolygon env = LatticePolygon::hull_of(std::move(pts));
  // Definitional property, not guaranteed by the construction a priori:
  // every boundary edge off the axes has non-positive slope.
  const auto& v = env.vertices();
  if (v.size() >= 3) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      bool on_axis = (a.x == 0 && b.x == 0) || (a.y == 0 && b.y == 0);
      if (!on_axis && (b.x - a.x) * (b.y - a.y) > 0)
        throw EnvelopeAssertionFailed(
            "positive-slope edge in the superior envelope");
    }
  }
  return env;
}

std::vector<GoodEdge> find_good_edges(const LatticePolygon& p) {
  std::vector<GoodEdge> out;
  const auto& v = p.vertices();
  if (v.size() < 3) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    long long dx = b.x - a.x, dy = b.y - a.y;
    long long na = dy, nb = -dx;  // outward normal of a CCW edge
    if (na < 0 || nb < 0) continue;
    long long g = std::gcd(std::abs(na), std::abs(nb));
    if (g == 0) continue;
    na /= g;
    nb /= g;
    long long level = na * a.x + nb * a.y;
    bool good = true;
    long long on_edge = 0;
    for (const auto& q : p.lattice_points()) {
      long long w = na * q.x + nb * q.y;
      if (w > level) {
        good = false;  // would contradict the supporting-line property
        break;
      }
      if (w == level) ++on_edge;
    }
    if (good) out.push_back({a, b, na, nb, level, on_edge});
  }
  return out;
}

std::optional<GoodEdge> select_good_edge(const LatticePolygon& p) {
  std::optional<GoodEdge> best;
  for (const GoodEdge& e : find_good_edges(p)) {
    if (!best || e.points_on_edge > best->points_on_edge ||
        (e.points_on_edge == best->points_on_edge &&
         std::pair{e.a, e.b} < std::pair{best->a, best->b}))
      best = e;
  }
  return best;
}

LatticePolygon minkowski_sum(const LatticePolygon& p, const LatticePolygon& q) {
  // Vertex-pair sums followed by a hull: equivalent to the edge merge and
  // robust for degenerate summands.
  std::vector<LatticePoint> pts;
  pts.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back({a.x + b.x, a.y + b.y});
  return LatticePolygon::hull_of(std::move(pts));
}

bool region_contains_support(const LatticePolygon& region,
                             const BivariatePolynomial& f) {
  for (const Exp2& e : f.support())
    if (!region.contains({e.i, e.j})) return false;
  return true;
}

DomainBasis basis_E_N(const LatticePolygon& region,
                      const std::optional<GoodEdge>& edge,
                      long long d_weighted, const CoefficientField& k) {
  if (edge) {
    if (edge->a < 0 || edge->b < 0 || (edge->a == 0 && edge->b == 0))
      throw EdgeNotGood("normal must be in N^2 minus the origin");
    for (const auto& q : region.lattice_points())
      if (edge->a * q.x + edge->b * q.y > edge->level)
        throw EdgeNotGood("edge level does not dominate the region");
    if (k.is_prime_field() &&
        (edge->a >= static_cast<long long>(k.characteristic) ||
         edge->b >= static_cast<long long>(k.characteristic)))
      throw CharacteristicTooSmall("edge normal collapses mod p");
  }

  DomainBasis basis{DomainKind::SparseConstrained, 0, k, {}};
  basis.nu = static_cast<int>(region.max_total_degree());
  BivariatePolynomial zero(k);
  FieldElement one = FieldElement::one(k);

  auto constrained = [&](const LatticePoint& m) {
    return edge && edge->a * m.x + edge->b * m.y >= d_weighted;
  };
  auto g_monomial = [&](const LatticePoint& m) {
    return BivariatePolynomial::monomial(
        k, {static_cast<int>(m.x - 1), static_cast<int>(m.y)}, one);
  };
  auto h_monomial = [&](const LatticePoint& m) {
    return BivariatePolynomial::monomial(
        k, {static_cast<int>(m.x), static_cast<int>(m.y - 1)}, one);
  };

  // Free G slots, free H slots, then the coupled top pairs.
  for (const auto& m : region.lattice_points()) {
    if (m.x < 1) continue;
    if (!constrained(m) || edge->a == 0)
      basis.pairs.emplace_back(g_monomial(m), zero);
  }
  for (const auto& m : region.lattice_points()) {
    if (m.y < 1) continue;
    if (!constrained(m) || edge->b == 0)
      basis.pairs.emplace_back(zero, h_monomial(m));
  }
  if (edge && edge->a != 0 && edge->b != 0) {
    for (const auto& m : region.lattice_points()) {
      if (!constrained(m) || m.x < 1 || m.y < 1) continue;
      basis.pairs.emplace_back(
          g_monomial(m).scaled(FieldElement::integer(k, edge->b)),
          h_monomial(m).scaled(FieldElement::integer(k, -edge->a)));
    }
  }

  if (!edge || d_weighted == edge->level) {
    long long expect = 2 * region.count_total() - region.count_x_axis() -
                       region.count_y_axis() -
                       (edge ? edge->points_on_edge : 0);
    if (static_cast<long long>(basis.pairs.size()) != expect)
      throw InternalError("E_N dimension " +
                          std::to_string(basis.pairs.size()) +
                          " != 2N-N_X-N_Y-N_E = " + std::to_string(expect));
  }
  return basis;
}

RuppertMatrix build_matrix_SR(const BivariatePolynomial& h,
                              const LatticePolygon& region,
                              const std::optional<GoodEdge>& edge) {
  if (h.is_zero()) throw ZeroPolynomial("SR of zero polynomial");
  if (!region_contains_support(region, h))
    throw PolygonMismatch("N(h) not contained in the region");
  long long d = region.max_total_degree();
  const CoefficientField& k = h.field();
  if (k.is_prime_field() &&
      static_cast<long long>(k.characteristic) <= d * (d - 1))
    throw CharacteristicTooSmall("need characteristic 0 or > d(d-1) = " +
                                 std::to_string(d * (d - 1)));

  DomainBasis basis = basis_E_N(region, edge, edge ? edge->level : 0, k);
  std::vector<BivariatePolynomial> images;
  images.reserve(basis.pairs.size());
  for (const auto& [G, H] : basis.pairs)
    images.push_back(ruppert_image(h, G, H));
  std::vector<Exp2> codomain = monomials_up_to(static_cast<int>(2 * d - 2));
  std::map<Exp2, std::size_t, GradedLex2> row_of;
  for (std::size_t r = 0; r < codomain.size(); ++r)
    row_of.emplace(codomain[r], r);
  FieldMat m(codomain.size(), images.size(), k);
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [e, v] : images[c].terms()) {
      auto it = row_of.find(e);
      if (it == row_of.end()) throw DegreeLeakage("SR image outside codomain");
      m.at(it->second, c) = v;
    }
  return RuppertMatrix(MapKind::SR_sparse, std::move(basis),
                       std::move(codomain), std::move(m), h.str());
}

std::vector<PolyPair> sparse_kernel_witnesses(
    const std::vector<std::pair<BivariatePolynomial, int>>& factors,
    long long a, long long b) {
  if (factors.empty()) throw FactorsNotCoprime("no factors given");
  const CoefficientField& k = factors[0].first.field();
  for (const auto& [fi, ei] : factors) {
    if (fi.is_zero() || fi.is_constant())
      throw FactorsNotCoprime("factors must be nonconstant");
    if (ei < 1) throw InconsistentDegrees("multiplicities must be >= 1");
  }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (!gcd_bivariate(factors[i].first, factors[j].first).is_constant())
        throw FactorsNotCoprime("factors share a common divisor");

  // The first-order witnesses are -d_{a,b}(f_i) base_1 + d_{a,b}(f_1) base_i,
  // so they are only independent when d_{a,b}(f_1) != 0. The pivot factor is
  // an arbitrary choice; put a maximal-weight factor first.
  std::vector<std::pair<BivariatePolynomial, int>> ordered = factors;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](const auto& u, const auto& v) {
                     return u.first.weighted_degree(a, b) >
                            v.first.weighted_degree(a, b);
                   });

  BivariatePolynomial f = BivariatePolynomial::constant(FieldElement::one(k));
  for (const auto& [fi, ei] : ordered)
    f *= fi.pow(static_cast<unsigned>(ei));
  int d = *f.total_degree();
  if (k.is_prime_field() &&
      k.characteristic <= static_cast<std::uint64_t>(d))
    throw CharacteristicTooSmall("need characteristic 0 or > d");

  LatticePolygon nf = newton_polygon(f);
  LatticePolygon nplus = superior_envelope(nf);
  bool f00_nonzero = !f.constant_term().is_zero();
  long long df_ab = f.weighted_degree(a, b);
  // (iii) is conditioned on (a, b) being a good-edge normal of N(f).
  bool ab_is_good_normal = false;
  for (const GoodEdge& e : find_good_edges(nf))
    if (e.a == a && e.b == b) ab_is_good_normal = true;

  BivariatePolynomial x = BivariatePolynomial::variable(k, Var::X);
  BivariatePolynomial y = BivariatePolynomial::variable(k, Var::Y);

  auto check_weighted = [&](const BivariatePolynomial& G,
                            const BivariatePolynomial& H, bool enforce) {
    if (!enforce) return;
    BivariatePolynomial s = (x * G).scaled(FieldElement::integer(k, a)) +
                            (y * H).scaled(FieldElement::integer(k, b));
    if (!s.is_zero() && s.weighted_degree(a, b) > df_ab - 1)
      throw WitnessContainmentFailed("weighted-degree bound violated");
  };

  std::vector<PolyPair> out;
  // cofactors f / f_i^k for k = 1..e_i
  std::vector<std::vector<BivariatePolynomial>> cof(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    BivariatePolynomial c = f;
    for (int kk = 1; kk <= ordered[i].second; ++kk) {
      c = exact_divide(c, ordered[i].first);
      cof[i].push_back(c);
    }
  }

  for (std::size_t i = 1; i < ordered.size(); ++i) {
    FieldElement w1 =
        FieldElement::integer(k, ordered[0].first.weighted_degree(a, b));
    FieldElement wi =
        FieldElement::integer(k, ordered[i].first.weighted_degree(a, b));
    BivariatePolynomial G =
        (cof[0][0] * ordered[0].first.derivative(Var::X)).scaled(-wi) +
        (cof[i][0] * ordered[i].first.derivative(Var::X)).scaled(w1);
    BivariatePolynomial H =
        (cof[0][0] * ordered[0].first.derivative(Var::Y)).scaled(-wi) +
        (cof[i][0] * ordered[i].first.derivative(Var::Y)).scaled(w1);
    if (!region_contains_support(nf, x * G) ||
        !region_contains_support(nf, y * H))
      throw WitnessContainmentFailed("first-order witness outside N(f)");
    check_weighted(G, H, true);
    out.emplace_back(std::move(G), std::move(H));
  }

  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (int kk = 2; kk <= ordered[i].second; ++kk) {
      BivariatePolynomial G = cof[i][kk - 1] * ordered[i].first.derivative(Var::X);
      BivariatePolynomial H = cof[i][kk - 1] * ordered[i].first.derivative(Var::Y);
      if (!region_contains_support(nplus, x * G) ||
          !region_contains_support(nplus, y * H))
        throw WitnessContainmentFailed("witness outside N^+(f)");
      if (f00_nonzero && (!region_contains_support(nf, x * G) ||
                          !region_contains_support(nf, y * H)))
        throw WitnessContainmentFailed(
            "witness outside N(f) although f(0,0) != 0");
      check_weighted(G, H, ab_is_good_normal);
      out.emplace_back(std::move(G), std::move(H));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_svg(const LatticePolygon& p,
                       const std::vector<GoodEdge>& good_edges,
                       const std::vector<LatticePoint>& support) {
  const long long pitch = 32, margin = 32;
  long long mx = p.max_x() + 1, my = p.max_y() + 1;
  long long w = 2 * margin + pitch * mx, h = 2 * margin + pitch * my;
  auto px = [&](long long x) { return margin + x * pitch; };
  auto py = [&](long long y) { return h - margin - y * pitch; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\">\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(mx)
     << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0)
     << "\" y2=\"" << py(my) << "\" stroke=\"black\"/>\n";
  for (long long gy = 0; gy <= my; ++gy)
    for (long long gx = 0; gx <= mx; ++gx)
      os << "<circle cx=\"" << px(gx) << "\" cy=\"" << py(gy)
         << "\" r=\"2\" fill=\"grey\"/>\n";
  if (!p.vertices().empty()) {
    os << "<polygon points=\"";
    for (const auto& v : p.vertices()) os << px(v.x) << "," << py(v.y) << " ";
    os << "\" fill=\"steelblue\" fill-opacity=\"0.2\" stroke=\"steelblue\""
          " stroke-width=\"2\"/>\n";
  }
  for (const auto& e : good_edges)
    os << "<line x1=\"" << px(e.from.x) << "\" y1=\"" << py(e.from.y)
       << "\" x2=\"" << px(e.to.x) << "\" y2=\"" << py(e.to.y)
       << "\" stroke=\"crimson\" stroke-width=\"4\"/>\n";
  for (const auto& s : support)
    os << "<circle cx=\"" << px(s.x) << "\" cy=\"" << py(s.y)
       << "\" r=\"5\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_ascii(const LatticePolygon& p,
                         const std::vector<GoodEdge>& good_edges,
                         const std::vector<LatticePoint>& support) {
  long long mx = p.max_x(), my = p.max_y();
  std::ostringstream os;
  for (long long y = my; y >= 0; --y) {
    for (long long x = 0; x <= mx; ++x) {
      char c = ' ';
      if (p.contains({x, y})) {
        c = '.';
        for (const auto& e : good_edges)
          if (e.a * x + e.b * y == e.level) c = '#';
        for (const auto& s : support)
          if (s.x == x && s.y == y) c = '*';
      }
      os << c << ' ';
    }
    os << '\n';
  }
  os << "(*: support, #: good-edge lattice point, .: region point)\n";
  return os.str();
}

}  // namespace pencils
