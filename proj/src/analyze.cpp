#include <algorithm>

#include "internal.hpp"
#include "pencils/errors.hpp"
#include "pencils/spectrum.hpp"

namespace pencils {

namespace {

bool is_one_polynomial(const BivariatePolynomial& g) {
  return g.is_constant() && g.constant_term().is_one();
}

// Stats + kernel verification at one parameter value; spectral iff the
// kernel is nontrivial.
SpectralPoint verified_point(const Pencil& pencil, ProjectivePoint pt) {
  HomogeneousPolynomial3 member = pencil.member(pt.mu, pt.lambda);
  MemberStatistics st = member_statistics(member);
  SpectralPoint sp;
  sp.point = std::move(pt);
  sp.kernel_dim = st.kernel_dim;
  sp.e_infinity = st.e_infinity;
  sp.degree_deficient = st.e_infinity > 0;
  sp.stats = std::move(st);
  return sp;
}

void aggregate(PencilReport& rep) {
  for (const SpectralPoint& sp : rep.spectral_points) {
    const MemberStatistics& st = *sp.stats;
    rep.rho += st.n - 1;
    rep.m += st.m - 1;
    rep.omega += st.omega;
    rep.theta += st.theta;
  }
}

void dense_verdicts(PencilReport& rep, const Pencil& pencil) {
  long long d = rep.degree;
  long long sum = rep.m + rep.omega + rep.theta;

  rep.bounds.push_back({"rho_le_m_omega_theta", rep.rho, sum,
                        rep.rho <= sum, true, "0 <= rho <= m+omega+theta"});
  rep.bounds.push_back({"m_omega_theta_le_d2_minus_1", sum, d * d - 1,
                        sum <= d * d - 1, true,
                        "total order of reducibility bound"});
  rep.bounds.push_back({"omega_le_2d_minus_2", rep.omega, 2 * d - 2,
                        rep.omega <= 2 * d - 2, true,
                        "degree-weighted multiple factors"});

  long long gamma = 0, nonreduced = 0;
  for (const SpectralPoint& sp : rep.spectral_points) {
    if (sp.stats->gamma_member()) ++gamma;
    if (sp.stats->nonreduced_irreducible_affine()) ++nonreduced;
  }
  rep.bounds.push_back({"gamma_card_le_3", gamma, 3, gamma <= 3, true,
                        "perfect-power members P^e, e >= 2"});
  rep.bounds.push_back({"nonreduced_affine_fibers_le_4", nonreduced, 4,
                        nonreduced <= 4, true,
                        "members Z^e_inf P^e with e >= 2"});

  // The g = 1 fiber bound concerns the fibers of the polynomial f: the
  // degenerate member (0:1) = Z^d is not a fiber and only feeds U-powers of
  // Spect, while the rank-d(d-1)/2 argument bounds the V-degree. Summing
  // over it would make the claim false (f = Y - X^2 already violates it).
  bool g_is_one = is_one_polynomial(pencil.g());
  long long fiber_sum = 0;
  for (const SpectralPoint& sp : rep.spectral_points) {
    if (sp.point.mu.is_zero()) continue;
    const MemberStatistics& st = *sp.stats;
    fiber_sum += (st.m - 1) + st.omega + st.theta;
  }
  BoundVerdict stein{"stein_fiber_bound_g_equals_1", fiber_sum, d * (d - 1) / 2,
                        true, g_is_one,
                        "m+omega+theta over the fibers of f (members with "
                        "mu != 0) <= d(d-1)/2 for g = 1"};
  if (g_is_one) stein.holds = fiber_sum <= d * (d - 1) / 2;
  else stein.note += " (not applicable: g != 1)";
  rep.bounds.push_back(std::move(stein));

  bool rho_max = rep.rho == d * d - 1;
  rep.bounds.push_back({"rho_max_implies_omega_zero",
                        rho_max ? rep.omega : 0, 0,
                        !(rho_max && rep.omega != 0), true,
                        "rho = d^2-1 forces omega = 0"});
}

void sparse_section(PencilReport& rep, const Pencil& pencil,
                    PolygonChoice choice) {
  const BivariatePolynomial& f = pencil.f();
  const BivariatePolynomial& g = pencil.g();

  auto make_region = [&]() -> LatticePolygon {
    if (choice == PolygonChoice::Auto) {
      BivariatePolynomial s = f + g;
      if (s.is_zero())
        throw ZeroPolynomial("f + g vanishes; choose --polygon newton");
      return superior_envelope(newton_polygon(s));
    }
    std::vector<LatticePoint> pts;
    for (const Exp2& e : f.support()) pts.push_back({e.i, e.j});
    for (const Exp2& e : g.support()) pts.push_back({e.i, e.j});
    LatticePolygon hull = LatticePolygon::hull_of(std::move(pts));
    return choice == PolygonChoice::Newton ? hull : superior_envelope(hull);
  };
  SparseData sd{choice, make_region()};
  sd.edge = select_good_edge(sd.region);
  sd.n_total = sd.region.count_total();
  sd.n_x = sd.region.count_x_axis();
  sd.n_y = sd.region.count_y_axis();
  sd.n_edge = sd.edge ? sd.edge->points_on_edge : 0;
  sd.bound_rhs =
      2 * sd.n_total - sd.n_x - sd.n_y - sd.n_edge + rep.kappa.kappa;
  sd.dim_E_N = static_cast<long long>(
      basis_E_N(sd.region, sd.edge, sd.edge ? sd.edge->level : 0,
                pencil.field())
          .dimension());

  LatticePolygon nf = newton_polygon(f), ng = newton_polygon(g);
  sd.contains_newton =
      sd.region.contains(nf) && sd.region.contains(ng);
  sd.contains_superior = sd.region.contains(superior_envelope(nf)) &&
                         sd.region.contains(superior_envelope(ng));

  rep.bounds.push_back({"sparse_bound_rho", rep.rho, sd.bound_rhs,
                        !sd.contains_newton || rep.rho <= sd.bound_rhs,
                        sd.contains_newton,
                        "rho <= 2N-N_X-N_Y-N_E+kappa when N(f),N(g) in the region"});
  rep.bounds.push_back({"sparse_bound_m_superior", rep.m, sd.bound_rhs,
                        !sd.contains_superior || rep.m <= sd.bound_rhs,
                        sd.contains_superior,
                        "m <= 2N-N_X-N_Y-N_E+kappa when N+(f),N+(g) in the region"});

  // The third sparse bound needs (-g(0,0) : f(0,0)) outside the spectrum;
  // the point is rational, so one kernel computation decides it exactly.
  FieldElement f00 = f.constant_term(), g00 = g.constant_term();
  bool applicable = sd.contains_newton;
  std::string note =
      "m <= 2N-N_X-N_Y-N_E+kappa when N(f),N(g) in the region and "
      "(-g(0,0):f(0,0)) is not spectral";
  if (f00.is_zero() && g00.is_zero()) {
    applicable = false;
    note += " (point undefined: f(0,0) = g(0,0) = 0)";
  } else if (applicable) {
    ProjectivePoint pt =
        f00.is_zero() ? ProjectivePoint::infinity(pencil.field())
                      : ProjectivePoint::finite(-(g00 / f00));
    HomogeneousPolynomial3 member = pencil.member(pt.mu, pt.lambda);
    bool spectral =
        build_matrix_R_hom(member).kernel_dimension() > 0;
    sd.origin_point_spectral = spectral;
    if (spectral) {
      applicable = false;
      note += " (hypothesis fails: the point is spectral)";
    }
  }
  rep.bounds.push_back({"sparse_bound_m_origin", rep.m, sd.bound_rhs,
                        !applicable || rep.m <= sd.bound_rhs, applicable,
                        note});

  rep.sparse = std::move(sd);
}

}  // namespace

bool PencilReport::all_bounds_hold() const {
  for (const BoundVerdict& b : bounds)
    if (b.applicable && !b.holds) return false;
  return true;
}

PencilReport analyze(const Pencil& pencil, AnalysisMode mode,
                     std::uint64_t seed, PolygonChoice choice) {
  const CoefficientField& k = pencil.field();
  long long d = pencil.degree();
  if (k.is_prime_field() &&
      static_cast<long long>(k.characteristic) <= d * (d - 1))
    throw CharacteristicTooSmall("analysis needs characteristic 0 or > d(d-1)");

  PencilReport rep;
  rep.field = k;
  rep.seed = seed;
  rep.mode = mode;
  rep.f_text = pencil.f().str();
  rep.g_text = pencil.g().str();
  rep.degree = pencil.degree();
  rep.kappa = compute_kappa(pencil);

  if (k.is_prime_field()) {
    // Complete sweep of P^1(F_p); extension points are invisible and the
    // completeness flag follows from Spect's factor accounting.
    std::vector<SpectralPoint> pts = spectrum_bruteforce(pencil);
    for (SpectralPoint& sp : pts) {
      MemberStatistics st =
          member_statistics(pencil.member(sp.point.mu, sp.point.lambda));
      if (st.kernel_dim != sp.kernel_dim)
        throw InternalError("brute-force and statistics kernels disagree");
      sp.stats = std::move(st);
    }
    rep.spectral_points = std::move(pts);

    if (k.characteristic > static_cast<std::uint64_t>(d) * d) {
      BinaryForm S = spect_polynomial(pencil, seed);
      detail::RootExtraction ext = detail::extract_roots(S, seed);
      SpectSummary sum{std::move(S), {}, ext.nonrational_blocks};
      auto is_spectral = [&](const ProjectivePoint& pt) {
        for (const SpectralPoint& sp : rep.spectral_points)
          if (sp.point == pt) return true;
        return false;
      };
      for (const auto& [mu, mult] : ext.finite_roots) {
        ProjectivePoint pt = ProjectivePoint::finite(mu);
        if (is_spectral(pt))
          sum.verified_roots.emplace_back(pt, mult);
        else
          rep.warnings.push_back("extraneous Spect factor at " + pt.str());
      }
      if (ext.infinity_multiplicity > 0) {
        ProjectivePoint pt = ProjectivePoint::infinity(k);
        if (is_spectral(pt))
          sum.verified_roots.emplace_back(pt, ext.infinity_multiplicity);
        else
          rep.warnings.push_back("extraneous Spect factor at " + pt.str());
      }
      rep.aggregates_complete = ext.nonrational_blocks.empty();
      if (!rep.aggregates_complete)
        rep.warnings.push_back(
            "Spect has factors without F_p roots; spectral points in proper "
            "extensions of F_p are possible and not counted");
      rep.spect = std::move(sum);
    } else {
      rep.aggregates_complete = false;
      rep.warnings.push_back(
          "p <= d^2: Spect skipped, extension spectral points not ruled out");
    }
    for (const SpectralPoint& sp : rep.spectral_points)
      if (sp.stats->m > sp.stats->n) {
        rep.warnings.push_back(
            "F_p consistency checks (m-1+omega+theta = kernel dimension) on "
            "non-squarefree members are empirical; the identity is a "
            "characteristic-0 theorem");
        break;
      }
  } else {
    BinaryForm S = spect_polynomial(pencil, seed);
    detail::RootExtraction ext = detail::extract_roots(S, seed);
    SpectSummary sum{std::move(S), {}, ext.nonrational_blocks};
    for (const auto& [mu, mult] : ext.finite_roots) {
      SpectralPoint sp = verified_point(pencil, ProjectivePoint::finite(mu));
      if (sp.kernel_dim > 0) {
        sum.verified_roots.emplace_back(sp.point, mult);
        rep.spectral_points.push_back(std::move(sp));
      } else {
        rep.warnings.push_back("extraneous Spect factor at " +
                               sp.point.str());
      }
    }
    if (ext.infinity_multiplicity > 0) {
      SpectralPoint sp =
          verified_point(pencil, ProjectivePoint::infinity(k));
      if (sp.kernel_dim > 0) {
        sum.verified_roots.emplace_back(sp.point,
                                        ext.infinity_multiplicity);
        rep.spectral_points.push_back(std::move(sp));
      } else {
        rep.warnings.push_back("extraneous Spect factor at " +
                               sp.point.str());
      }
    }
    rep.aggregates_complete = ext.nonrational_blocks.empty();
    if (!rep.aggregates_complete)
      rep.warnings.push_back(
          "Spect has non-rational factors of positive degree; their "
          "spectral points are reported as blocks without statistics");
    rep.spect = std::move(sum);
  }

  aggregate(rep);
  dense_verdicts(rep, pencil);
  if (mode == AnalysisMode::Sparse) sparse_section(rep, pencil, choice);
  return rep;
}

}  // namespace pencils
