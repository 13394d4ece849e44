#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pencils/newton.hpp"
#include "pencils/polynomial.hpp"
#include "pencils/ruppert.hpp"

namespace pencils {

// Reduced pencil mu f# + lambda g#. Construction verifies that f/g is
// reduced (constant gcd) and that d = max(deg f, deg g) >= 2; a nonconstant
// gcd raises CompositeOrNonReduced.
class Pencil {
public:
  static Pencil make(BivariatePolynomial f, BivariatePolynomial g);

  const BivariatePolynomial& f() const { return f_; }
  const BivariatePolynomial& g() const { return g_; }
  const HomogeneousPolynomial3& f_sharp() const { return f_sharp_; }
  const HomogeneousPolynomial3& g_sharp() const { return g_sharp_; }
  int degree() const { return d_; }
  const CoefficientField& field() const { return f_.field(); }

  // mu f# + lambda g#.
  HomogeneousPolynomial3 member(const FieldElement& mu,
                                const FieldElement& lambda) const;

private:
  Pencil(BivariatePolynomial f, BivariatePolynomial g, int d,
         HomogeneousPolynomial3 fs, HomogeneousPolynomial3 gs)
      : f_(std::move(f)), g_(std::move(g)), d_(d), f_sharp_(std::move(fs)),
        g_sharp_(std::move(gs)) {}

  BivariatePolynomial f_, g_;
  int d_;
  HomogeneousPolynomial3 f_sharp_, g_sharp_;
};

// Point of P^1, normalized so lambda is 1, or (1 : 0).
struct ProjectivePoint {
  FieldElement mu, lambda;

  static ProjectivePoint finite(FieldElement mu_value) {
    FieldElement one = FieldElement::one(mu_value.field());
    return {std::move(mu_value), std::move(one)};
  }
  static ProjectivePoint infinity(const CoefficientField& k) {
    return {FieldElement::one(k), FieldElement::zero(k)};
  }
  bool is_infinity() const { return lambda.is_zero(); }
  bool operator==(const ProjectivePoint& o) const {
    return mu == o.mu && lambda == o.lambda;
  }
  std::string str() const { return "(" + mu.str() + ":" + lambda.str() + ")"; }
};

// Factorization profile of one pencil member, recovered from squarefree
// decomposition plus Ruppert kernel dimensions (absolute irreducible factors
// are counted, never computed).
struct MemberStatistics {
  long long n = 0;      // distinct irreducible projective factors
  long long m = 0;      // factors counted with multiplicity
  long long omega = 0;  // sum deg(P_i) (e_i - 1)
  long long theta = 0;  // C(omega+1, 2) - sum (e_i - 1)
  int e_infinity = 0;   // multiplicity of the line Z = 0
  std::size_t kernel_dim = 0;  // dim ker R(F), equals m-1+omega+theta

  struct AffineClass {
    int multiplicity = 0;  // k in the squarefree decomposition
    long long factor_count = 0;  // absolutely irreducible factors of g_k
    int degree = 0;        // deg g_k
  };
  std::vector<AffineClass> classes;

  bool gamma_member() const { return n == 1 && m >= 2 && e_infinity == 0; }
  bool nonreduced_irreducible_affine() const {
    return n - (e_infinity > 0 ? 1 : 0) == 1 && m - e_infinity >= 2;
  }
};

// Statistics of F via squarefree decomposition; verifies the key equation
// m - 1 + omega + theta = dim ker R(F) and raises KeyEquationMismatch if it
// fails. Requires characteristic 0 or > d(d-1).
MemberStatistics member_statistics(const HomogeneousPolynomial3& F);

struct SpectralPoint {
  ProjectivePoint point;
  std::size_t kernel_dim = 0;
  std::optional<MemberStatistics> stats;  // present iff computed
  bool degree_deficient = false;          // Z divides the member
  int e_infinity = 0;
};

// Homogeneous binary form sum coeffs[i] U^i V^(degree-i).
struct BinaryForm {
  CoefficientField field;
  std::vector<FieldElement> coeffs;  // size degree()+1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const;
  FieldElement evaluate(const FieldElement& u, const FieldElement& v) const;
  std::string str() const;
};

// Spect(U, V): stabilized gcd of determinants of random row compressions of
// the matrix pencil U M(f#) + V M(g#), evaluated at d^2 sample points plus
// (1:0) and interpolated. Deterministic for a fixed seed. Roots reported
// downstream are verified by direct kernel computation.
BinaryForm spect_polynomial(const Pencil& pencil, std::uint64_t seed);

// Full projective-line sweep over F_p (p > d(d-1)): every point with a
// positive Ruppert kernel dimension. Spectral points in proper extensions
// of F_p are invisible here; analyze() records that caveat.
std::vector<SpectralPoint> spectrum_bruteforce(const Pencil& pencil);

struct KappaResult {
  long long kappa = 0;
  int e_infinity = 0;
  std::optional<ProjectivePoint> member;  // the Z-divisible member, if any
};
KappaResult compute_kappa(const Pencil& pencil);

struct BoundVerdict {
  std::string name;
  long long lhs = 0, rhs = 0;
  bool holds = true;
  bool applicable = true;
  std::string note;
};

enum class AnalysisMode { Dense, Sparse };
enum class PolygonChoice { Auto, Newton, Superior };

struct SpectSummary {
  BinaryForm form;
  // (root, multiplicity in Spect) for roots found by rational-root
  // extraction (F_p: full enumeration), kernel-verified.
  std::vector<std::pair<ProjectivePoint, int>> verified_roots;
  // degree/multiplicity blocks of Spect left after removing the verified
  // roots; products of non-rational irreducible factors.
  std::vector<std::pair<int, int>> nonrational_blocks;
};

struct SparseData {
  SparseData(PolygonChoice c, LatticePolygon r)
      : choice(c), region(std::move(r)) {}

  PolygonChoice choice = PolygonChoice::Auto;
  LatticePolygon region;
  std::optional<GoodEdge> edge;
  long long n_total = 0, n_x = 0, n_y = 0, n_edge = 0;
  long long bound_rhs = 0;  // 2N - N_X - N_Y - N_E + kappa
  long long dim_E_N = 0;
  bool contains_newton = false;     // N(f), N(g) inside region
  bool contains_superior = false;   // N+(f), N+(g) inside region
  std::optional<bool> origin_point_spectral;  // (-g(0,0) : f(0,0)) in sigma?
};

struct PencilReport {
  CoefficientField field;
  std::uint64_t seed = 0;
  AnalysisMode mode = AnalysisMode::Dense;
  std::string f_text, g_text;
  int degree = 0;

  std::vector<SpectralPoint> spectral_points;
  std::optional<SpectSummary> spect;
  long long rho = 0, m = 0, omega = 0, theta = 0;
  KappaResult kappa;
  // true when the aggregates cover the whole spectrum (no invisible
  // extension points / non-rational factors).
  bool aggregates_complete = true;
  std::vector<BoundVerdict> bounds;
  std::optional<SparseData> sparse;
  std::vector<std::string> warnings;

  bool all_bounds_hold() const;
};

// Full pipeline: spectrum, per-point statistics, aggregates, bound verdicts.
// Over F_p the spectrum is brute-forced; over Q it comes from Spect's
// rational roots, each verified by a kernel computation. A failed bound is
// data in the report, never an exception.
PencilReport analyze(const Pencil& pencil, AnalysisMode mode,
                     std::uint64_t seed,
                     PolygonChoice choice = PolygonChoice::Auto);

struct BertiniResult {
  BivariatePolynomial reduced;
  // (U_i, V_i, W_i) rows of the substitution X_i -> U_i X + V_i Y + W_i.
  std::vector<std::array<long long, 3>> substitution;
  int retries = 0;
};

// Random affine reduction of an n-variate polynomial over Q to a bivariate
// one (n >= 3); parameters are drawn from [-B, B], B = 10 d n, and redrawn
// up to 5 times if the total degree drops.
BertiniResult bertini_reduce(const NVariatePolynomial& F, std::uint64_t seed);

// Stable JSON serialization of a report (schema in docs/report-schema.json).
std::string report_to_json(const PencilReport& report);

}  // namespace pencils
