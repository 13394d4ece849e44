#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pencils/matrix.hpp"
#include "pencils/polynomial.hpp"

namespace pencils {

// Monomial enumeration in the fixed graded-lex order (ascending).
std::vector<Exp2> monomials_up_to(int n);
std::vector<Exp2> monomials_of_degree(int n);
std::vector<Exp3> monomials3_of_degree(int n);

using PolyPair = std::pair<BivariatePolynomial, BivariatePolynomial>;

enum class DomainKind {
  FullPairs,              // K[X,Y]_{<=nu-1}^2, dimension nu(nu+1)
  ConstrainedPairs,       // E_nu: deg(XG+YH) <= nu-1, dimension nu^2-1
  HomogeneousConstrained, // E: Z | XG+YH, via homogenization of E_d to d-1
  SparseConstrained,      // E_N: Newton-polygon constrained (see newton.hpp)
};

// Ordered basis of one of the Ruppert-map domains. Elements are stored as
// affine pairs; for the homogeneous domain the element in play is the
// degree-(d-1) homogenization of the stored pair.
struct DomainBasis {
  DomainKind kind;
  int nu = 0;  // nu for the affine kinds, d for the homogeneous kind
  CoefficientField field;
  std::vector<PolyPair> pairs;

  std::size_t dimension() const { return pairs.size(); }
};

// All (m, 0), (0, m) over monomials m of degree <= nu-1.
DomainBasis basis_full_pairs(const CoefficientField& k, int nu);
// E_nu: (m, 0), (0, m) for deg m <= nu-2, plus (Y*Q, -X*Q) for Q of exact
// degree nu-2; nu^2-1 elements.
DomainBasis basis_E(const CoefficientField& k, int nu);

enum class MapKind { G_nu, R_nu, R_homogeneous, SR_sparse };

// One of the linear maps G_nu(f), R_nu(f), R(F), SR(h) with explicit bases:
// column j is the image of domain element j expressed in the codomain
// monomial list. Immutable once built.
class RuppertMatrix {
public:
  RuppertMatrix(MapKind kind, DomainBasis domain, std::vector<Exp2> codomain,
                FieldMat entries, std::string source)
      : kind_(kind), domain_(std::move(domain)),
        codomain2_(std::move(codomain)), entries_(std::move(entries)),
        source_(std::move(source)) {}
  RuppertMatrix(MapKind kind, DomainBasis domain, std::vector<Exp3> codomain,
                FieldMat entries, std::string source)
      : kind_(kind), domain_(std::move(domain)),
        codomain3_(std::move(codomain)), entries_(std::move(entries)),
        source_(std::move(source)) {}

  MapKind kind() const { return kind_; }
  const DomainBasis& domain() const { return domain_; }
  const std::vector<Exp2>& codomain_monomials() const { return codomain2_; }
  const std::vector<Exp3>& codomain_monomials3() const { return codomain3_; }
  const FieldMat& entries() const { return entries_; }
  const std::string& source() const { return source_; }

  std::size_t rank() const { return entries_.rank(); }
  std::size_t kernel_dimension() const { return entries_.kernel_dimension(); }

  struct Kernel {
    std::size_t dimension;
    // Kernel vectors as affine (G, H) pairs through the domain basis, plus
    // the raw coordinate vectors.
    std::vector<PolyPair> basis;
    std::vector<std::vector<FieldElement>> coordinates;
  };
  Kernel kernel() const;

  // u*A + v*B entrywise; requires identical domain/codomain bases. This is
  // the matrix pencil the spectrum module works with.
  static RuppertMatrix linear_combination(const FieldElement& u,
                                          const RuppertMatrix& A,
                                          const FieldElement& v,
                                          const RuppertMatrix& B);

private:
  MapKind kind_;
  DomainBasis domain_;
  std::vector<Exp2> codomain2_;
  std::vector<Exp3> codomain3_;
  FieldMat entries_;
  std::string source_;
};

// (G,H) |-> (f dG/dY - G df/dY) - (f dH/dX - H df/dX), the common integrand
// of all four maps.
BivariatePolynomial ruppert_image(const BivariatePolynomial& f,
                                  const BivariatePolynomial& G,
                                  const BivariatePolynomial& H);

// G_nu(f) on the full pair space; codomain degree <= nu+d-2.
RuppertMatrix build_matrix_G(const BivariatePolynomial& f, int nu);
// R_nu(f) on E_nu; the degree-(nu+d-2) component of every image must vanish
// and the codomain is truncated to degree <= nu+d-3.
RuppertMatrix build_matrix_R(const BivariatePolynomial& f, int nu);
// R_d(1): (G,H) |-> dG/dY - dH/dX on E_d; rank d(d-1)/2.
RuppertMatrix build_matrix_R_of_one(const CoefficientField& k, int d);
// Homogeneous R(F) on E = {Z | XG+YH}; every image divisible by Z.
RuppertMatrix build_matrix_R_hom(const HomogeneousPolynomial3& F);

// dim ker G_nu(f) = r-1 + C(2+nu-d+sum d_i(e_i-1), 2) for f with r planted
// irreducible factors of degrees/multiplicities (d_i, e_i).
long long dim_ker_G_formula(int r, int d, int nu,
                            const std::vector<std::pair<int, int>>& pairs);
// dim ker R(F) = r-2 + C(2+sum d_i(e_i-1), 2).
long long dim_ker_R_hom_formula(int r,
                                const std::vector<std::pair<int, int>>& pairs);

// Explicit ker R_d(f) basis for squarefree f = f_1...f_r:
// ( -d_i (f/f_1) d_X f_1 + d_1 (f/f_i) d_X f_i , same with d_Y ), i=2..r.
// Each witness is verified to lie in the kernel before being returned.
std::vector<PolyPair> squarefree_R_kernel_witnesses(
    const std::vector<BivariatePolynomial>& factors,
    const std::vector<int>& degrees);

// Coordinates of the stacked pair (G, H) in the span of the basis pairs;
// empty optional when the pair lies outside the span.
std::optional<std::vector<FieldElement>> coordinates_in_basis(
    const DomainBasis& basis, const BivariatePolynomial& G,
    const BivariatePolynomial& H);

}  // namespace pencils
