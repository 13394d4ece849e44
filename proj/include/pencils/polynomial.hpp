#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pencils/field.hpp"

namespace pencils {

// Exponent pair (i, j) for X^i Y^j.
struct Exp2 {
  int i = 0, j = 0;
  int total() const { return i + j; }
  bool operator==(const Exp2&) const = default;
};

// Graded lexicographic order: first by total degree, then by X-exponent.
// Fixed once for the whole artifact; matrices, gcd normalization and golden
// files all depend on it.
struct GradedLex2 {
  bool operator()(const Exp2& a, const Exp2& b) const {
    if (a.total() != b.total()) return a.total() < b.total();
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

struct Exp3 {
  int i = 0, j = 0, k = 0;
  bool operator==(const Exp3&) const = default;
};

struct GradedLex3 {
  bool operator()(const Exp3& a, const Exp3& b) const {
    int ta = a.i + a.j + a.k, tb = b.i + b.j + b.k;
    if (ta != tb) return ta < tb;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
  }
};

enum class Var { X, Y, Z };

class HomogeneousPolynomial3;

// Sparse exact bivariate polynomial. Stored coefficients are never zero; the
// zero polynomial has an empty term map and its total degree is reported as
// an empty optional, never -1 or 0.
class BivariatePolynomial {
public:
  using TermMap = std::map<Exp2, FieldElement, GradedLex2>;

  explicit BivariatePolynomial(const CoefficientField& k) : field_(k) {}

  static BivariatePolynomial zero(const CoefficientField& k) {
    return BivariatePolynomial(k);
  }
  static BivariatePolynomial constant(FieldElement c);
  static BivariatePolynomial monomial(const CoefficientField& k, Exp2 e,
                                      FieldElement c);
  static BivariatePolynomial variable(const CoefficientField& k, Var v);

  const CoefficientField& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<int> total_degree() const;
  int degree_x() const;
  int degree_y() const;
  FieldElement coeff(Exp2 e) const;
  FieldElement constant_term() const { return coeff({0, 0}); }
  // Leading term under graded-lex (error on zero polynomial).
  Exp2 leading_monomial() const;
  FieldElement leading_coefficient() const;

  void set_coeff(Exp2 e, FieldElement c);

  BivariatePolynomial operator-() const;
  friend BivariatePolynomial operator+(const BivariatePolynomial& a,
                                       const BivariatePolynomial& b);
  friend BivariatePolynomial operator-(const BivariatePolynomial& a,
                                       const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(const BivariatePolynomial& a,
                                       const BivariatePolynomial& b);
  BivariatePolynomial& operator+=(const BivariatePolynomial& o) {
    return *this = *this + o;
  }
  BivariatePolynomial& operator-=(const BivariatePolynomial& o) {
    return *this = *this - o;
  }
  BivariatePolynomial& operator*=(const BivariatePolynomial& o) {
    return *this = *this * o;
  }
  BivariatePolynomial scaled(const FieldElement& c) const;
  BivariatePolynomial pow(unsigned e) const;

  friend bool operator==(const BivariatePolynomial& a,
                         const BivariatePolynomial& b);
  friend bool operator!=(const BivariatePolynomial& a,
                         const BivariatePolynomial& b) {
    return !(a == b);
  }

  BivariatePolynomial derivative(Var v) const;
  long long weighted_degree(long long a, long long b) const;

  // Divide by graded-lex leading coefficient. Identity on zero.
  BivariatePolynomial monic() const;

  std::vector<Exp2> support() const;

  std::string str() const;

private:
  CoefficientField field_;
  TermMap terms_;
};

// Homogeneous trivariate polynomial with a fixed declared degree; every
// stored exponent triple sums to it.
class HomogeneousPolynomial3 {
public:
  using TermMap = std::map<Exp3, FieldElement, GradedLex3>;

  HomogeneousPolynomial3(const CoefficientField& k, int degree)
      : field_(k), degree_(degree) {}

  const CoefficientField& field() const { return field_; }
  int declared_degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  FieldElement coeff(Exp3 e) const;
  void set_coeff(Exp3 e, FieldElement c);

  friend HomogeneousPolynomial3 operator+(const HomogeneousPolynomial3& a,
                                          const HomogeneousPolynomial3& b);
  friend HomogeneousPolynomial3 operator-(const HomogeneousPolynomial3& a,
                                          const HomogeneousPolynomial3& b);
  // Product has declared degree = sum of declared degrees.
  friend HomogeneousPolynomial3 operator*(const HomogeneousPolynomial3& a,
                                          const HomogeneousPolynomial3& b);
  HomogeneousPolynomial3 scaled(const FieldElement& c) const;
  friend bool operator==(const HomogeneousPolynomial3& a,
                         const HomogeneousPolynomial3& b);
  friend bool operator!=(const HomogeneousPolynomial3& a,
                         const HomogeneousPolynomial3& b) {
    return !(a == b);
  }

  HomogeneousPolynomial3 derivative(Var v) const;

  // Largest k with Z^k dividing the polynomial (error on zero).
  int z_valuation() const;
  // Exact division by Z^k; throws DegreeLeakage if some term has Z-exponent
  // below k.
  HomogeneousPolynomial3 div_z_power(int k) const;

  // F(X, Y, 1).
  BivariatePolynomial dehomogenize() const;

  std::string str() const;

private:
  CoefficientField field_;
  int degree_;
  TermMap terms_;
};

// f#(X,Y,Z) = Z^d f(X/Z, Y/Z); requires d >= deg f.
HomogeneousPolynomial3 homogenize(const BivariatePolynomial& f, int d);

// --- Parsing (grammar shared by the CLI; see README) ---------------------
// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := base ('^' nat)? ; base := 'X' | 'Y' | 'Z' | rational | '(' expr ')'
// rational := int ('/' nat)? . Whitespace ignored, implicit multiplication
// rejected. Over F_p, a/b is read as a * b^-1 mod p.
BivariatePolynomial parse_bivariate(const std::string& text,
                                    const CoefficientField& k);

// Same expression grammar with variables X1..Xn; used by the Bertini
// reduction front end.
struct NVariatePolynomial {
  CoefficientField field;
  int nvars = 0;
  std::map<std::vector<int>, FieldElement> terms;

  std::optional<int> total_degree() const;
};

NVariatePolynomial parse_nvariate(const std::string& text,
                                  const CoefficientField& k, int nvars);

// --- GCD, division, squarefree decomposition -----------------------------

// Quotient when g divides f exactly (graded-lex leading-term division);
// empty optional otherwise. Doubles as the divisibility test.
std::optional<BivariatePolynomial> try_exact_divide(
    const BivariatePolynomial& f, const BivariatePolynomial& g);
BivariatePolynomial exact_divide(const BivariatePolynomial& f,
                                 const BivariatePolynomial& g);

// Primitive PRS over K[X][Y]; result is graded-lex monic, so gcds are unique
// and reproducible. Requires f, g not both zero.
BivariatePolynomial gcd_bivariate(const BivariatePolynomial& f,
                                  const BivariatePolynomial& g);
BivariatePolynomial gcd_bivariate(const BivariatePolynomial& f,
                                  const BivariatePolynomial& g,
                                  const BivariatePolynomial& h);

struct SquarefreeDecomposition {
  // f = constant * prod parts[i].first ^ parts[i].second, each part
  // squarefree, graded-lex monic, pairwise coprime, multiplicities
  // strictly increasing.
  FieldElement constant;
  std::vector<std::pair<BivariatePolynomial, int>> parts;

  BivariatePolynomial reconstruct(const CoefficientField& k) const;
};

// Yun-style cascade on gcd(f, f_X, f_Y); valid in characteristic 0 or
// > deg f (CharacteristicTooSmall otherwise). The reconstruction invariant
// is re-checked on every call.
SquarefreeDecomposition squarefree_decompose(const BivariatePolynomial& f);

}  // namespace pencils
