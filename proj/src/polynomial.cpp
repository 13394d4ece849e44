#include "pencils/polynomial.hpp"

#include "pencils/errors.hpp"

namespace pencils {

namespace {
void require_same_field(const CoefficientField& a, const CoefficientField& b) {
  if (!(a == b)) throw FieldMismatch(a.str() + " vs " + b.str());
}
}  // namespace

// ---------------------------------------------------------------------------
// BivariatePolynomial

BivariatePolynomial BivariatePolynomial::constant(FieldElement c) {
  BivariatePolynomial p(c.field());
  p.set_coeff({0, 0}, std::move(c));
  return p;
}

BivariatePolynomial BivariatePolynomial::monomial(const CoefficientField& k,
                                                  Exp2 e, FieldElement c) {
  BivariatePolynomial p(k);
  p.set_coeff(e, std::move(c));
  return p;
}

BivariatePolynomial BivariatePolynomial::variable(const CoefficientField& k,
                                                  Var v) {
  if (v == Var::Z) throw InternalError("Z is not a bivariate variable");
  Exp2 e = v == Var::X ? Exp2{1, 0} : Exp2{0, 1};
  return monomial(k, e, FieldElement::one(k));
}

bool BivariatePolynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Exp2{0, 0});
}

std::optional<int> BivariatePolynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.total();
}

int BivariatePolynomial::degree_x() const {
  if (terms_.empty()) throw ZeroPolynomial("degree_x of zero polynomial");
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.i);
  return d;
}

int BivariatePolynomial::degree_y() const {
  if (terms_.empty()) throw ZeroPolynomial("degree_y of zero polynomial");
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.j);
  return d;
}

FieldElement BivariatePolynomial::coeff(Exp2 e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

Exp2 BivariatePolynomial::leading_monomial() const {
  if (terms_.empty()) throw ZeroPolynomial("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

FieldElement BivariatePolynomial::leading_coefficient() const {
  if (terms_.empty()) throw ZeroPolynomial("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

void BivariatePolynomial::set_coeff(Exp2 e, FieldElement c) {
  require_same_field(field_, c.field());
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_.insert_or_assign(e, std::move(c));
}

BivariatePolynomial BivariatePolynomial::operator-() const {
  BivariatePolynomial r(field_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

BivariatePolynomial operator+(const BivariatePolynomial& a,
                              const BivariatePolynomial& b) {
  require_same_field(a.field_, b.field_);
  BivariatePolynomial r = a;
  for (const auto& [e, c] : b.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end()) {
      r.terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

BivariatePolynomial operator-(const BivariatePolynomial& a,
                              const BivariatePolynomial& b) {
  return a + (-b);
}

BivariatePolynomial operator*(const BivariatePolynomial& a,
                              const BivariatePolynomial& b) {
  require_same_field(a.field_, b.field_);
  BivariatePolynomial r(a.field_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exp2 e{ea.i + eb.i, ea.j + eb.j};
      FieldElement prod = ca * cb;
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        if (!prod.is_zero()) r.terms_.emplace(e, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

BivariatePolynomial BivariatePolynomial::scaled(const FieldElement& c) const {
  require_same_field(field_, c.field());
  BivariatePolynomial r(field_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

BivariatePolynomial BivariatePolynomial::pow(unsigned e) const {
  BivariatePolynomial r = constant(FieldElement::one(field_));
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_;
}

BivariatePolynomial BivariatePolynomial::derivative(Var v) const {
  if (v == Var::Z) throw InternalError("Z-derivative of bivariate polynomial");
  BivariatePolynomial r(field_);
  for (const auto& [e, c] : terms_) {
    int n = v == Var::X ? e.i : e.j;
    if (n == 0) continue;
    FieldElement nc = c * FieldElement::integer(field_, n);
    if (nc.is_zero()) continue;  // characteristic kills the exponent
    Exp2 d = v == Var::X ? Exp2{e.i - 1, e.j} : Exp2{e.i, e.j - 1};
    r.terms_.emplace(d, std::move(nc));
  }
  return r;
}

long long BivariatePolynomial::weighted_degree(long long a,
                                               long long b) const {
  if (terms_.empty()) throw ZeroPolynomial("weighted degree of zero");
  bool first = true;
  long long best = 0;
  for (const auto& [e, c] : terms_) {
    long long w = a * e.i + b * e.j;
    if (first || w > best) best = w;
    first = false;
  }
  return best;
}

BivariatePolynomial BivariatePolynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coefficient().inverse());
}

std::vector<Exp2> BivariatePolynomial::support() const {
  std::vector<Exp2> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

// ---------------------------------------------------------------------------
// HomogeneousPolynomial3

FieldElement HomogeneousPolynomial3::coeff(Exp3 e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

void HomogeneousPolynomial3::set_coeff(Exp3 e, FieldElement c) {
  require_same_field(field_, c.field());
  if (e.i + e.j + e.k != degree_)
    throw InternalError("exponent triple does not sum to declared degree");
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_.insert_or_assign(e, std::move(c));
}

HomogeneousPolynomial3 operator+(const HomogeneousPolynomial3& a,
                                 const HomogeneousPolynomial3& b) {
  require_same_field(a.field_, b.field_);
  if (a.degree_ != b.degree_)
    throw InternalError("adding homogeneous polynomials of unequal degree");
  HomogeneousPolynomial3 r = a;
  for (const auto& [e, c] : b.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end()) {
      r.terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

HomogeneousPolynomial3 operator-(const HomogeneousPolynomial3& a,
                                 const HomogeneousPolynomial3& b) {
  return a + b.scaled(-FieldElement::one(b.field_));
}

HomogeneousPolynomial3 operator*(const HomogeneousPolynomial3& a,
                                 const HomogeneousPolynomial3& b) {
  require_same_field(a.field_, b.field_);
  HomogeneousPolynomial3 r(a.field_, a.degree_ + b.degree_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exp3 e{ea.i + eb.i, ea.j + eb.j, ea.k + eb.k};
      FieldElement prod = ca * cb;
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        if (!prod.is_zero()) r.terms_.emplace(e, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

HomogeneousPolynomial3 HomogeneousPolynomial3::scaled(
    const FieldElement& c) const {
  require_same_field(field_, c.field());
  HomogeneousPolynomial3 r(field_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

bool operator==(const HomogeneousPolynomial3& a,
                const HomogeneousPolynomial3& b) {
  return a.field_ == b.field_ && a.degree_ == b.degree_ &&
         a.terms_ == b.terms_;
}

HomogeneousPolynomial3 HomogeneousPolynomial3::derivative(Var v) const {
  HomogeneousPolynomial3 r(field_, degree_ > 0 ? degree_ - 1 : 0);
  for (const auto& [e, c] : terms_) {
    int n = v == Var::X ? e.i : (v == Var::Y ? e.j : e.k);
    if (n == 0) continue;
    FieldElement nc = c * FieldElement::integer(field_, n);
    if (nc.is_zero()) continue;
    Exp3 d = e;
    (v == Var::X ? d.i : (v == Var::Y ? d.j : d.k)) -= 1;
    r.terms_.emplace(d, std::move(nc));
  }
  return r;
}

int HomogeneousPolynomial3::z_valuation() const {
  if (terms_.empty()) throw ZeroPolynomial("z_valuation of zero polynomial");
  int v = degree_;
  for (const auto& [e, c] : terms_) v = std::min(v, e.k);
  return v;
}

HomogeneousPolynomial3 HomogeneousPolynomial3::div_z_power(int k) const {
  HomogeneousPolynomial3 r(field_, degree_ - k);
  for (const auto& [e, c] : terms_) {
    if (e.k < k)
      throw DegreeLeakage("term not divisible by Z^" + std::to_string(k));
    r.terms_.emplace(Exp3{e.i, e.j, e.k - k}, c);
  }
  return r;
}

BivariatePolynomial HomogeneousPolynomial3::dehomogenize() const {
  BivariatePolynomial r(field_);
  for (const auto& [e, c] : terms_) r.set_coeff({e.i, e.j}, c);
  return r;
}

HomogeneousPolynomial3 homogenize(const BivariatePolynomial& f, int d) {
  auto deg = f.total_degree();
  if (deg && *deg > d)
    throw DegreeTooSmall("homogenize: d=" + std::to_string(d) + " < deg f=" +
                         std::to_string(*deg));
  HomogeneousPolynomial3 r(f.field(), d);
  for (const auto& [e, c] : f.terms())
    r.set_coeff({e.i, e.j, d - e.i - e.j}, c);
  return r;
}

std::optional<int> NVariatePolynomial::total_degree() const {
  std::optional<int> best;
  for (const auto& [e, c] : terms) {
    int t = 0;
    for (int x : e) t += x;
    if (!best || t > *best) best = t;
  }
  return best;
}

}  // namespace pencils
