#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "pencils/errors.hpp"
#include "pencils/matrix.hpp"
#include "pencils/spectrum.hpp"

namespace pencils {

// ---------------------------------------------------------------------------
// BinaryForm

bool BinaryForm::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

FieldElement BinaryForm::evaluate(const FieldElement& u,
                                  const FieldElement& v) const {
  FieldElement acc = FieldElement::zero(field);
  FieldElement upow = FieldElement::one(field);
  std::vector<FieldElement> us;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    us.push_back(upow);
    upow = upow * u;
  }
  FieldElement vpow = FieldElement::one(field);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc += coeffs[i] * us[i] * vpow;
    vpow = vpow * v;
  }
  return acc;
}

std::string BinaryForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs[i].str() << ")";
    if (i > 0) os << "*U^" << i;
    std::size_t vexp = coeffs.size() - 1 - i;
    if (vexp > 0) os << "*V^" << vexp;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// --- small univariate toolbox over FieldElement coefficient vectors -------

using UPoly = std::vector<FieldElement>;  // low to high, trimmed

UPoly trim(UPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly umonic(UPoly p) {
  if (p.empty()) return p;
  FieldElement inv = p.back().inverse();
  for (auto& c : p) c = c * inv;
  return p;
}

UPoly urem(UPoly a, const UPoly& b) {
  // remainder of a by b (b nonzero)
  while (udeg(a) >= udeg(b)) {
    FieldElement q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] -= q * b[i];
    }
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    UPoly r = urem(std::move(a), b);
    a = std::move(b);
    b = umonic(trim(std::move(r)));
  }
  return umonic(std::move(a));
}

FieldElement ueval(const UPoly& p, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.field());
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// --- binary form <-> (V-valuation, mu-polynomial) --------------------------

UPoly form_mu_poly(const BinaryForm& f) { return trim(f.coeffs); }

BinaryForm form_normalize(BinaryForm f) {
  UPoly p = form_mu_poly(f);
  if (p.empty()) return f;
  FieldElement inv = p.back().inverse();
  for (auto& c : f.coeffs) c = c * inv;
  return f;
}

BinaryForm form_gcd(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero()) return form_normalize(b);
  if (b.is_zero()) return form_normalize(a);
  UPoly pa = form_mu_poly(a), pb = form_mu_poly(b);
  int va = a.degree() - udeg(pa);
  int vb = b.degree() - udeg(pb);
  UPoly g = ugcd(pa, pb);
  int vv = std::min(va, vb);
  BinaryForm out{a.field, {}};
  out.coeffs = g;
  out.coeffs.resize(g.size() + static_cast<std::size_t>(vv),
                    FieldElement::zero(a.field));
  // coefficients are indexed by the U-power, so the V^vv factor only pads
  // the declared degree
  return out;
}

bool form_equal(const BinaryForm& a, const BinaryForm& b) {
  return a.degree() == b.degree() && a.coeffs == b.coeffs;
}

// --- helpers for the compression loop --------------------------------------

FieldElement random_compression_entry(const CoefficientField& k,
                                      std::mt19937_64& rng) {
  if (k.is_rationals()) {
    std::uniform_int_distribution<long> d(-9, 9);
    return FieldElement::integer(k, d(rng));
  }
  std::uniform_int_distribution<std::uint64_t> d(0, k.characteristic - 1);
  return FieldElement::residue(k, d(rng));
}

FieldMat mat_mul(const FieldMat& a, const FieldMat& b) {
  FieldMat r(a.rows(), b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      if (a.at(i, t).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.at(t, j).is_zero()) continue;
        r.at(i, j) += a.at(i, t) * b.at(t, j);
      }
    }
  return r;
}

// Exact interpolation through (xs[i], ys[i]): full product followed by
// synthetic division per node.
UPoly lagrange(const std::vector<FieldElement>& xs,
               const std::vector<FieldElement>& ys,
               const CoefficientField& k) {
  std::size_t n = xs.size();
  UPoly master{FieldElement::one(k)};  // prod (x - x_i)
  for (std::size_t i = 0; i < n; ++i) {
    UPoly next(master.size() + 1, FieldElement::zero(k));
    for (std::size_t j = 0; j < master.size(); ++j) {
      next[j + 1] += master[j];
      next[j] -= master[j] * xs[i];
    }
    master = std::move(next);
  }

  UPoly acc(n, FieldElement::zero(k));
  for (std::size_t i = 0; i < n; ++i) {
    // q = master / (x - xs[i]) by synthetic division
    UPoly q(n, FieldElement::zero(k));
    FieldElement carry = FieldElement::zero(k);
    for (std::size_t j = master.size(); j-- > 1;) {
      carry = master[j] + carry * xs[i];
      q[j - 1] = carry;
    }
    FieldElement denom = ueval(q, xs[i]);
    FieldElement w = ys[i] / denom;
    for (std::size_t j = 0; j < n; ++j) acc[j] += q[j] * w;
  }
  return acc;
}

}  // namespace

BinaryForm spect_polynomial(const Pencil& pencil, std::uint64_t seed) {
  const CoefficientField& k = pencil.field();
  int d = pencil.degree();
  int D = d * d - 1;
  if (k.is_prime_field() &&
      k.characteristic <= static_cast<std::uint64_t>(d) * d)
    throw InsufficientSamplePoints("need p > d^2 = " + std::to_string(d * d));

  RuppertMatrix A = build_matrix_R_hom(pencil.f_sharp());
  RuppertMatrix B = build_matrix_R_hom(pencil.g_sharp());
  std::size_t rows = A.entries().rows();
  std::size_t cols = A.entries().cols();
  if (cols != static_cast<std::size_t>(D))
    throw InternalError("pencil matrix has wrong column count");

  std::mt19937_64 rng(seed);

  // Spect is identically zero iff no member has full column rank, i.e. f/g
  // is composite (the reduced case is excluded at pencil construction).
  bool has_full_rank_member = false;
  for (int probe = 0; probe < 12 && !has_full_rank_member; ++probe) {
    FieldElement mu(FieldElement::zero(k)), lambda(FieldElement::zero(k));
    if (probe == 0) {
      mu = FieldElement::one(k);
    } else if (probe == 1) {
      lambda = FieldElement::one(k);
    } else {
      mu = random_compression_entry(k, rng);
      lambda = FieldElement::one(k);
    }
    RuppertMatrix M = RuppertMatrix::linear_combination(mu, A, lambda, B);
    if (M.entries().rank() == cols) has_full_rank_member = true;
  }
  if (!has_full_rank_member)
    throw CompositeOrNonReduced(
        "every probed member is rank-deficient: Spect vanishes identically "
        "(f/g composite)");

  std::vector<FieldElement> xs;
  for (int t = 0; t <= D; ++t) xs.push_back(FieldElement::integer(k, t));

  BinaryForm current{k, {}};
  bool have_current = false;
  int stable = 0;
  for (int draw = 0; draw < 32 && stable < 3; ++draw) {
    FieldMat C(cols, rows, k);
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < rows; ++j)
        C.at(i, j) = random_compression_entry(k, rng);
    FieldMat CA = mat_mul(C, A.entries());
    FieldMat CB = mat_mul(C, B.entries());

    // det(mu CA + CB) at the d^2 finite samples, plus det(CA) = c_D at
    // (1:0).
    std::vector<FieldElement> ys;
    bool all_zero = true;
    for (const FieldElement& x : xs) {
      FieldMat M(cols, cols, k);
      for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          M.at(i, j) = x * CA.at(i, j) + CB.at(i, j);
      FieldElement det = M.det();
      if (!det.is_zero()) all_zero = false;
      ys.push_back(std::move(det));
    }
    FieldElement top = CA.det();
    if (all_zero && top.is_zero()) continue;  // unlucky compression

    UPoly coeffs = lagrange(xs, ys, k);
    if (coeffs.size() != static_cast<std::size_t>(D + 1))
      throw InternalError("interpolation size mismatch");
    if (!(coeffs.back() == top))
      throw InternalError("(1:0) sample disagrees with interpolation");

    BinaryForm form{k, coeffs};
    form = form_normalize(std::move(form));
    if (!have_current) {
      current = std::move(form);
      have_current = true;
      stable = 0;
    } else {
      BinaryForm g = form_gcd(current, form);
      if (form_equal(g, current)) {
        ++stable;
      } else {
        current = std::move(g);
        stable = 0;
      }
    }
  }
  return current;
}

// ---------------------------------------------------------------------------
// Root extraction

namespace detail {

namespace {

// Dense monic-ish arithmetic over F_p on u64 vectors, low to high.
using ModPoly = std::vector<std::uint64_t>;

ModPoly mp_trim(ModPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ModPoly mp_rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
  std::uint64_t inv = invmod_u64(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t q = mulmod_u64(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    if (q != 0)
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t s = mulmod_u64(q, b[i], p);
        a[shift + i] = (a[shift + i] + p - s) % p;
      }
    a.pop_back();
    a = mp_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& s,
                  std::uint64_t p) {
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] +
                  static_cast<unsigned __int128>(a[i]) * b[j] % p) %
                 p;
    }
  }
  return mp_rem(mp_trim(std::move(r)), s, p);
}

ModPoly mp_powmod(ModPoly base, std::uint64_t e, const ModPoly& s,
                  std::uint64_t p) {
  ModPoly r{1};
  base = mp_rem(std::move(base), s, p);
  while (e) {
    if (base.empty()) return e ? ModPoly{} : r;
    if (e & 1) r = mp_mulmod(r, base, s, p);
    e >>= 1;
    if (e) base = mp_mulmod(base, base, s, p);
  }
  return r;
}

ModPoly mp_monic(ModPoly a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t inv = invmod_u64(a.back(), p);
  if (inv != 1)
    for (auto& c : a) c = mulmod_u64(c, inv, p);
  return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  a = mp_trim(std::move(a));
  b = mp_trim(std::move(b));
  while (!b.empty()) {
    ModPoly r = mp_rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(std::move(a), p);
}

ModPoly mp_divexact(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  // a = q*b exactly
  ModPoly r = a, q(a.size() - b.size() + 1, 0);
  std::uint64_t inv = invmod_u64(b.back(), p);
  for (std::size_t step = q.size(); step-- > 0;) {
    if (r.size() < b.size() + step) continue;
    std::uint64_t c = mulmod_u64(r[b.size() - 1 + step], inv, p);
    q[step] = c;
    if (c != 0)
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t s = mulmod_u64(c, b[i], p);
        r[step + i] = (r[step + i] + p - s) % p;
      }
  }
  return mp_trim(std::move(q));
}

void split_linear_product(const ModPoly& g, std::uint64_t p,
                          std::mt19937_64& rng,
                          std::vector<std::uint64_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    // monic X + c -> root p - c
    out.push_back(g[0] == 0 ? 0 : p - g[0]);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
  for (;;) {
    std::uint64_t shift = d(rng);
    // gcd((X + shift)^((p-1)/2) - 1, g) splits the roots in two
    ModPoly base{shift, 1};
    ModPoly h = mp_powmod(base, (p - 1) / 2, g, p);
    if (h.empty())
      h = ModPoly{p - 1};
    else
      h[0] = (h[0] + p - 1) % p;
    ModPoly q = mp_gcd(mp_trim(std::move(h)), g, p);
    if (q.size() > 1 && q.size() < g.size()) {
      split_linear_product(q, p, rng, out);
      split_linear_product(mp_divexact(g, q, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> roots_mod_p(const std::vector<std::uint64_t>& poly,
                                       std::uint64_t p, std::uint64_t seed) {
  ModPoly s = mp_monic(mp_trim(poly), p);
  if (s.size() <= 1) return {};
  std::vector<std::uint64_t> roots;
  if (s[0] == 0) {
    roots.push_back(0);
    std::size_t v = 0;
    while (v < s.size() && s[v] == 0) ++v;
    s.erase(s.begin(), s.begin() + static_cast<long>(v));
  }
  if (s.size() <= 1) return roots;
  // product of the distinct linear factors: gcd(X^p - X, s)
  ModPoly xp = mp_powmod(ModPoly{0, 1}, p, s, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] + p - 1) % p;  // X^p - X mod s
  ModPoly lin = mp_gcd(mp_trim(std::move(xp)), s, p);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  split_linear_product(lin, p, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Wang rational reconstruction of r mod P with |num|, den <= sqrt(P/2).
std::optional<mpq_class> rational_reconstruct(std::uint64_t r,
                                              std::uint64_t P) {
  // largest b with 2 b^2 <= P
  __int128 half = static_cast<__int128>(P / 2);
  std::uint64_t bound =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(P / 2)));
  while (static_cast<__int128>(bound) * bound > half) --bound;
  while (static_cast<__int128>(bound + 1) * (bound + 1) <= half) ++bound;
  if (bound < 1) return std::nullopt;

  __int128 r0 = static_cast<__int128>(P), t0 = 0;
  __int128 r1 = static_cast<__int128>(r), t1 = 1;
  while (r1 > static_cast<__int128>(bound)) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  __int128 num = r1, den = t1;
  if (den == 0) return std::nullopt;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > static_cast<__int128>(bound)) return std::nullopt;
  mpq_class q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

}  // namespace

RootExtraction extract_roots(const BinaryForm& form, std::uint64_t seed) {
  RootExtraction out;
  const CoefficientField& k = form.field;
  UPoly s = trim(form.coeffs);
  if (s.empty()) return out;
  out.infinity_multiplicity = form.degree() - udeg(s);

  if (udeg(s) == 0) return out;

  // Squarefree split of the mu-polynomial via the bivariate machinery
  // (characteristic exceeds the degree: p > d^2 > deg Spect).
  BivariatePolynomial sx(k);
  for (std::size_t i = 0; i < s.size(); ++i)
    sx.set_coeff({static_cast<int>(i), 0}, s[i]);
  SquarefreeDecomposition sq = squarefree_decompose(sx);

  for (const auto& [part, mult] : sq.parts) {
    int deg = *part.total_degree();
    UPoly pk(static_cast<std::size_t>(deg) + 1, FieldElement::zero(k));
    for (const auto& [e, c] : part.terms()) pk[static_cast<std::size_t>(e.i)] = c;

    int extracted = 0;
    if (k.is_prime_field()) {
      std::vector<std::uint64_t> coeffs;
      for (const auto& c : pk) coeffs.push_back(c.residue_value());
      for (std::uint64_t r : roots_mod_p(coeffs, k.characteristic, seed)) {
        out.finite_roots.emplace_back(FieldElement::residue(k, r), mult);
        ++extracted;
      }
    } else {
      // Scale to integer coefficients, find roots modulo a 61-bit prime,
      // reconstruct, then verify exactly over Q. Anything that fails
      // verification stays in the unextracted block.
      const std::uint64_t P = (std::uint64_t{1} << 61) - 1;
      mpz_class lcm = 1;
      for (const auto& c : pk)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                c.rational_value().get_den().get_mpz_t());
      std::vector<std::uint64_t> coeffs;
      bool lc_vanishes = false;
      for (const auto& c : pk) {
        mpq_class v = c.rational_value() * mpq_class(lcm);
        mpz_class n = v.get_num() % mpz_class(static_cast<unsigned long>(P));
        if (n < 0) n += mpz_class(static_cast<unsigned long>(P));
        coeffs.push_back(mpz_get_ui(n.get_mpz_t()));
      }
      if (coeffs.back() == 0) lc_vanishes = true;
      if (!lc_vanishes) {
        for (std::uint64_t r : roots_mod_p(coeffs, P, seed)) {
          auto cand = rational_reconstruct(r, P);
          if (!cand) continue;
          FieldElement mu = FieldElement::rational(*cand);
          if (ueval(pk, mu).is_zero()) {
            out.finite_roots.emplace_back(std::move(mu), mult);
            ++extracted;
          }
        }
      }
    }
    if (deg - extracted > 0)
      out.nonrational_blocks.emplace_back(deg - extracted, mult);
  }
  std::sort(out.finite_roots.begin(), out.finite_roots.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first.str() < b.first.str();
            });
  return out;
}

}  // namespace detail

}  // namespace pencils
