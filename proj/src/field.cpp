#include "pencils/field.hpp"

namespace pencils {

namespace {
constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 62);
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero in F_p");
  // Extended Euclid on signed 128-bit to dodge wraparound.
  __int128 t = 0, newt = 1;
  __int128 r = p, newr = a % p;
  while (newr != 0) {
    __int128 q = r / newr;
    __int128 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw DivisionByZero("element not invertible mod p");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set proven sufficient for all n < 3.3e24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

CoefficientField CoefficientField::prime_field(std::uint64_t p) {
  if (p >= kMaxPrime)
    throw UnsupportedPrime("p must be < 2^62, got " + std::to_string(p));
  if (!is_prime_u64(p))
    throw NotPrime(std::to_string(p) + " is not prime");
  return {FieldKind::PrimeField, p};
}

std::string CoefficientField::str() const {
  return is_rationals() ? "Q" : "F_" + std::to_string(characteristic);
}

FieldElement FieldElement::integer(const CoefficientField& k, long n) {
  if (k.is_rationals()) return FieldElement(k, mpq_class(n));
  std::uint64_t p = k.characteristic;
  long r = n % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return FieldElement(k, static_cast<std::uint64_t>(r));
}

FieldElement FieldElement::rational(mpq_class v) {
  v.canonicalize();
  return FieldElement(CoefficientField::rationals(), std::move(v));
}

FieldElement FieldElement::fraction(const CoefficientField& k,
                                    const mpz_class& num,
                                    const mpz_class& den) {
  if (den == 0) throw DivisionByZero("zero denominator");
  if (k.is_rationals()) {
    mpq_class v(num, den);
    v.canonicalize();
    return FieldElement(k, std::move(v));
  }
  mpz_class p(static_cast<unsigned long>(k.characteristic));
  mpz_class n = num % p, d = den % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  std::uint64_t nu = mpz_get_ui(n.get_mpz_t());
  std::uint64_t du = mpz_get_ui(d.get_mpz_t());
  if (du == 0)
    throw CoefficientNotInField("denominator divisible by " +
                                std::to_string(k.characteristic));
  return FieldElement(
      k, mulmod_u64(nu, invmod_u64(du, k.characteristic), k.characteristic));
}

FieldElement FieldElement::residue(const CoefficientField& k, std::uint64_t r) {
  if (!k.is_prime_field()) throw FieldMismatch("residue requires F_p");
  return FieldElement(k, r % k.characteristic);
}

bool FieldElement::is_zero() const {
  if (field_.is_rationals()) return std::get<mpq_class>(value_) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool FieldElement::is_one() const {
  if (field_.is_rationals()) return std::get<mpq_class>(value_) == 1;
  return std::get<std::uint64_t>(value_) == 1 % field_.characteristic;
}

const mpq_class& FieldElement::rational_value() const {
  if (!field_.is_rationals())
    throw FieldMismatch("rational_value on F_p element");
  return std::get<mpq_class>(value_);
}

std::uint64_t FieldElement::residue_value() const {
  if (!field_.is_prime_field())
    throw FieldMismatch("residue_value on rational element");
  return std::get<std::uint64_t>(value_);
}

void FieldElement::require_same_field(const FieldElement& a,
                                      const FieldElement& b) {
  if (!(a.field_ == b.field_))
    throw FieldMismatch(a.field_.str() + " vs " + b.field_.str());
}

FieldElement FieldElement::operator-() const {
  if (field_.is_rationals())
    return FieldElement(field_, mpq_class(-std::get<mpq_class>(value_)));
  std::uint64_t p = field_.characteristic;
  std::uint64_t r = std::get<std::uint64_t>(value_);
  return FieldElement(field_, r == 0 ? 0 : p - r);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (field_.is_rationals())
    return FieldElement(field_, mpq_class(1 / std::get<mpq_class>(value_)));
  return FieldElement(field_, invmod_u64(std::get<std::uint64_t>(value_),
                                         field_.characteristic));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement::require_same_field(a, b);
  if (a.field_.is_rationals())
    return FieldElement(a.field_, mpq_class(std::get<mpq_class>(a.value_) +
                                            std::get<mpq_class>(b.value_)));
  std::uint64_t p = a.field_.characteristic;
  std::uint64_t x = std::get<std::uint64_t>(a.value_);
  std::uint64_t y = std::get<std::uint64_t>(b.value_);
  std::uint64_t s = x + y;  // p < 2^62 so no overflow
  if (s >= p) s -= p;
  return FieldElement(a.field_, s);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return a + (-b);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement::require_same_field(a, b);
  if (a.field_.is_rationals())
    return FieldElement(a.field_, mpq_class(std::get<mpq_class>(a.value_) *
                                            std::get<mpq_class>(b.value_)));
  return FieldElement(a.field_,
                      mulmod_u64(std::get<std::uint64_t>(a.value_),
                                 std::get<std::uint64_t>(b.value_),
                                 a.field_.characteristic));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  FieldElement::require_same_field(a, b);
  if (b.is_zero()) throw DivisionByZero("division by zero");
  return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.value_ == b.value_;
}

std::string FieldElement::str() const {
  if (field_.is_rationals()) return rational_value().get_str();
  return std::to_string(residue_value());
}

}  // namespace pencils
