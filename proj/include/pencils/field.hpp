#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "pencils/errors.hpp"

namespace pencils {

enum class FieldKind { Rationals, PrimeField };

// Exact coefficient domain: the rationals, or F_p for a verified prime p.
// Primes must fit in a machine word below 2^62 so that products reduce with
// 128-bit intermediates.
struct CoefficientField {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t characteristic = 0;  // 0 for Q, p for F_p

  static CoefficientField rationals() { return {FieldKind::Rationals, 0}; }
  static CoefficientField prime_field(std::uint64_t p);

  bool is_rationals() const { return kind == FieldKind::Rationals; }
  bool is_prime_field() const { return kind == FieldKind::PrimeField; }
  bool operator==(const CoefficientField&) const = default;

  std::string str() const;
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p);

// Immutable exact scalar: a rational in lowest terms with positive
// denominator, or a residue in [0, p). All operations are pure; values are
// safe to share across threads.
class FieldElement {
public:
  FieldElement() : field_(CoefficientField::rationals()), value_(mpq_class(0)) {}

  static FieldElement zero(const CoefficientField& k) { return integer(k, 0); }
  static FieldElement one(const CoefficientField& k) { return integer(k, 1); }
  static FieldElement integer(const CoefficientField& k, long n);
  static FieldElement rational(mpq_class v);
  // a/b interpreted in k: exact fraction over Q, a * b^-1 over F_p.
  static FieldElement fraction(const CoefficientField& k, const mpz_class& num,
                               const mpz_class& den);
  static FieldElement residue(const CoefficientField& k, std::uint64_t r);

  const CoefficientField& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational_value() const;
  std::uint64_t residue_value() const;

  FieldElement operator-() const;
  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  std::string str() const;

private:
  FieldElement(CoefficientField k, mpq_class v)
      : field_(k), value_(std::move(v)) {}
  FieldElement(CoefficientField k, std::uint64_t r) : field_(k), value_(r) {}

  static void require_same_field(const FieldElement& a, const FieldElement& b);

  CoefficientField field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

}  // namespace pencils
