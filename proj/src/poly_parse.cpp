#include <cctype>
#include <sstream>

#include "pencils/errors.hpp"
#include "pencils/polynomial.hpp"

namespace pencils {

namespace {

// The parser works over exponent vectors so the bivariate front end and the
// n-variate Bertini front end share one grammar implementation.
using PTerms = std::map<std::vector<int>, FieldElement>;

struct PVal {
  PTerms t;
};

constexpr unsigned kMaxExponent = 4096;

PVal padd(const PVal& a, const PVal& b) {
  PVal r = a;
  for (const auto& [e, c] : b.t) {
    auto it = r.t.find(e);
    if (it == r.t.end()) {
      r.t.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.t.erase(it);
    }
  }
  return r;
}

PVal pneg(const PVal& a) {
  PVal r;
  for (const auto& [e, c] : a.t) r.t.emplace(e, -c);
  return r;
}

PVal pmul(const PVal& a, const PVal& b) {
  PVal r;
  for (const auto& [ea, ca] : a.t) {
    for (const auto& [eb, cb] : b.t) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      FieldElement prod = ca * cb;
      if (prod.is_zero()) continue;
      auto it = r.t.find(e);
      if (it == r.t.end()) {
        r.t.emplace(std::move(e), std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.t.erase(it);
      }
    }
  }
  return r;
}

class Parser {
public:
  Parser(const std::string& text, const CoefficientField& k, int nvars,
         bool xyz_names)
      : text_(text), k_(k), nvars_(nvars), xyz_(xyz_names) {}

  PVal parse() {
    PVal v = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError(pos_, "unexpected character '" +
                                  std::string(1, text_[pos_]) + "'");
    return v;
  }

  std::size_t z_position() const { return z_pos_; }
  bool z_used() const { return z_used_; }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(
               static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  PVal expr() {
    skip_ws();
    bool neg = false;
    if (peek_is('-')) {
      neg = true;
      ++pos_;
    } else if (peek_is('+')) {
      ++pos_;
    }
    PVal v = term();
    if (neg) v = pneg(v);
    for (;;) {
      skip_ws();
      if (peek_is('+')) {
        ++pos_;
        v = padd(v, term());
      } else if (peek_is('-')) {
        ++pos_;
        v = padd(v, pneg(term()));
      } else {
        return v;
      }
    }
  }

  PVal term() {
    PVal v = factor();
    while (peek_is('*')) {
      ++pos_;
      v = pmul(v, factor());
    }
    return v;
  }

  PVal factor() {
    PVal b = base();
    if (peek_is('^')) {
      ++pos_;
      unsigned e = parse_nat();
      PVal r = constant(FieldElement::one(k_));
      for (unsigned i = 0; i < e; ++i) r = pmul(r, b);
      return r;
    }
    return b;
  }

  PVal base() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PVal v = expr();
      expect(')');
      return v;
    }
    if (c == 'X' || c == 'Y' || c == 'Z') return variable();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return rational();
    throw SyntaxError(pos_, "unexpected character '" + std::string(1, c) + "'");
  }

  PVal variable() {
    std::size_t at = pos_;
    char c = text_[pos_++];
    int index;
    if (xyz_) {
      index = c == 'X' ? 0 : (c == 'Y' ? 1 : 2);
      if (c == 'Z') {
        z_used_ = true;
        if (z_pos_ == std::string::npos) z_pos_ = at;
      }
    } else {
      if (c != 'X')
        throw SyntaxError(at, "variables are X1.." + var_name(nvars_));
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw SyntaxError(pos_, "expected variable index after X");
      unsigned n = parse_nat();
      if (n < 1 || static_cast<int>(n) > nvars_)
        throw SyntaxError(at, "variable index out of range 1.." +
                                  std::to_string(nvars_));
      index = static_cast<int>(n) - 1;
    }
    PVal v;
    std::vector<int> e(static_cast<std::size_t>(nvars_), 0);
    e[static_cast<std::size_t>(index)] = 1;
    v.t.emplace(std::move(e), FieldElement::one(k_));
    return v;
  }

  PVal rational() {
    skip_ws();
    std::size_t at = pos_;
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    mpz_class num = parse_digits(at);
    if (neg) num = -num;
    mpz_class den = 1;
    if (peek_is('/')) {
      ++pos_;
      skip_ws();
      std::size_t dat = pos_;
      den = parse_digits(dat);
      if (den == 0) throw SyntaxError(dat, "zero denominator");
    }
    return constant(FieldElement::fraction(k_, num, den));
  }

  mpz_class parse_digits(std::size_t at) {
    skip_ws();
    std::string digits;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    if (digits.empty()) throw SyntaxError(at, "expected digits");
    return mpz_class(digits);
  }

  unsigned parse_nat() {
    skip_ws();
    std::size_t at = pos_;
    mpz_class n = parse_digits(at);
    if (n > kMaxExponent)
      throw SyntaxError(at, "exponent larger than " +
                                std::to_string(kMaxExponent));
    return static_cast<unsigned>(n.get_ui());
  }

  PVal constant(FieldElement c) {
    PVal v;
    if (!c.is_zero())
      v.t.emplace(std::vector<int>(static_cast<std::size_t>(nvars_), 0),
                  std::move(c));
    return v;
  }

  static std::string var_name(int n) { return "X" + std::to_string(n); }

  const std::string& text_;
  CoefficientField k_;
  int nvars_;
  bool xyz_;
  std::size_t pos_ = 0;
  bool z_used_ = false;
  std::size_t z_pos_ = std::string::npos;
};

}  // namespace

BivariatePolynomial parse_bivariate(const std::string& text,
                                    const CoefficientField& k) {
  Parser p(text, k, 3, /*xyz_names=*/true);
  PVal v = p.parse();
  if (p.z_used())
    throw SyntaxError(p.z_position(), "variable Z not allowed here");
  BivariatePolynomial r(k);
  for (const auto& [e, c] : v.t) r.set_coeff({e[0], e[1]}, c);
  return r;
}

NVariatePolynomial parse_nvariate(const std::string& text,
                                  const CoefficientField& k, int nvars) {
  if (nvars < 1) throw InternalError("nvars must be >= 1");
  Parser p(text, k, nvars, /*xyz_names=*/false);
  PVal v = p.parse();
  NVariatePolynomial r;
  r.field = k;
  r.nvars = nvars;
  r.terms = std::move(v.t);
  return r;
}

// ---------------------------------------------------------------------------
// Printing: descending graded-lex, grammar-conforming output.

namespace {

void append_power(std::ostream& os, const char* var, int e, bool& star) {
  if (e == 0) return;
  if (star) os << "*";
  os << var;
  if (e > 1) os << "^" << e;
  star = true;
}

// Rational coefficients may be negative; residues never are. The caller
// already emitted the sign for rationals.
std::string coeff_abs_str(const FieldElement& c) {
  if (c.field().is_rationals()) {
    mpq_class v = c.rational_value();
    if (v < 0) v = -v;
    return v.get_str();
  }
  return std::to_string(c.residue_value());
}

bool coeff_negative(const FieldElement& c) {
  return c.field().is_rationals() && c.rational_value() < 0;
}

template <typename TermMap, typename MonomialPrinter>
std::string poly_str(const TermMap& terms, MonomialPrinter print_monomial) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    bool neg = coeff_negative(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::ostringstream mono;
    bool star = false;
    print_monomial(mono, e, star);
    std::string abs = coeff_abs_str(c);
    if (!star) {
      os << abs;
    } else if (abs == "1") {
      os << mono.str();
    } else {
      os << abs << "*" << mono.str();
    }
  }
  return os.str();
}

}  // namespace

std::string BivariatePolynomial::str() const {
  return poly_str(terms_, [](std::ostream& os, const Exp2& e, bool& star) {
    append_power(os, "X", e.i, star);
    append_power(os, "Y", e.j, star);
  });
}

std::string HomogeneousPolynomial3::str() const {
  return poly_str(terms_, [](std::ostream& os, const Exp3& e, bool& star) {
    append_power(os, "X", e.i, star);
    append_power(os, "Y", e.j, star);
    append_power(os, "Z", e.k, star);
  });
}

}  // namespace pencils
