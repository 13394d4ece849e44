#include "pencils/matrix.hpp"

#include <algorithm>

#include "pencils/errors.hpp"
#include "pencils/fp_kernels.hpp"

namespace pencils {

// ---------------------------------------------------------------------------
// FpMat

std::vector<std::size_t> FpMat::rref_in_place() {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols_ && prow < rows_; ++col) {
    std::size_t sel = prow;
    while (sel < rows_ && at(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != prow)
      std::swap_ranges(&a_[sel * cols_], &a_[sel * cols_] + cols_,
                       &a_[prow * cols_]);
    std::uint64_t inv = invmod_u64(at(prow, col), p_);
    if (inv != 1) fpk::row_scale(&a_[prow * cols_], cols_, inv, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == prow) continue;
      std::uint64_t v = at(i, col);
      if (v == 0) continue;
      fpk::row_addmul(&a_[i * cols_], &a_[prow * cols_], cols_, p_ - v, p_);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

std::size_t FpMat::rank() const {
  FpMat tmp(*this);
  return tmp.rref_in_place().size();
}

std::vector<std::vector<std::uint64_t>> FpMat::kernel_basis() const {
  FpMat m(*this);
  std::vector<std::size_t> pivots = m.rref_in_place();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (is_pivot[j]) continue;
    std::vector<std::uint64_t> v(cols_, 0);
    v[j] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      std::uint64_t c = m.at(k, j);
      v[pivots[k]] = c == 0 ? 0 : p_ - c;
    }
    // First nonzero entry is 1 already: entries before j sit in pivot
    // columns of earlier rref rows, but normalize anyway for determinism.
    for (std::size_t t = 0; t < cols_; ++t) {
      if (v[t] != 0) {
        if (v[t] != 1) {
          std::uint64_t inv = invmod_u64(v[t], p_);
          fpk::row_scale(v.data(), cols_, inv, p_);
        }
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::uint64_t FpMat::det() const {
  if (rows_ != cols_) throw InternalError("det on non-square FpMat");
  FpMat m(*this);
  std::uint64_t det = 1 % p_;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t sel = prow;
    while (sel < rows_ && m.at(sel, col) == 0) ++sel;
    if (sel == rows_) return 0;
    if (sel != prow) {
      std::swap_ranges(&m.a_[sel * cols_], &m.a_[sel * cols_] + cols_,
                       &m.a_[prow * cols_]);
      det = det == 0 ? 0 : p_ - det;  // sign flip
    }
    std::uint64_t piv = m.at(prow, col);
    det = mulmod_u64(det, piv, p_);
    std::uint64_t inv = invmod_u64(piv, p_);
    for (std::size_t i = prow + 1; i < rows_; ++i) {
      std::uint64_t v = m.at(i, col);
      if (v == 0) continue;
      std::uint64_t q = p_ - mulmod_u64(v, inv, p_);
      fpk::row_addmul(&m.a_[i * cols_], &m.a_[prow * cols_], cols_, q, p_);
    }
    ++prow;
  }
  return det;
}

// ---------------------------------------------------------------------------
// QMat

namespace {

struct IntEchelon {
  std::vector<mpz_class> a;  // row-major, rows x cols
  std::size_t rows, cols;
  std::vector<std::size_t> pivot_cols;
  int sign = 1;
  mpz_class last_pivot = 1;

  mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

// Clear denominators rowwise, then fraction-free (Bareiss) elimination with
// first-nonzero pivoting. Row scaling does not change the row space or the
// nullspace.
IntEchelon bareiss(std::size_t rows, std::size_t cols,
                   const mpq_class* data) {
  IntEchelon e;
  e.rows = rows;
  e.cols = cols;
  e.a.resize(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
              data[i * cols + j].get_den().get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class v = data[i * cols + j] * lcm;
      e.at(i, j) = v.get_num();
    }
  }

  mpz_class prev = 1;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols && prow < rows; ++col) {
    std::size_t sel = prow;
    while (sel < rows && e.at(sel, col) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != prow) {
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(e.at(sel, j), e.at(prow, j));
      e.sign = -e.sign;
    }
    const mpz_class piv = e.at(prow, col);
    for (std::size_t i = prow + 1; i < rows; ++i) {
      const mpz_class head = e.at(i, col);
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class t = piv * e.at(i, j) - head * e.at(prow, j);
        mpz_divexact(e.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      e.at(i, col) = 0;
    }
    prev = piv;
    e.pivot_cols.push_back(col);
    ++prow;
  }
  e.last_pivot = prev;
  return e;
}

}  // namespace

std::size_t QMat::rank() const {
  IntEchelon e = bareiss(rows_, cols_, a_.data());
  return e.pivot_cols.size();
}

std::vector<std::vector<mpq_class>> QMat::kernel_basis() const {
  IntEchelon e = bareiss(rows_, cols_, a_.data());
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<mpq_class>> basis;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (is_pivot[j]) continue;
    std::vector<mpq_class> v(cols_, mpq_class(0));
    v[j] = 1;
    // Back-substitute through the echelon rows.
    for (std::size_t kk = e.pivot_cols.size(); kk-- > 0;) {
      std::size_t pc = e.pivot_cols[kk];
      mpq_class s = 0;
      for (std::size_t t = pc + 1; t < cols_; ++t)
        if (v[t] != 0) s += mpq_class(e.at(kk, t)) * v[t];
      v[pc] = -s / mpq_class(e.at(kk, pc));
    }
    // Normalize to a primitive integer vector, first nonzero positive.
    mpz_class lcm = 1;
    for (const mpq_class& x : v)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class content = 0;
    for (mpq_class& x : v) {
      x *= lcm;
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
              x.get_num().get_mpz_t());
    }
    if (content != 0) {
      for (mpq_class& x : v) x /= mpq_class(content);
    }
    for (const mpq_class& x : v) {
      if (x != 0) {
        if (x < 0)
          for (mpq_class& y : v) y = -y;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

mpq_class QMat::det() const {
  if (rows_ != cols_) throw InternalError("det on non-square QMat");
  // Track the rowwise denominator clearing so the exact determinant of the
  // original matrix comes back.
  mpq_class scale = 1;
  for (std::size_t i = 0; i < rows_; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols_; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
              at(i, j).get_den().get_mpz_t());
    scale *= mpq_class(lcm);
  }
  IntEchelon e = bareiss(rows_, cols_, a_.data());
  if (e.pivot_cols.size() < cols_) return 0;
  // In Bareiss form the last pivot IS the determinant of the integer matrix.
  mpq_class d(e.last_pivot);
  if (e.sign < 0) d = -d;
  return d / scale;
}

// ---------------------------------------------------------------------------
// FieldMat

FieldMat::FieldMat(std::size_t rows, std::size_t cols,
                   const CoefficientField& k)
    : rows_(rows), cols_(cols), field_(k),
      a_(rows * cols, FieldElement::zero(k)) {}

FpMat FieldMat::to_fp() const {
  FpMat m(rows_, cols_, field_.characteristic);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m.at(i, j) = at(i, j).residue_value();
  return m;
}

QMat FieldMat::to_q() const {
  QMat m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m.at(i, j) = at(i, j).rational_value();
  return m;
}

std::size_t FieldMat::rank() const {
  return field_.is_rationals() ? to_q().rank() : to_fp().rank();
}

std::vector<std::vector<FieldElement>> FieldMat::kernel_basis() const {
  std::vector<std::vector<FieldElement>> out;
  if (field_.is_rationals()) {
    for (auto& v : to_q().kernel_basis()) {
      std::vector<FieldElement> w;
      w.reserve(v.size());
      for (auto& x : v) w.push_back(FieldElement::rational(std::move(x)));
      out.push_back(std::move(w));
    }
  } else {
    for (auto& v : to_fp().kernel_basis()) {
      std::vector<FieldElement> w;
      w.reserve(v.size());
      for (std::uint64_t x : v) w.push_back(FieldElement::residue(field_, x));
      out.push_back(std::move(w));
    }
  }
  return out;
}

FieldElement FieldMat::det() const {
  if (field_.is_rationals()) return FieldElement::rational(to_q().det());
  return FieldElement::residue(field_, to_fp().det());
}

std::vector<FieldElement> FieldMat::apply(
    const std::vector<FieldElement>& x) const {
  if (x.size() != cols_) throw InternalError("apply: dimension mismatch");
  std::vector<FieldElement> y(rows_, FieldElement::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] += at(i, j) * x[j];
  return y;
}

}  // namespace pencils
