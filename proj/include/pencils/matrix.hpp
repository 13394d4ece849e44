#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "pencils/field.hpp"

namespace pencils {

// Dense matrix over F_p, entries reduced residues. Elimination routines use
// deterministic pivoting (first nonzero in column order) and the fp_kernels
// row primitives.
class FpMat {
public:
  FpMat(std::size_t rows, std::size_t cols, std::uint64_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return p_; }

  std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::size_t rank() const;
  // Basis of the right nullspace; each vector has its first nonzero entry
  // equal to 1. Deterministic.
  std::vector<std::vector<std::uint64_t>> kernel_basis() const;
  std::size_t kernel_dimension() const { return cols_ - rank(); }
  // Determinant (square matrices).
  std::uint64_t det() const;

private:
  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref_in_place();

  std::size_t rows_, cols_;
  std::uint64_t p_;
  std::vector<std::uint64_t> a_;
};

// Dense matrix over Q, exact. Kernel computation clears denominators rowwise
// and runs fraction-free (Bareiss) elimination over the integers; kernel
// vectors come back as primitive integer vectors with positive leading entry.
class QMat {
public:
  QMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, mpq_class(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpq_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpq_class& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::size_t rank() const;
  std::vector<std::vector<mpq_class>> kernel_basis() const;
  std::size_t kernel_dimension() const { return cols_ - rank(); }
  mpq_class det() const;

private:
  std::size_t rows_, cols_;
  std::vector<mpq_class> a_;
};

// Field-generic dense matrix used by the Ruppert-map builders: dispatches to
// QMat or FpMat for the heavy lifting.
class FieldMat {
public:
  FieldMat(std::size_t rows, std::size_t cols, const CoefficientField& k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const CoefficientField& field() const { return field_; }

  FieldElement& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FieldElement& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::size_t rank() const;
  std::size_t kernel_dimension() const { return cols_ - rank(); }
  std::vector<std::vector<FieldElement>> kernel_basis() const;
  FieldElement det() const;

  // y = M x
  std::vector<FieldElement> apply(const std::vector<FieldElement>& x) const;

private:
  FpMat to_fp() const;
  QMat to_q() const;

  std::size_t rows_, cols_;
  CoefficientField field_;
  std::vector<FieldElement> a_;
};

}  // namespace pencils
