#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sira/signal_model.hpp"

namespace sira {

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ComplexVector data_;
};

// out(i, j) = conj(m(j, i)).
ComplexMatrix hermitian(const ComplexMatrix& m);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x);

// Solves the square system a * x = b with Householder QR and back
// substitution. Throws SingularSystemError when the smallest |R(k,k)| is
// below rel_tol times the largest.
ComplexVector qr_solve(ComplexMatrix a, ComplexVector b, double rel_tol = 1e-10);

}  // namespace sira
