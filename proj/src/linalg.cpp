#include "sira/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "sira/errors.hpp"

namespace sira {

ComplexMatrix hermitian(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  }
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw InvalidArgument("multiply: vector length differs from column count");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

ComplexVector qr_solve(ComplexMatrix a, ComplexVector b, double rel_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InvalidArgument("qr_solve: expects a square system");
  if (n == 0) return {};

  // Householder reflections applied in place: a becomes R, b becomes Q^H b.
  ComplexVector v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;

    const Complex x0 = a(k, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
    const Complex alpha = -phase * norm;

    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    for (std::size_t j = k; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t i = k; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= beta;
      for (std::size_t i = k; i < n; ++i) a(i, j) -= v[i] * s;
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = k; i < n; ++i) s += std::conj(v[i]) * b[i];
    s *= beta;
    for (std::size_t i = k; i < n; ++i) b[i] -= v[i] * s;
  }

  double dmax = 0.0;
  double dmin = std::abs(a(0, 0));
  for (std::size_t k = 0; k < n; ++k) {
    dmax = std::max(dmax, std::abs(a(k, k)));
    dmin = std::min(dmin, std::abs(a(k, k)));
  }
  if (!(dmin >= rel_tol * dmax) || dmax == 0.0) {
    throw SingularSystemError("qr_solve: system is numerically singular");
  }

  ComplexVector x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    Complex acc = b[kk];
    for (std::size_t j = kk + 1; j < n; ++j) acc -= a(kk, j) * x[j];
    x[kk] = acc / a(kk, kk);
  }
  return x;
}

}  // namespace sira
