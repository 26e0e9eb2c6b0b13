#pragma once

// Direct dense solvers: Gauss-Jordan inverse with partial pivoting.

#include <cmath>
#include <cstddef>
#include <vector>

#include "kreinspec/errors.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

inline ComplexMatrix inverse(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse: matrix not square");
  const std::size_t n = m.rows();
  const double pivot_floor = kPivotFloor * m.frobenius_norm();

  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);

  for (std::size_t col = 0; col < n; ++col) {
    // partial pivoting
    std::size_t piv = col;
    double best = std::abs(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const double v = std::abs(a(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= pivot_floor)
      throw SingularMatrix("inverse: pivot below threshold at column " + std::to_string(col));
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Complex d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const Complex f = a(i, col);
      if (f == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace kreinspec
