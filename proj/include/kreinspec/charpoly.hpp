#pragma once

// Characteristic-polynomial eigenvalue oracle, deliberately independent of
// the QR solver in eig.hpp: Faddeev-LeVerrier recursion for the coefficients,
// Durand-Kerner simultaneous iteration for the roots (no companion matrix,
// no Hessenberg, no QR). Intended as a verification path for small matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "kreinspec/errors.hpp"
#include "kreinspec/matrix.hpp"

namespace kreinspec {

// Coefficients c of the monic characteristic polynomial
// p(z) = z^n + c[0] z^{n-1} + ... + c[n-1], so p(z) = det(z I - M).
inline std::vector<Complex> charpoly_coeffs(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("charpoly_coeffs: matrix not square");
  const std::size_t n = m.rows();
  std::vector<Complex> c(n);
  if (n == 0) return c;

  ComplexMatrix b = m;
  c[0] = -b.trace();
  for (std::size_t k = 2; k <= n; ++k) {
    // B_k = M (B_{k-1} + c_{k-1} I)
    for (std::size_t i = 0; i < n; ++i) b(i, i) += c[k - 2];
    b = m * b;
    c[k - 1] = -b.trace() / static_cast<double>(k);
  }
  return c;
}

namespace detail {

inline Complex poly_eval(const std::vector<Complex>& c, Complex z) {
  Complex p = 1.0;  // monic leading coefficient
  for (const Complex& ck : c) p = p * z + ck;
  return p;
}

inline Complex poly_deriv_eval(const std::vector<Complex>& c, Complex z) {
  const std::size_t n = c.size();
  Complex p = static_cast<double>(n);
  for (std::size_t k = 0; k + 1 < n; ++k)
    p = p * z + static_cast<double>(n - 1 - k) * c[k];
  return p;
}

// Trailing coefficients of the derivative, rescaled to monic form.
inline std::vector<Complex> poly_derivative_monic(const std::vector<Complex>& c) {
  const std::size_t n = c.size();
  std::vector<Complex> d(n >= 1 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k)
    d[k] = c[k] * (static_cast<double>(n - 1 - k) / static_cast<double>(n));
  return d;
}

// Fujiwara bound on the root magnitudes of a monic polynomial.
inline double root_radius(const std::vector<Complex>& c) {
  double r = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    r = std::max(r, std::pow(std::abs(c[k]), 1.0 / static_cast<double>(k + 1)));
  return 2.0 * r;
}

}  // namespace detail

// All roots of the monic polynomial with the given trailing coefficients,
// multiplicity included, sorted by (Re, Im). Clusters of approximants are
// fused to their centroid and polished with multiplicity-aware Newton steps,
// which recovers full accuracy at exact multiple roots.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& c) {
  const std::size_t n = c.size();
  std::vector<Complex> z(n);
  if (n == 0) return z;
  if (n == 1) {
    z[0] = -c[0];
    return z;
  }

  const double radius = std::max(detail::root_radius(c), 1e-3);
  const Complex centroid = -c[0] / static_cast<double>(n);
  const double pi = 3.14159265358979323846;
  for (std::size_t j = 0; j < n; ++j) {
    const double ang = 2.0 * pi * static_cast<double>(j) / static_cast<double>(n) + 0.5;
    z[j] = centroid + radius * Complex(std::cos(ang), std::sin(ang));
  }

  // Durand-Kerner fixed point
  for (int iter = 0; iter < 800; ++iter) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      Complex denom = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        Complex d = z[j] - z[k];
        if (d == Complex(0.0)) d = Complex(1e-12 * radius, 1e-12 * radius);
        denom *= d;
      }
      const Complex step = detail::poly_eval(c, z[j]) / denom;
      z[j] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[j])));
    }
    if (worst < 1e-15) break;
  }

  // fuse clusters of approximants (multiple roots) and polish
  const double fuse_radius = 1e-6 * (1.0 + radius);
  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (group[i] != i) i = group[i] = group[group[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < fuse_radius) group[find(i)] = find(j);

  std::vector<Complex> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (find(r) != r) continue;
    Complex sum = 0.0;
    std::size_t mult = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == r) {
        sum += z[i];
        ++mult;
      }
    Complex root = sum / static_cast<double>(mult);
    // An m-fold root of p is a simple (hence well-conditioned) root of the
    // (m-1)-th derivative; Newton there escapes the noise floor that limits
    // iteration on p itself near multiple roots.
    std::vector<Complex> target = c;
    for (std::size_t k = 1; k < mult; ++k) target = detail::poly_derivative_monic(target);
    for (int it = 0; it < 12; ++it) {
      const Complex p = detail::poly_eval(target, root);
      const Complex dp = detail::poly_deriv_eval(target, root);
      if (std::abs(dp) == 0.0) break;
      const Complex next = root - p / dp;
      if (std::abs(detail::poly_eval(target, next)) <= std::abs(p) && next != root)
        root = next;
      else
        break;
    }
    for (std::size_t i = 0; i < mult; ++i) out.push_back(root);
  }

  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

// Eigenvalues of m via the characteristic polynomial. Restricted to small
// dimensions where coefficient expansion is numerically trustworthy.
inline std::vector<Complex> charpoly_roots(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("charpoly_roots: matrix not square");
  if (m.rows() > 8)
    throw DimensionTooLarge("charpoly_roots: dimension " + std::to_string(m.rows()) +
                            " exceeds limit 8");
  return poly_roots(charpoly_coeffs(m));
}

}  // namespace kreinspec
