#pragma once

// General (non-Hermitian) dense complex eigensolver: Householder reduction to
// upper Hessenberg form, single-shift QR iteration with Wilkinson shifts down
// to Schur form, then triangular back-substitution for the eigenvectors.
// Contract is residual-based: every returned pair satisfies
// |M v - lambda v| <= tol * |M|_F with v unit-normalized.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "kreinspec/errors.hpp"
#include "kreinspec/matrix.hpp"

namespace kreinspec {

struct Eigenpair {
  Complex value;
  ComplexVector vector;  // unit norm, largest-magnitude entry real positive
};

struct EigOptions {
  // QR sweeps allowed per eigenvalue before giving up (LAPACK uses 30).
  int max_sweeps_per_eigenvalue = 40;
  // verify the residual contract on the returned pairs
  bool check_residuals = true;
};

namespace detail {

struct GivensRotation {
  double c;   // real cosine
  Complex s;  // complex sine; G = [[c, s], [-conj(s), c]] maps (f,g) -> (r,0)
};

inline GivensRotation make_givens(Complex f, Complex g) {
  if (g == Complex(0.0)) return {1.0, Complex(0.0)};
  if (f == Complex(0.0)) {
    const double ag = std::abs(g);
    return {0.0, std::conj(g) / ag};
  }
  const double af = std::abs(f);
  const double d = std::hypot(af, std::abs(g));
  const Complex phase = f / af;
  return {af / d, phase * std::conj(g) / d};
}

// A <- G A on rows (k, k+1).
inline void rotate_rows(ComplexMatrix& a, std::size_t k, const GivensRotation& g) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const Complex t0 = a(k, j), t1 = a(k + 1, j);
    a(k, j) = g.c * t0 + g.s * t1;
    a(k + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
  }
}

// A <- A G^H on columns (k, k+1).
inline void rotate_cols(ComplexMatrix& a, std::size_t k, const GivensRotation& g) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Complex t0 = a(i, k), t1 = a(i, k + 1);
    a(i, k) = g.c * t0 + std::conj(g.s) * t1;
    a(i, k + 1) = -g.s * t0 + g.c * t1;
  }
}

// Householder reduction to upper Hessenberg; accumulates the similarity in q
// so that on entry a0 = q * a * q^H holds on exit.
inline void reduce_to_hessenberg(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.rows();
  q = ComplexMatrix::identity(n);
  if (n < 3) return;

  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // eliminate column k below the first subdiagonal
    double colnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(a(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;

    Complex x0 = a(k + 1, k);
    const Complex phase = (x0 == Complex(0.0)) ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * colnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // a <- P a, P = I - beta v v^H (acting on rows k+1..n-1)
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // a <- a P (columns k+1..n-1)
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    // q <- q P
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
    // the eliminated entries are exactly zero
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Eigenvalue of the 2x2 block closest to its (1,1) entry (Wilkinson shift).
inline Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Single-shift QR with deflation on a Hessenberg matrix. On exit a is upper
// triangular (Schur form) and q accumulates the Schur vectors.
inline void hessenberg_to_schur(ComplexMatrix& a, ComplexMatrix& q, int max_sweeps_per_ev) {
  const std::size_t n = a.rows();
  if (n < 2) return;

  const double eps = std::numeric_limits<double>::epsilon();
  const double anorm = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const long budget = static_cast<long>(max_sweeps_per_ev) * static_cast<long>(n);
  long used = 0;

  // Deflation threshold. The Frobenius norm is invariant under the
  // similarity rotations, and full-range rotations keep rounding noise at
  // eps * |A|_F, so subdiagonals below that level carry no information.
  const double deflate = eps * anorm;

  std::size_t hi = n - 1;
  int sweeps_here = 0;
  while (true) {
    // zero out negligible subdiagonals, then find the active block [lo, hi]
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(a(lo, lo - 1));
      const double local = std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo));
      if (sub <= std::max(deflate, eps * local)) {
        a(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }

    if (lo == hi) {
      // 1x1 block converged
      if (hi == 0) break;
      --hi;
      sweeps_here = 0;
      continue;
    }

    if (++used > budget)
      throw NoConvergence("eig_right: QR iteration budget exhausted (near-defective input?)");
    ++sweeps_here;

    Complex shift;
    if (sweeps_here % 20 == 0) {
      // occasional ad-hoc shift to break symmetric stalls
      shift = a(hi, hi) + Complex(0.75 * std::abs(a(hi, hi - 1)), 0.0);
    } else {
      shift = wilkinson_shift(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi));
    }

    // implicit single-shift sweep with bulge chasing over [lo, hi]
    Complex x = a(lo, lo) - shift;
    Complex z = a(lo + 1, lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const GivensRotation g = make_givens(x, z);
      rotate_rows(a, k, g);
      rotate_cols(a, k, g);
      rotate_cols(q, k, g);
      if (k + 1 < hi) {
        x = a(k + 1, k);
        z = a(k + 2, k);
      }
    }
  }

  // clean the strictly lower part (rounding residue of the rotations)
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = 0.0;
}

// Eigenvector of the upper-triangular t for the eigenvalue at position k,
// by back-substitution with safeguarded denominators.
inline ComplexVector triangular_eigenvector(const ComplexMatrix& t, std::size_t k) {
  const std::size_t n = t.rows();
  const double eps = std::numeric_limits<double>::epsilon();
  const double den_floor = std::max(eps * t.frobenius_norm(), std::numeric_limits<double>::min());

  ComplexVector y(n);
  y[k] = 1.0;
  const Complex lambda = t(k, k);
  for (std::size_t ii = k; ii-- > 0;) {
    Complex num = 0.0;
    for (std::size_t j = ii + 1; j <= k; ++j) num += t(ii, j) * y[j];
    Complex den = t(ii, ii) - lambda;
    if (std::abs(den) < den_floor) den = Complex(den_floor, 0.0);
    y[ii] = -num / den;
    // guard against runaway growth on (nearly) repeated diagonal entries
    const double big = 1.0 / (eps * eps);
    if (std::abs(y[ii]) > big) {
      const double rescale = 1.0 / std::abs(y[ii]);
      for (std::size_t j = ii; j <= k; ++j) y[j] *= rescale;
    }
  }
  return y;
}

// Rotate the global phase so the largest-magnitude entry is real positive.
inline void fix_phase(ComplexVector& v) {
  std::size_t imax = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (best <= 0.0) return;
  const Complex rot = std::conj(v[imax]) / best;
  for (std::size_t i = 0; i < v.dim(); ++i) v[i] *= rot;
  v[imax] = Complex(std::abs(v[imax]), 0.0);
}

}  // namespace detail

// Right eigenpairs of a square complex matrix, n of them counting
// multiplicity, sorted by (Re, Im) of the eigenvalue.
inline std::vector<Eigenpair> eig_right(const ComplexMatrix& m, double tol = 1e-10,
                                        const EigOptions& opts = {}) {
  if (!m.is_square()) throw DimensionMismatch("eig_right: matrix not square");
  if (!(tol > 0.0)) throw InvalidValue("eig_right: tol must be positive");
  if (!m.all_finite()) throw InvalidValue("eig_right: non-finite entries");
  const std::size_t n = m.rows();

  std::vector<Eigenpair> out;
  out.reserve(n);
  if (n == 0) return out;

  ComplexMatrix t = m;
  ComplexMatrix q;
  detail::reduce_to_hessenberg(t, q);
  detail::hessenberg_to_schur(t, q, opts.max_sweeps_per_eigenvalue);

  for (std::size_t k = 0; k < n; ++k) {
    const ComplexVector y = detail::triangular_eigenvector(t, k);
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += q(i, j) * y[j];
      v[i] = s;
    }
    const double nv = v.norm();
    if (nv == 0.0) throw NoConvergence("eig_right: zero eigenvector from back-substitution");
    for (std::size_t i = 0; i < n; ++i) v[i] /= nv;
    detail::fix_phase(v);
    out.push_back({t(k, k), std::move(v)});
  }

  std::sort(out.begin(), out.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });

  if (opts.check_residuals) {
    const double bound = tol * m.frobenius_norm();
    for (const Eigenpair& p : out) {
      const double r = (m * p.vector - p.value * p.vector).norm();
      if (r > bound)
        throw NoConvergence("eig_right: residual " + std::to_string(r) +
                            " exceeds tolerance " + std::to_string(bound));
    }
  }
  return out;
}

inline std::vector<Complex> eigenvalues(const ComplexMatrix& m, double tol = 1e-10) {
  std::vector<Complex> v;
  for (const Eigenpair& p : eig_right(m, tol)) v.push_back(p.value);
  return v;
}

}  // namespace kreinspec
