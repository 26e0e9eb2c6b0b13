#pragma once

// Metric-operator predicates: pseudo-Hermiticity H^dag = eta H eta^-1,
// signature / definiteness classification, and eta-inner products.

#include <cmath>
#include <cstddef>
#include <string>

#include "kreinspec/eig.hpp"
#include "kreinspec/errors.hpp"
#include "kreinspec/linalg.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite };

inline const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
    default: return "Indefinite";
  }
}

struct MetricReport {
  bool is_hermitian = false;
  bool is_invertible = false;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  Definiteness definiteness = Definiteness::Indefinite;
};

inline double pseudo_hermiticity_residual(const ComplexMatrix& h, const ComplexMatrix& eta) {
  if (!h.is_square() || !eta.is_square() || h.rows() != eta.rows())
    throw DimensionMismatch("pseudo_hermiticity_residual: dimension mismatch");
  return (h.adjoint() - eta * h * inverse(eta)).frobenius_norm();
}

inline bool is_pseudo_hermitian(const ComplexMatrix& h, const ComplexMatrix& eta,
                                double tol = Tolerances{}.rtol) {
  return pseudo_hermiticity_residual(h, eta) <= tol * h.frobenius_norm();
}

inline double hermiticity_deviation(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

// Counts positive/negative eigenvalues of a Hermitian metric. Rejects
// non-Hermitian input and metrics with an eigenvalue too close to zero.
inline MetricReport metric_signature(const ComplexMatrix& eta) {
  if (!eta.is_square()) throw DimensionMismatch("metric_signature: matrix not square");
  const double scale = eta.frobenius_norm();
  if (hermiticity_deviation(eta) > kHermitianTol * scale)
    throw NotHermitian("metric_signature: deviation from Hermiticity exceeds " +
                       std::to_string(kHermitianTol) + " * |eta|_F");

  MetricReport rep;
  rep.is_hermitian = true;
  const ComplexMatrix sym = Complex(0.5) * (eta + eta.adjoint());
  for (const Eigenpair& p : eig_right(sym, 1e-10)) {
    const double lambda = p.value.real();
    if (std::abs(lambda) < kSignatureFloor * scale)
      throw NearSingular("metric_signature: eigenvalue " + std::to_string(lambda) +
                         " within " + std::to_string(kSignatureFloor) + " * |eta|_F of zero");
    if (lambda > 0.0)
      ++rep.n_plus;
    else
      ++rep.n_minus;
  }
  rep.is_invertible = true;
  if (rep.n_minus == 0)
    rep.definiteness = Definiteness::PositiveDefinite;
  else if (rep.n_plus == 0)
    rep.definiteness = Definiteness::NegativeDefinite;
  else
    rep.definiteness = Definiteness::Indefinite;
  return rep;
}

// <x|eta y>, conjugate-linear in x.
inline Complex eta_inner(const ComplexVector& x, const ComplexVector& y,
                         const ComplexMatrix& eta) {
  if (x.dim() != eta.rows() || y.dim() != eta.cols())
    throw DimensionMismatch("eta_inner: dimension mismatch");
  return inner(x, eta * y);
}

}  // namespace kreinspec
