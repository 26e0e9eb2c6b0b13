#pragma once

// Antilinear operators theta: x -> U conj(x), represented by their unitary
// part U alone with the conjugation applied at call time. Provides the
// parity/time-reversal constructions for even PT symmetry and the
// commute/anticommute classification of metric operators against PT.

#include <cmath>
#include <cstddef>
#include <string>

#include "kreinspec/errors.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

struct AntilinearOp {
  ComplexMatrix u;

  std::size_t dim() const { return u.rows(); }

  ComplexVector operator()(const ComplexVector& x) const { return u * x.conjugate(); }

  // linear part of theta^2; equals the identity for an even involution
  ComplexMatrix squared() const { return u * u.conjugate(); }
};

// Plain complex conjugation K (unitary part = identity).
inline AntilinearOp conjugation_op(std::size_t n) {
  return {ComplexMatrix::identity(n)};
}

// Parity: block-diagonal (I, -I). Linear, so returned as a plain matrix.
inline ComplexMatrix build_parity(std::size_t n) {
  if (n == 0 || n % 2 != 0)
    throw OddDimension("build_parity: dimension must be even, got " + std::to_string(n));
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n / 2; ++i) s(i, i) = 1.0;
  for (std::size_t i = n / 2; i < n; ++i) s(i, i) = -1.0;
  return s;
}

// Even time reversal T = Z K with Z = diag(sigma_x, ..., sigma_x); T^2 = +1.
inline AntilinearOp build_time_reversal(std::size_t n) {
  if (n == 0 || n % 2 != 0)
    throw OddDimension("build_time_reversal: dimension must be even, got " + std::to_string(n));
  ComplexMatrix z(n, n);
  for (std::size_t b = 0; b + 1 < n; b += 2) {
    z(b, b + 1) = 1.0;
    z(b + 1, b) = 1.0;
  }
  return {z};
}

// PT = S Z K; the unitary part is the product of the parity matrix with the
// time-reversal unitary.
inline AntilinearOp compose_pt(const ComplexMatrix& parity, const AntilinearOp& t) {
  if (!parity.is_square() || parity.rows() != t.dim())
    throw DimensionMismatch("compose_pt: dimension mismatch");
  return {parity * t.u};
}

inline AntilinearOp build_pt(std::size_t n) {
  return compose_pt(build_parity(n), build_time_reversal(n));
}

inline ComplexVector apply(const AntilinearOp& theta, const ComplexVector& x) {
  if (theta.dim() != x.dim()) throw DimensionMismatch("apply: dimension mismatch");
  return theta(x);
}

// [H, theta] = 0 for antilinear theta = UK reads H U = U conj(H).
inline double commutation_residual(const AntilinearOp& theta, const ComplexMatrix& h) {
  if (!h.is_square() || h.rows() != theta.dim())
    throw DimensionMismatch("commutation_residual: dimension mismatch");
  return (h * theta.u - theta.u * h.conjugate()).frobenius_norm();
}

inline bool commutes_with(const AntilinearOp& theta, const ComplexMatrix& h, double tol) {
  return commutation_residual(theta, h) <= tol * h.frobenius_norm();
}

enum class EtaPtValue { Commute, Anticommute, Neither };

struct EtaPtRelation {
  EtaPtValue value = EtaPtValue::Neither;
  double commute_residual = 0.0;     // |eta U - U conj(eta)|_F
  double anticommute_residual = 0.0; // |eta U + U conj(eta)|_F
};

inline const char* to_string(EtaPtValue v) {
  switch (v) {
    case EtaPtValue::Commute: return "Commute";
    case EtaPtValue::Anticommute: return "Anticommute";
    default: return "Neither";
  }
}

// Classifies a metric operator against theta. The threshold is absolute:
// the operators of interest are integer-valued or O(1) spectral metrics.
inline EtaPtRelation eta_pt_relation(const ComplexMatrix& eta, const AntilinearOp& theta,
                                     double tol = Tolerances{}.relation_tol) {
  if (!eta.is_square() || eta.rows() != theta.dim())
    throw DimensionMismatch("eta_pt_relation: dimension mismatch");
  const ComplexMatrix lhs = eta * theta.u;
  const ComplexMatrix rhs = theta.u * eta.conjugate();
  EtaPtRelation rel;
  rel.commute_residual = (lhs - rhs).frobenius_norm();
  rel.anticommute_residual = (lhs + rhs).frobenius_norm();
  const bool c = rel.commute_residual <= tol;
  const bool a = rel.anticommute_residual <= tol;
  if (c && !a)
    rel.value = EtaPtValue::Commute;
  else if (a && !c)
    rel.value = EtaPtValue::Anticommute;
  else
    rel.value = EtaPtValue::Neither;  // both small only for eta ~ 0
  return rel;
}

}  // namespace kreinspec
