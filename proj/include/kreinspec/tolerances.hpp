#pragma once

namespace kreinspec {

// Tolerance knobs shared across the analysis pipeline. Residual tolerances
// are relative to the Frobenius norm of the operator they check unless a
// constant below says otherwise.
struct Tolerances {
  // master residual tolerance for eigen-equations, biorthonormality,
  // completeness and pseudo-Hermiticity checks
  double rtol = 1e-10;
  // eigenvalue clustering radius (degenerate-block detection), relative
  double group_tol = 1e-8;
  // real-spectrum cutoff on |Im E|, relative
  double imag_tol = 1e-8;
  // commute/anticommute classification residual, absolute
  double relation_tol = 1e-10;
};

// Gaussian-elimination pivot cutoff, relative to the input norm.
inline constexpr double kPivotFloor = 1e-14;
// A degenerate block whose Gram matrix has a singular value below this is
// treated as defective (exceptional point).
inline constexpr double kGramFloor = 1e-10;
// Entrywise Hermiticity threshold, relative.
inline constexpr double kHermitianTol = 1e-12;
// A metric eigenvalue below this (relative) makes the signature ill-defined.
inline constexpr double kSignatureFloor = 1e-12;
// Bracket width for exceptional-point bisection along a sweep axis.
inline constexpr double kEpBisectTol = 1e-8;
// Zero band for the four-level discriminant, relative to the parameter scale.
inline constexpr double kPhaseEps = 1e-12;

}  // namespace kreinspec
