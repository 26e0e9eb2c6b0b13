#pragma once

// PT-doublet degeneracy detection and Krein-space assembly. For a
// pseudo-Hermitian H with real spectrum whose (indefinite) metric
// anticommutes with PT, every eigenvector psi has a linearly independent
// partner PT psi at the same eigenvalue, with <phi|PT psi> = 0 and eta-norms
// (+1, -1). The PT-invariant combinations chi = psi + PT psi restore an
// unbroken symmetry on the Krein decomposition H_+ (+) H_-.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "kreinspec/antilinear.hpp"
#include "kreinspec/biortho.hpp"
#include "kreinspec/errors.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/metric.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

struct PtDoublet {
  Complex value;                       // shared (real) eigenvalue
  ComplexVector psi;                   // eta-norm +1 member
  ComplexVector pt_psi;                // PT partner, eta-norm -1
  ComplexVector phi;                   // eta * psi, so <psi|phi> = +1
  double eta_norm_psi = 0.0;
  double eta_norm_pt_psi = 0.0;
  double orthogonality_residual = 0.0; // |<phi|PT psi>|
  double gram_det = 0.0;               // standard 2x2 Gram det of (psi, PT psi)
};

enum class PtPhase { Unbroken, Broken, ExceptionalPoint };

inline const char* to_string(PtPhase p) {
  switch (p) {
    case PtPhase::Unbroken: return "Unbroken";
    case PtPhase::Broken: return "Broken";
    default: return "ExceptionalPoint";
  }
}

inline std::vector<PtDoublet> find_pt_doublets(const ComplexMatrix& h, const ComplexMatrix& eta,
                                               const AntilinearOp& theta,
                                               const Tolerances& tols = {}) {
  if (!h.is_square() || h.rows() != eta.rows() || h.rows() != theta.dim())
    throw DimensionMismatch("find_pt_doublets: dimension mismatch");
  const double hnorm = h.frobenius_norm();

  // algebraic preconditions first; they hold or fail regardless of spectrum
  {
    const double r = pseudo_hermiticity_residual(h, eta);
    if (r > tols.rtol * hnorm)
      throw PreconditionFailed("find_pt_doublets: H is not eta-pseudo-Hermitian (residual " +
                               std::to_string(r) + ")");
  }
  {
    const double r = commutation_residual(theta, h);
    if (r > tols.rtol * hnorm)
      throw PreconditionFailed("find_pt_doublets: [H, PT] != 0 (residual " + std::to_string(r) +
                               ")");
  }
  {
    const EtaPtRelation rel = eta_pt_relation(eta, theta, tols.relation_tol);
    if (rel.value != EtaPtValue::Anticommute)
      throw PreconditionFailed(std::string("find_pt_doublets: eta_pt_relation = ") +
                               to_string(rel.value) + " (commute residual " +
                               std::to_string(rel.commute_residual) + ", anticommute residual " +
                               std::to_string(rel.anticommute_residual) +
                               "); an anticommuting metric is required");
  }

  // defective input surfaces here as Defective
  const BiorthoSystem sys = build_biortho(h, tols.group_tol, tols.rtol);

  for (const BiorthoLevel& l : sys.levels)
    if (std::abs(l.value.imag()) > tols.imag_tol * hnorm)
      throw PreconditionFailed("find_pt_doublets: spectrum not real (|Im E| = " +
                               std::to_string(std::abs(l.value.imag())) + ")");

  std::vector<PtDoublet> doublets;
  for (const std::vector<std::size_t>& block : sys.clusters) {
    const std::size_t k = block.size();
    if (k % 2 != 0)
      throw Defective("find_pt_doublets: eigenvalue cluster of odd multiplicity " +
                      std::to_string(k) + "; doublet structure broken");

    // Hermitian eta-Gram on the orthonormal eigenspace basis. Signature must
    // come out balanced; the positive directions seed the doublets.
    ComplexMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        gram(i, j) = eta_inner(sys.levels[block[i]].psi, sys.levels[block[j]].psi, eta);
    gram = Complex(0.5) * (gram + gram.adjoint());

    std::vector<Eigenpair> ge = eig_right(gram, 1e-8);
    std::size_t n_pos = 0;
    for (const Eigenpair& p : ge)
      if (p.value.real() > 0.0) ++n_pos;
    if (n_pos != k / 2)
      throw Defective("find_pt_doublets: eta-Gram signature (" + std::to_string(n_pos) + "," +
                      std::to_string(k - n_pos) + ") on a cluster of size " + std::to_string(k));

    // take the positive directions in descending eta-norm order
    std::sort(ge.begin(), ge.end(),
              [](const Eigenpair& a, const Eigenpair& b) { return a.value.real() > b.value.real(); });

    const Complex value = sys.levels[block.front()].value;
    for (std::size_t d = 0; d < k / 2; ++d) {
      const double mu = ge[d].value.real();
      if (!(mu > 0.0))
        throw Defective("find_pt_doublets: nonpositive eta-Gram eigenvalue in doublet slot");

      ComplexVector psi(h.rows());
      for (std::size_t j = 0; j < k; ++j)
        psi = psi + ge[d].vector[j] * sys.levels[block[j]].psi;
      psi = Complex(1.0 / std::sqrt(mu)) * psi;  // <psi|eta psi> = +1 exactly

      PtDoublet dbl;
      dbl.value = value;
      dbl.psi = psi;
      dbl.pt_psi = apply(theta, psi);
      dbl.phi = eta * psi;
      dbl.eta_norm_psi = eta_inner(dbl.psi, dbl.psi, eta).real();
      dbl.eta_norm_pt_psi = eta_inner(dbl.pt_psi, dbl.pt_psi, eta).real();
      dbl.orthogonality_residual = std::abs(inner(dbl.phi, dbl.pt_psi));

      const double n1 = dbl.psi.norm();
      const double n2 = dbl.pt_psi.norm();
      const Complex g12 = inner(dbl.psi, dbl.pt_psi);
      dbl.gram_det = (n1 * n1) * (n2 * n2) - std::norm(g12);

      // the contracted properties of a doublet, checked before returning
      const double eig_res = (h * dbl.pt_psi - dbl.value * dbl.pt_psi).norm() /
                             std::max(hnorm * dbl.pt_psi.norm(), 1e-300);
      if (eig_res > tols.rtol)
        throw PreconditionFailed("find_pt_doublets: PT partner eigen-residual " +
                                 std::to_string(eig_res));
      if (dbl.orthogonality_residual > tols.rtol)
        throw PreconditionFailed("find_pt_doublets: <phi|PT psi> = " +
                                 std::to_string(dbl.orthogonality_residual) + " exceeds tol");
      if (std::abs(dbl.eta_norm_psi - 1.0) > tols.rtol ||
          std::abs(dbl.eta_norm_pt_psi + 1.0) > tols.rtol)
        throw PreconditionFailed("find_pt_doublets: eta-norms (" +
                                 std::to_string(dbl.eta_norm_psi) + ", " +
                                 std::to_string(dbl.eta_norm_pt_psi) +
                                 ") deviate from (+1, -1)");
      // scale-invariant collapse check: det / (|psi|^2 |PTpsi|^2) = sin^2
      // of the angle between the pair
      if (dbl.gram_det < 1e-8 * (n1 * n1) * (n2 * n2))
        throw Defective("find_pt_doublets: doublet Gram determinant " +
                        std::to_string(dbl.gram_det) + " too small (exceptional point?)");

      doublets.push_back(std::move(dbl));
    }
  }

  std::sort(doublets.begin(), doublets.end(), [](const PtDoublet& a, const PtDoublet& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return doublets;
}

struct KreinDecomposition {
  std::vector<Complex> values;              // eigenvalue per chi state
  std::vector<ComplexVector> chi_states;    // chi = psi + PT psi (PT-invariant)
  std::vector<ComplexVector> h_plus_basis;  // eta-norm +1 members
  std::vector<ComplexVector> h_minus_basis; // eta-norm -1 members
};

inline KreinDecomposition build_krein(const std::vector<PtDoublet>& doublets,
                                      const AntilinearOp& theta, double tol = 1e-10) {
  if (doublets.empty()) throw PreconditionFailed("build_krein: no doublets given");
  KreinDecomposition k;
  for (const PtDoublet& d : doublets) {
    ComplexVector chi = d.psi + d.pt_psi;
    if (chi.norm() < tol * d.psi.norm()) {
      // cancellation: rotating psi by i flips the relative sign of the pair
      const ComplexVector rotated = Complex(0.0, 1.0) * d.psi;
      chi = rotated + apply(theta, rotated);
      if (chi.norm() < tol * d.psi.norm())
        throw DegenerateChi("build_krein: chi = psi + PT psi vanishes for E = " +
                            std::to_string(d.value.real()) + " even after phase retry");
    }
    k.values.push_back(d.value);
    k.chi_states.push_back(std::move(chi));
    k.h_plus_basis.push_back(d.psi);
    k.h_minus_basis.push_back(d.pt_psi);
  }
  return k;
}

struct KreinVerification {
  double max_pt_invariance = 0.0;    // max |PT chi - chi| / |chi|
  double max_eigen_residual = 0.0;   // max |H chi - E chi| / (|H|_F |chi|)
  double max_cross_eta_inner = 0.0;  // max |<u|v>_eta|, u in H_+, v in H_- (same doublet)
  double min_stack_singular = 0.0;   // smallest singular value of the stacked basis
};

inline KreinVerification verify_krein(const KreinDecomposition& k, const ComplexMatrix& h,
                                      const ComplexMatrix& eta, const AntilinearOp& theta) {
  KreinVerification v;
  const double hnorm = std::max(h.frobenius_norm(), 1e-300);
  for (std::size_t i = 0; i < k.chi_states.size(); ++i) {
    const ComplexVector& chi = k.chi_states[i];
    v.max_pt_invariance =
        std::max(v.max_pt_invariance, (apply(theta, chi) - chi).norm() / chi.norm());
    v.max_eigen_residual = std::max(
        v.max_eigen_residual, (h * chi - k.values[i] * chi).norm() / (hnorm * chi.norm()));
    v.max_cross_eta_inner =
        std::max(v.max_cross_eta_inner,
                 std::abs(eta_inner(k.h_plus_basis[i], k.h_minus_basis[i], eta)));
  }
  // full rank of {psi_n, PT psi_n}: smallest singular value via the Gram
  const std::size_t m = 2 * k.h_plus_basis.size();
  ComplexMatrix stack(h.rows(), m);
  for (std::size_t i = 0; i < k.h_plus_basis.size(); ++i) {
    stack.set_column(2 * i, k.h_plus_basis[i]);
    stack.set_column(2 * i + 1, k.h_minus_basis[i]);
  }
  const ComplexMatrix gram = stack.adjoint() * stack;
  double smin2 = -1.0;
  for (const Eigenpair& p : eig_right(gram, 1e-8)) {
    const double lam = std::max(p.value.real(), 0.0);
    if (smin2 < 0.0 || lam < smin2) smin2 = lam;
  }
  v.min_stack_singular = std::sqrt(std::max(smin2, 0.0));
  return v;
}

// Spectral phase: all eigenvalues real -> Unbroken, a conjugate pair with
// |Im E| above tolerance -> Broken, numerically defective -> ExceptionalPoint.
inline PtPhase classify_pt_phase(const ComplexMatrix& h, double tol = Tolerances{}.imag_tol) {
  if (!h.is_square()) throw DimensionMismatch("classify_pt_phase: matrix not square");
  BiorthoSystem sys;
  try {
    sys = build_biortho(h);
  } catch (const Defective&) {
    return PtPhase::ExceptionalPoint;
  }
  for (const BiorthoLevel& l : sys.levels)
    if (std::abs(l.value.imag()) > tol * sys.h_norm) return PtPhase::Broken;
  return PtPhase::Unbroken;
}

}  // namespace kreinspec
