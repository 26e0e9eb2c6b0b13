#pragma once

// Complete biorthonormal eigensystems {E_n, psi_n, phi_n} for diagonalizable
// matrices: H psi_n = E_n psi_n, H^dag phi_n = E_n^* phi_n, <psi_n|phi_m> =
// delta_nm, sum |psi_n><phi_n| = 1. Degenerate eigenvalues are clustered into
// blocks; inside a block the psi columns are orthonormalized and the phi
// columns fixed by inverting the block Gram matrix. A singular block Gram
// (or failed residual validation) means the matrix is numerically defective,
// i.e. an exceptional point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "kreinspec/eig.hpp"
#include "kreinspec/errors.hpp"
#include "kreinspec/linalg.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

struct BiorthoLevel {
  Complex value;
  ComplexVector psi;  // right eigenvector of H, unit standard norm
  ComplexVector phi;  // right eigenvector of H^dag, scaled so <psi|phi> = delta
};

struct BiorthoSystem {
  std::size_t dim = 0;
  std::vector<BiorthoLevel> levels;  // sorted by (Re, Im) of the eigenvalue
  // indices into levels, one entry per degenerate block (singletons included)
  std::vector<std::vector<std::size_t>> clusters;
  double h_norm = 0.0;  // Frobenius norm of the input, the residual scale
};

namespace detail {

// Single-linkage clustering of eigenvalues with absolute radius.
inline std::vector<std::vector<std::size_t>> cluster_values(const std::vector<Complex>& vals,
                                                            double radius) {
  const std::size_t n = vals.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(vals[i] - vals[j]) <= radius) parent[find(i)] = find(j);

  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

// Modified Gram-Schmidt (two passes) on the given columns; throws Defective
// on numerical rank deficiency.
inline void orthonormalize_columns(std::vector<ComplexVector>& cols) {
  for (std::size_t k = 0; k < cols.size(); ++k) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < k; ++j) {
        const Complex proj = inner(cols[j], cols[k]);
        cols[k] = cols[k] - proj * cols[j];
      }
    const double nk = cols[k].norm();
    if (nk < kGramFloor)
      throw Defective(
          "biortho: Defective input, degenerate block is rank deficient (exceptional point?)");
    cols[k] = Complex(1.0 / nk) * cols[k];
  }
}

}  // namespace detail

inline BiorthoSystem build_biortho(const ComplexMatrix& h, double group_tol = 1e-8,
                                   double resid_tol = 1e-10) {
  if (!h.is_square()) throw DimensionMismatch("build_biortho: matrix not square");
  if (!(group_tol > 0.0) || !(resid_tol > 0.0))
    throw InvalidValue("build_biortho: tolerances must be positive");
  const std::size_t n = h.rows();
  const double hnorm = h.frobenius_norm();

  const std::vector<Eigenpair> right = eig_right(h, resid_tol);
  const std::vector<Eigenpair> left = eig_right(h.adjoint(), resid_tol);

  // Pair each eigenvalue E_n of H with the eigenvalue closest to E_n^* in the
  // spectrum of H^dag, greedily and injectively.
  std::vector<std::size_t> partner(n);
  {
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = n;
      double best_d = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double d = std::abs(left[j].value - std::conj(right[i].value));
        if (best == n || d < best_d) {
          best = j;
          best_d = d;
        }
      }
      if (best_d > std::max(10.0 * group_tol * hnorm, 1e-12))
        throw Defective("biortho: adjoint spectrum does not conjugate-match (pairing gap " +
                        std::to_string(best_d) + ")");
      partner[i] = best;
      used[best] = true;
    }
  }

  BiorthoSystem sys;
  sys.dim = n;
  sys.h_norm = hnorm;
  sys.levels.resize(n);

  sys.clusters.clear();
  {
    std::vector<Complex> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = right[i].value;
    sys.clusters = detail::cluster_values(vals, group_tol * hnorm);
  }

  for (const std::vector<std::size_t>& block : sys.clusters) {
    const std::size_t k = block.size();

    std::vector<ComplexVector> psi, phi;
    psi.reserve(k);
    phi.reserve(k);
    Complex mean = 0.0;
    for (const std::size_t idx : block) {
      psi.push_back(right[idx].vector);
      phi.push_back(left[partner[idx]].vector);
      mean += right[idx].value;
    }
    mean /= static_cast<double>(k);

    if (k > 1) {
      detail::orthonormalize_columns(psi);
      for (ComplexVector& v : psi) detail::fix_phase(v);
    }

    // Gram G_ij = <psi_i|phi_j>; replacing phi_j by sum_m phi_m (G^-1)_mj
    // enforces <psi_i|phi_j> = delta_ij without touching the psi side.
    ComplexMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gram(i, j) = inner(psi[i], phi[j]);

    // smallest singular value of G via the Hermitian form G^dag G
    {
      const std::vector<Eigenpair> ge = eig_right(gram.adjoint() * gram, 1e-8);
      double smin2 = ge.empty() ? 0.0 : ge.front().value.real();
      for (const Eigenpair& p : ge) smin2 = std::min(smin2, p.value.real());
      if (!(std::sqrt(std::max(smin2, 0.0)) > kGramFloor))
        throw Defective("biortho: Defective input, block Gram matrix singular below " +
                        std::to_string(kGramFloor) + " (exceptional point?)");
    }
    const ComplexMatrix ginv = inverse(gram);

    for (std::size_t j = 0; j < k; ++j) {
      ComplexVector adjusted(n);
      for (std::size_t m = 0; m < k; ++m) adjusted = adjusted + ginv(m, j) * phi[m];
      const std::size_t idx = block[j];
      sys.levels[idx].value = (k > 1) ? mean : right[idx].value;
      sys.levels[idx].psi = psi[j];
      sys.levels[idx].phi = adjusted;
    }
  }

  // Residual validation: if the advertised invariants cannot be met the input
  // is treated as (numerically) non-diagonalizable.
  const double scale = std::max(hnorm, 1.0);
  double worst_eig = 0.0, worst_bi = 0.0;
  const ComplexMatrix hdag = h.adjoint();
  for (std::size_t i = 0; i < n; ++i) {
    const BiorthoLevel& li = sys.levels[i];
    worst_eig = std::max(worst_eig, (h * li.psi - li.value * li.psi).norm() / scale);
    worst_eig = std::max(worst_eig,
                         (hdag * li.phi - std::conj(li.value) * li.phi).norm() /
                             (scale * std::max(li.phi.norm(), 1.0)));
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = inner(li.psi, sys.levels[j].phi);
      worst_bi = std::max(worst_bi, std::abs(g - ((i == j) ? Complex(1.0) : Complex(0.0))));
    }
  }
  ComplexMatrix sum(n, n);
  for (const BiorthoLevel& l : sys.levels) sum = sum + outer(l.psi, l.phi);
  const double completeness =
      (sum - ComplexMatrix::identity(n)).frobenius_norm() / std::sqrt(static_cast<double>(n));
  if (worst_eig > resid_tol || worst_bi > resid_tol || completeness > resid_tol)
    throw Defective("biortho: Defective input, residual validation failed (eig " +
                    std::to_string(worst_eig) + ", biortho " + std::to_string(worst_bi) +
                    ", completeness " + std::to_string(completeness) + " vs tol " +
                    std::to_string(resid_tol) + ")");

  return sys;
}

// |sum_n |psi_n><phi_n| - 1|_F
inline double completeness_residual(const BiorthoSystem& sys) {
  ComplexMatrix sum(sys.dim, sys.dim);
  for (const BiorthoLevel& l : sys.levels) sum = sum + outer(l.psi, l.phi);
  return (sum - ComplexMatrix::identity(sys.dim)).frobenius_norm();
}

// Spectral positive-definite metric eta+ = sum_n |phi_n><phi_n|. Requires a
// real spectrum; then eta+ psi_n = phi_n and H^dag = eta+ H eta+^-1.
inline ComplexMatrix spectral_metric(const BiorthoSystem& sys,
                                     double imag_tol = Tolerances{}.imag_tol) {
  for (const BiorthoLevel& l : sys.levels)
    if (std::abs(l.value.imag()) > imag_tol * sys.h_norm)
      throw ComplexSpectrum("spectral_metric: eigenvalue " + std::to_string(l.value.real()) +
                            (l.value.imag() < 0 ? "-" : "+") +
                            std::to_string(std::abs(l.value.imag())) + "i is not real");
  ComplexMatrix eta(sys.dim, sys.dim);
  for (const BiorthoLevel& l : sys.levels) eta = eta + outer(l.phi, l.phi);
  // hermitize: the sum is Hermitian up to rounding
  return Complex(0.5) * (eta + eta.adjoint());
}

// Residual bundle used by reports and tests.
struct BiorthoResiduals {
  double eigen_psi = 0.0;        // max |H psi - E psi| / |H|_F
  double eigen_phi = 0.0;        // max |H^dag phi - E^* phi| / (|H|_F |phi|)
  double biorthonormality = 0.0; // max |<psi_n|phi_m> - delta_nm|
  double completeness = 0.0;     // |sum |psi><phi| - 1|_F
  double spectral_rep = 0.0;     // |sum E |psi><phi| - H|_F / |H|_F
};

inline BiorthoResiduals biortho_residuals(const BiorthoSystem& sys, const ComplexMatrix& h) {
  BiorthoResiduals r;
  const double scale = std::max(h.frobenius_norm(), 1.0);
  const ComplexMatrix hdag = h.adjoint();
  const std::size_t n = sys.dim;
  ComplexMatrix sum(n, n), rep(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const BiorthoLevel& li = sys.levels[i];
    r.eigen_psi = std::max(r.eigen_psi, (h * li.psi - li.value * li.psi).norm() / scale);
    r.eigen_phi = std::max(r.eigen_phi, (hdag * li.phi - std::conj(li.value) * li.phi).norm() /
                                            (scale * std::max(li.phi.norm(), 1.0)));
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = inner(li.psi, sys.levels[j].phi);
      r.biorthonormality =
          std::max(r.biorthonormality, std::abs(g - ((i == j) ? Complex(1.0) : Complex(0.0))));
    }
    sum = sum + outer(li.psi, li.phi);
    rep = rep + li.value * outer(li.psi, li.phi);
  }
  r.completeness = (sum - ComplexMatrix::identity(n)).frobenius_norm();
  r.spectral_rep = (rep - h).frobenius_norm() / scale;
  return r;
}

}  // namespace kreinspec
