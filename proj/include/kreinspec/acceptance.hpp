#pragma once

// Built-in acceptance suite: the toolkit's quantitative guarantees as
// executable criteria, each with a pinned threshold. Used by the `selftest`
// command and by the integration test binary. Deterministic (fixed seeds).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kreinspec/antilinear.hpp"
#include "kreinspec/biortho.hpp"
#include "kreinspec/charpoly.hpp"
#include "kreinspec/eig.hpp"
#include "kreinspec/fourlevel.hpp"
#include "kreinspec/kreindeg.hpp"
#include "kreinspec/linalg.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/metric.hpp"
#include "kreinspec/splitq.hpp"

namespace kreinspec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double worst = 0.0;      // worst observed residual (or margin measure)
  double threshold = 0.0;  // bound it was checked against
  std::string detail;
};

namespace acceptance_detail {

inline FourLevelParams random_params(std::mt19937& rng, double min_d) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    FourLevelParams p{u(rng), {u(rng), u(rng)}, {u(rng), u(rng)}};
    if (discriminant(p) > min_d) return p;
  }
}

inline ComplexMatrix random_matrix(std::mt19937& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

}  // namespace acceptance_detail

// 1. Numeric spectrum of the four-level model equals +/- sqrt(D), each
// twofold degenerate.
inline CriterionResult criterion_spectrum(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-9);
  std::mt19937 rng(20260001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p = acceptance_detail::random_params(rng, 0.1);
    const double om = std::sqrt(discriminant(p));
    const BiorthoSystem sys = build_biortho(build_hamiltonian(p));
    const double expect[4] = {-om, -om, om, om};
    for (std::size_t i = 0; i < 4; ++i)
      worst = std::max(worst, std::abs(sys.levels[i].value - Complex(expect[i])));
  }
  return {1, "four-level spectrum +/-Omega, twofold degenerate", worst <= tol, worst, tol, ""};
}

// 2. The explicit indefinite metric anticommutes with PT with residual
// exactly zero; the spectral metric commutes within tolerance.
inline CriterionResult criterion_metric_classification(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-10);
  const AntilinearOp pt = build_pt(4);
  const EtaPtRelation fixed = eta_pt_relation(indefinite_metric_4(), pt);
  const bool exact = fixed.value == EtaPtValue::Anticommute && fixed.anticommute_residual == 0.0;

  std::mt19937 rng(20260001);  // same instance stream as criterion 1
  double worst = 0.0;
  bool all_commute = true;
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p = acceptance_detail::random_params(rng, 0.1);
    const BiorthoSystem sys = build_biortho(build_hamiltonian(p));
    const EtaPtRelation rel = eta_pt_relation(spectral_metric(sys), pt, tol);
    all_commute = all_commute && rel.value == EtaPtValue::Commute;
    worst = std::max(worst, rel.commute_residual);
  }
  return {2, "metric vs PT: indefinite anticommutes (exact), spectral commutes",
          exact && all_commute && worst <= tol, worst, tol,
          exact ? "indefinite-metric residual exactly 0" : "indefinite-metric residual NOT zero"};
}

// 3. Degeneracy theorem: <phi|PT psi> = 0 and the doublet pair is linearly
// independent (standard Gram determinant bounded below).
inline CriterionResult criterion_degeneracy(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-10);
  const double gram_min = tol_override.value_or(1e-6);
  const AntilinearOp pt = build_pt(4);
  const ComplexMatrix eta = indefinite_metric_4();
  std::mt19937 rng(20260001);  // same instance stream as criterion 1
  double worst = 0.0, min_gram = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p = acceptance_detail::random_params(rng, 0.1);
    for (const PtDoublet& d : find_pt_doublets(build_hamiltonian(p), eta, pt)) {
      worst = std::max(worst, d.orthogonality_residual);
      min_gram = std::min(min_gram, d.gram_det);
    }
  }
  return {3, "degeneracy theorem: <phi|PT psi> = 0, doublets independent",
          worst <= tol && min_gram >= gram_min, worst, tol,
          "min gram det " + std::to_string(min_gram) + " (floor " + std::to_string(gram_min) + ")"};
}

// 4. Indefinite eta-norms (+1, -1) per doublet.
inline CriterionResult criterion_eta_norms(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-10);
  const AntilinearOp pt = build_pt(4);
  const ComplexMatrix eta = indefinite_metric_4();
  std::mt19937 rng(20260001);  // same instance stream as criterion 1
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p = acceptance_detail::random_params(rng, 0.1);
    for (const PtDoublet& d : find_pt_doublets(build_hamiltonian(p), eta, pt)) {
      worst = std::max(worst, std::abs(d.eta_norm_psi - 1.0));
      worst = std::max(worst, std::abs(d.eta_norm_pt_psi + 1.0));
    }
  }
  return {4, "doublet eta-norms equal (+1, -1)", worst <= tol, worst, tol, ""};
}

// 5. Abnormal relations, signed completeness and the k-normalization on the
// closed-form eigensystem.
inline CriterionResult criterion_abnormal_relations(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-10);
  const double k_tol = tol_override.value_or(1e-14);
  std::mt19937 rng(20260001);  // same instance stream as criterion 1
  double worst = 0.0, worst_k = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p = acceptance_detail::random_params(rng, 0.1);
    if (!(std::sqrt(discriminant(p)) + p.a0 > 1e-3)) continue;  // keep k well defined
    const AnalyticEigensystem sys = analytic_eigensystem(p);
    const AbnormalReport rep = abnormal_relations_check(sys, tol);
    worst = std::max({worst, rep.max_pairing_residual, rep.completeness_residual});
    worst_k = std::max(worst_k, rep.k_residual);
  }
  return {5, "abnormal relations, signed completeness, k-normalization",
          worst <= tol && worst_k <= k_tol, worst, tol,
          "k residual " + std::to_string(worst_k) + " (tol " + std::to_string(k_tol) + ")"};
}

// 6. Krein restoration: chi = psi + PT psi is PT-invariant, an eigenvector,
// and the two subspaces are eta-orthogonal.
inline CriterionResult criterion_krein(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-10);
  const AntilinearOp pt = build_pt(4);
  const ComplexMatrix eta = indefinite_metric_4();
  std::mt19937 rng(20260001);  // same instance stream as criterion 1
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p = acceptance_detail::random_params(rng, 0.1);
    const ComplexMatrix h = build_hamiltonian(p);
    const std::vector<PtDoublet> ds = find_pt_doublets(h, eta, pt);
    const KreinDecomposition kd = build_krein(ds, pt);
    const KreinVerification v = verify_krein(kd, h, eta, pt);
    worst = std::max({worst, v.max_pt_invariance, v.max_eigen_residual, v.max_cross_eta_inner});
  }
  return {6, "Krein restoration: PT chi = chi, H chi = E chi, H+ _|_ H-", worst <= tol, worst,
          tol, ""};
}

// 7. Exceptional-point localization along |B| and Defective at the EP.
inline CriterionResult criterion_exceptional_point(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-8);
  const FourLevelParams base{0.0, {1.0, 0.0}, {1.0, 0.0}};
  const SweepResult sweep = sweep_exceptional_point(base, SweepAxis::AbsB, 0.0, 2.0, 200);

  bool phases_ok = true;
  for (const SweepPoint& pt : sweep.points) {
    if (pt.t < 1.0 - 1e-6) phases_ok = phases_ok && pt.phase == PtPhase::Unbroken;
    if (pt.t > 1.0 + 1e-6) phases_ok = phases_ok && pt.phase == PtPhase::Broken;
  }
  double err = 1e300;
  for (const EpBracket& ep : sweep.exceptional_points) err = std::min(err, std::abs(ep.location - 1.0));
  const bool one_ep = sweep.exceptional_points.size() == 1;

  bool defective_at_ep = false;
  std::string note;
  try {
    find_pt_doublets(build_hamiltonian(base), indefinite_metric_4(), build_pt(4));
    note = "no error raised at the exceptional point";
  } catch (const Defective&) {
    defective_at_ep = true;
  } catch (const Error& e) {
    note = std::string("wrong error type at EP: ") + e.what();
  }
  return {7, "exceptional point at |B| = 1: bracket, phase labels, Defective",
          phases_ok && one_ep && err <= tol && defective_at_ep, err, tol, note};
}

// 8. Split-quaternion block assembly and embedding algebra, exact on integer
// components.
inline CriterionResult criterion_splitq(std::optional<double> tol_override) {
  (void)tol_override;  // exactness criterion; nothing to loosen
  std::mt19937 rng(20260008);
  std::uniform_int_distribution<int> d(-5, 5);
  bool ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const SplitQuaternion p{double(d(rng)), double(d(rng)), double(d(rng)), double(d(rng))};
    const SplitQuaternion q{double(d(rng)), double(d(rng)), double(d(rng)), double(d(rng))};
    ok = ok && embed(mul(p, q)) == embed(p) * embed(q);
    ok = ok && algebra_norm(mul(p, q)) == algebra_norm(p) * algebra_norm(q);

    const FourLevelParams fp{double(d(rng)), {p.b1, p.b2}, {p.b0, p.b3}};
    ok = ok && hamiltonian_from_blocks(fp) == build_hamiltonian(fp);
  }
  return {8, "split-quaternion embedding, norm and block assembly (exact)", ok, worst, 0.0, ""};
}

// 9. QR eigenvalues against the characteristic-polynomial oracle.
inline CriterionResult criterion_oracle(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-8);
  std::mt19937 rng(20260009);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const ComplexMatrix m = acceptance_detail::random_matrix(rng, 4);
    const std::vector<Complex> oracle = charpoly_roots(m);
    double gap = 1e300;
    for (std::size_t i = 0; i < oracle.size(); ++i)
      for (std::size_t j = i + 1; j < oracle.size(); ++j)
        gap = std::min(gap, std::abs(oracle[i] - oracle[j]));
    if (gap < 1e-3) continue;  // keep the matching unambiguous
    ++done;

    std::vector<Complex> ev = eigenvalues(m);
    std::vector<bool> used(ev.size(), false);
    for (const Complex& root : oracle) {
      double best = 1e300;
      std::size_t arg = 0;
      for (std::size_t j = 0; j < ev.size(); ++j) {
        if (used[j]) continue;
        const double dd = std::abs(ev[j] - root);
        if (dd < best) {
          best = dd;
          arg = j;
        }
      }
      used[arg] = true;
      worst = std::max(worst, best);
    }
  }
  return {9, "eig_right vs characteristic-polynomial oracle", worst <= tol, worst, tol, ""};
}

// 10. Biortho contract on random diagonalizable pseudo-Hermitian matrices.
inline CriterionResult criterion_biortho_contract(std::optional<double> tol_override) {
  const double tol = tol_override.value_or(1e-9);
  const double map_tol = tol_override.value_or(1e-8);
  std::mt19937 rng(20260010);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  double worst = 0.0, worst_map = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = (trial % 2 == 0) ? 4 : 6;
    // similarity transform of a real diagonal: pseudo-Hermitian with real
    // spectrum; half the runs carry an exact double eigenvalue
    std::vector<Complex> lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = Complex(double(i) + u(rng) * 0.5, 0.0);
    if (trial % 2 == 0) lambda[1] = lambda[0];

    ComplexMatrix s;
    for (;;) {
      s = ComplexMatrix::identity(n) + acceptance_detail::random_matrix(rng, n, 0.4);
      try {
        const ComplexMatrix si = inverse(s);
        if (s.frobenius_norm() * si.frobenius_norm() < 60.0) break;
      } catch (const SingularMatrix&) {
      }
    }
    const ComplexMatrix h = s * ComplexMatrix::diagonal(lambda) * inverse(s);

    const BiorthoSystem sys = build_biortho(h);
    const BiorthoResiduals r = biortho_residuals(sys, h);
    worst = std::max({worst, r.biorthonormality, r.completeness, r.spectral_rep});

    const ComplexMatrix eta_plus = spectral_metric(sys);
    for (const BiorthoLevel& l : sys.levels)
      worst_map = std::max(worst_map, (eta_plus * l.psi - l.phi).norm());
  }
  return {10, "biortho contract on random pseudo-Hermitian matrices",
          worst <= tol && worst_map <= map_tol, worst, tol,
          "eta+ psi vs phi deviation " + std::to_string(worst_map) + " (tol " +
              std::to_string(map_tol) + ")"};
}

inline std::vector<CriterionResult> run_acceptance(std::optional<double> tol_override = {}) {
  return {
      criterion_spectrum(tol_override),
      criterion_metric_classification(tol_override),
      criterion_degeneracy(tol_override),
      criterion_eta_norms(tol_override),
      criterion_abnormal_relations(tol_override),
      criterion_krein(tol_override),
      criterion_exceptional_point(tol_override),
      criterion_splitq(tol_override),
      criterion_oracle(tol_override),
      criterion_biortho_contract(tol_override),
  };
}

}  // namespace kreinspec
