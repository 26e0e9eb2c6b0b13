#pragma once

// The closed-form four-level model: a traceless pseudo-Hermitian Hamiltonian
// built from split-quaternion blocks,
//
//       H = [ a0        0        iB*   iA* ]
//           [ 0         a0       iA    iB  ]
//           [ iB       -iA*     -a0    0   ]
//           [-iA        iB*      0    -a0  ],
//
// with A, B complex. H^2 = D * I with discriminant D = a0^2 + |A|^2 - |B|^2,
// so the spectrum is +/- sqrt(D), each twofold degenerate: real for D > 0,
// an imaginary conjugate pair for D < 0, and an exceptional point at D = 0.
// The analytic eigenvectors, their duals, the indefinite metric
// eta = diag(1, -1, -1, 1) and the k-normalization are all available in
// closed form, which makes this model the oracle for the numeric pipeline.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kreinspec/antilinear.hpp"
#include "kreinspec/errors.hpp"
#include "kreinspec/kreindeg.hpp"
#include "kreinspec/matrix.hpp"
#include "kreinspec/splitq.hpp"
#include "kreinspec/tolerances.hpp"

namespace kreinspec {

struct FourLevelParams {
  double a0 = 0.0;
  Complex A;  // b1 + i b2 in split-quaternion components
  Complex B;  // b0 + i b3

  bool finite() const {
    return std::isfinite(a0) && is_finite(A) && is_finite(B);
  }
};

inline double discriminant(const FourLevelParams& p) {
  return p.a0 * p.a0 + std::norm(p.A) - std::norm(p.B);
}

inline double param_scale(const FourLevelParams& p) {
  return p.a0 * p.a0 + std::norm(p.A) + std::norm(p.B);
}

// The indefinite metric diag(sigma_z, -sigma_z) that anticommutes with PT.
inline ComplexMatrix indefinite_metric_4() {
  return ComplexMatrix::diagonal({1.0, -1.0, -1.0, 1.0});
}

inline ComplexMatrix build_hamiltonian(const FourLevelParams& p) {
  if (!p.finite()) throw InvalidValue("build_hamiltonian: non-finite parameters");
  const Complex i(0.0, 1.0);
  const Complex a0(p.a0);
  return {{a0, 0.0, i * std::conj(p.B), i * std::conj(p.A)},
          {0.0, a0, i * p.A, i * p.B},
          {i * p.B, -i * std::conj(p.A), -a0, 0.0},
          {-i * p.A, i * std::conj(p.B), 0.0, -a0}};
}

// Same matrix assembled blockwise from the split-quaternion embedding
// q = (Re B, Re A, Im A, Im B): upper-right block i*embed(conj q),
// lower-left block i*embed(q), diagonal +/- a0. Exact for exact inputs;
// cross-checks the explicit layout above entrywise.
inline ComplexMatrix hamiltonian_from_blocks(const FourLevelParams& p) {
  if (!p.finite()) throw InvalidValue("hamiltonian_from_blocks: non-finite parameters");
  const SplitQuaternion q{p.B.real(), p.A.real(), p.A.imag(), p.B.imag()};
  const ComplexMatrix lower = embed(q);
  const ComplexMatrix upper = embed(conjugate(q));
  const Complex i(0.0, 1.0);
  ComplexMatrix h(4, 4);
  for (std::size_t r = 0; r < 2; ++r) {
    h(r, r) = p.a0;
    h(r + 2, r + 2) = -p.a0;
    for (std::size_t c = 0; c < 2; ++c) {
      h(r, c + 2) = i * upper(r, c);
      h(r + 2, c) = i * lower(r, c);
    }
  }
  return h;
}

enum class SpectrumKind { Real, Broken, Zero };

struct OmegaResult {
  SpectrumKind kind = SpectrumKind::Zero;
  // sqrt(D) for a real spectrum, the decay rate gamma of the +/- i*gamma
  // pair for a broken one, 0 at the exceptional point
  double value = 0.0;
};

inline OmegaResult omega(const FourLevelParams& p) {
  if (!p.finite()) throw InvalidValue("omega: non-finite parameters");
  const double d = discriminant(p);
  const double eps = kPhaseEps * param_scale(p);
  if (d > eps) return {SpectrumKind::Real, std::sqrt(d)};
  if (d < -eps) return {SpectrumKind::Broken, std::sqrt(-d)};
  return {SpectrumKind::Zero, 0.0};
}

struct AnalyticEigensystem {
  double a0 = 0.0;
  double omega = 0.0;
  double k = 0.0;  // 2 * omega * (omega + a0) * k^2 = 1, k chosen real positive
  // doublet members: first index is the eigenvalue sign, second the partner
  ComplexVector psi_mp, psi_mm;  // E = -omega; psi_mm = PT psi_mp
  ComplexVector psi_pp, psi_pm;  // E = +omega; psi_pm = PT psi_pp
  ComplexVector phi_mp, phi_mm;  // duals: phi = eta psi
  ComplexVector phi_pp, phi_pm;
};

inline AnalyticEigensystem analytic_eigensystem(const FourLevelParams& p) {
  if (!p.finite()) throw InvalidValue("analytic_eigensystem: non-finite parameters");
  const double d = discriminant(p);
  const double scale = param_scale(p);
  if (!(d > kPhaseEps * scale))
    throw BrokenPhase("analytic_eigensystem: discriminant " + std::to_string(d) +
                      " not positive; no real twofold-degenerate spectrum");
  const double om = std::sqrt(d);
  const double w = om + p.a0;
  if (!(w > kPhaseEps * std::sqrt(scale)))
    throw SingularNormalization("analytic_eigensystem: omega + a0 = " + std::to_string(w) +
                                " vanishes; normalization undefined");

  AnalyticEigensystem sys;
  sys.a0 = p.a0;
  sys.omega = om;
  sys.k = 1.0 / std::sqrt(2.0 * om * w);
  const Complex i(0.0, 1.0);
  const Complex k(sys.k);
  const Complex cw(w);

  sys.psi_mp = ComplexVector{k * i * std::conj(p.A), k * i * p.B, 0.0, -k * cw};
  sys.psi_mm = ComplexVector{-k * i * std::conj(p.B), -k * i * p.A, k * cw, 0.0};
  sys.psi_pp = ComplexVector{k * cw, 0.0, k * i * p.B, -k * i * p.A};
  sys.psi_pm = ComplexVector{0.0, k * cw, -k * i * std::conj(p.A), k * i * std::conj(p.B)};

  const ComplexMatrix eta = indefinite_metric_4();
  sys.phi_mp = eta * sys.psi_mp;
  sys.phi_mm = eta * sys.psi_mm;
  sys.phi_pp = eta * sys.psi_pp;
  sys.phi_pm = eta * sys.psi_pm;

  // each closed-form vector must actually solve the eigenproblem
  const ComplexMatrix h = build_hamiltonian(p);
  const double bound = 1e-12 * std::max(h.frobenius_norm(), 1.0);
  const struct {
    const ComplexVector* v;
    double sign;
  } pairs[] = {{&sys.psi_mp, -1.0}, {&sys.psi_mm, -1.0}, {&sys.psi_pp, 1.0}, {&sys.psi_pm, 1.0}};
  for (const auto& pr : pairs) {
    const double r = (h * *pr.v - Complex(pr.sign * om) * *pr.v).norm() / (*pr.v).norm();
    if (r > bound)
      throw NoConvergence("analytic_eigensystem: closed-form eigenvector residual " +
                          std::to_string(r));
  }
  return sys;
}

struct RelationCheck {
  std::string name;
  Complex expected;
  Complex actual;
  double residual = 0.0;
  bool ok = false;
};

struct AbnormalReport {
  std::vector<RelationCheck> pairings;  // 16 inner products, signed diagonal
  double completeness_residual = 0.0;   // signed resolution of identity
  double k_residual = 0.0;              // |2 omega (omega + a0) k^2 - 1|
  double max_pairing_residual = 0.0;
  bool all_ok = false;
};

// Verifies the signed biorthogonality pattern of the analytic eigensystem:
// <psi_x|phi_x> = (+1, -1, +1, -1) on the diagonal, the twelve cross terms
// zero, and the signed completeness sum
// |psi_pp><phi_pp| - |psi_pm><phi_pm| + |psi_mp><phi_mp| - |psi_mm><phi_mm| = 1.
inline AbnormalReport abnormal_relations_check(const AnalyticEigensystem& sys,
                                               double tol = 1e-10) {
  const struct {
    const char* label;
    const ComplexVector* psi;
    const ComplexVector* phi;
    double diag_sign;
  } rows[] = {{"++", &sys.psi_pp, &sys.phi_pp, 1.0},
              {"+-", &sys.psi_pm, &sys.phi_pm, -1.0},
              {"-+", &sys.psi_mp, &sys.phi_mp, 1.0},
              {"--", &sys.psi_mm, &sys.phi_mm, -1.0}};

  AbnormalReport rep;
  for (const auto& r : rows)
    for (const auto& c : rows) {
      RelationCheck chk;
      chk.name = std::string("<psi_") + r.label + "|phi_" + c.label + ">";
      chk.expected = (r.psi == c.psi) ? Complex(r.diag_sign) : Complex(0.0);
      chk.actual = inner(*r.psi, *c.phi);
      chk.residual = std::abs(chk.actual - chk.expected);
      chk.ok = chk.residual <= tol;
      rep.max_pairing_residual = std::max(rep.max_pairing_residual, chk.residual);
      rep.pairings.push_back(std::move(chk));
    }

  ComplexMatrix sum(4, 4);
  for (const auto& r : rows) sum = sum + Complex(r.diag_sign) * outer(*r.psi, *r.phi);
  rep.completeness_residual = (sum - ComplexMatrix::identity(4)).frobenius_norm();

  rep.k_residual = std::abs(2.0 * sys.omega * (sys.omega + sys.a0) * sys.k * sys.k - 1.0);
  rep.all_ok = rep.max_pairing_residual <= tol && rep.completeness_residual <= tol;
  return rep;
}

enum class SweepAxis { A0, AbsA, AbsB, ArgA, ArgB };

inline std::optional<SweepAxis> parse_axis(const std::string& name) {
  if (name == "a0") return SweepAxis::A0;
  if (name == "absA") return SweepAxis::AbsA;
  if (name == "absB") return SweepAxis::AbsB;
  if (name == "argA") return SweepAxis::ArgA;
  if (name == "argB") return SweepAxis::ArgB;
  return std::nullopt;
}

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::A0: return "a0";
    case SweepAxis::AbsA: return "absA";
    case SweepAxis::AbsB: return "absB";
    case SweepAxis::ArgA: return "argA";
    default: return "argB";
  }
}

inline FourLevelParams params_on_axis(const FourLevelParams& base, SweepAxis axis, double t) {
  FourLevelParams p = base;
  switch (axis) {
    case SweepAxis::A0:
      p.a0 = t;
      break;
    case SweepAxis::AbsA:
      p.A = std::polar(t, std::arg(base.A));
      break;
    case SweepAxis::AbsB:
      p.B = std::polar(t, std::arg(base.B));
      break;
    case SweepAxis::ArgA:
      p.A = std::polar(std::abs(base.A), t);
      break;
    case SweepAxis::ArgB:
      p.B = std::polar(std::abs(base.B), t);
      break;
  }
  return p;
}

inline PtPhase phase_from_discriminant(const FourLevelParams& p) {
  const double d = discriminant(p);
  const double eps = kPhaseEps * param_scale(p);
  if (d > eps) return PtPhase::Unbroken;
  if (d < -eps) return PtPhase::Broken;
  return PtPhase::ExceptionalPoint;
}

struct SweepPoint {
  double t = 0.0;
  double d = 0.0;
  PtPhase phase = PtPhase::Unbroken;
};

struct EpBracket {
  double location = 0.0;  // bisected root of D(t)
  double lo = 0.0, hi = 0.0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::AbsB;
  std::vector<SweepPoint> points;
  std::vector<EpBracket> exceptional_points;
};

// Classifies the phase along one parameter axis and bisects every sign
// change of the discriminant down to a bracket of width kEpBisectTol.
inline SweepResult sweep_exceptional_point(const FourLevelParams& base, SweepAxis axis,
                                           double lo, double hi, std::size_t steps) {
  if (!base.finite() || !std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidValue("sweep_exceptional_point: non-finite input");
  if (!(lo < hi)) throw InvalidValue("sweep_exceptional_point: empty range, lo >= hi");
  if (steps < 2) throw InvalidValue("sweep_exceptional_point: need at least 2 steps");

  SweepResult res;
  res.axis = axis;
  res.points.reserve(steps);
  auto d_at = [&](double t) { return discriminant(params_on_axis(base, axis, t)); };

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const FourLevelParams p = params_on_axis(base, axis, t);
    res.points.push_back({t, discriminant(p), phase_from_discriminant(p)});
  }

  for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
    const SweepPoint& a = res.points[i];
    const SweepPoint& b = res.points[i + 1];
    if (a.phase == PtPhase::ExceptionalPoint) {
      res.exceptional_points.push_back({a.t, a.t, a.t});
      continue;
    }
    if (b.phase == PtPhase::ExceptionalPoint) continue;  // recorded at its own grid point
    if (a.phase == b.phase) continue;

    // bracketed sign change of D; plain bisection
    double ta = a.t, tb = b.t, da = a.d;
    while (tb - ta > kEpBisectTol) {
      const double tm = 0.5 * (ta + tb);
      const double dm = d_at(tm);
      if ((dm > 0.0) == (da > 0.0)) {
        ta = tm;
        da = dm;
      } else {
        tb = tm;
      }
    }
    res.exceptional_points.push_back({0.5 * (ta + tb), ta, tb});
  }
  if (!res.points.empty() && res.points.back().phase == PtPhase::ExceptionalPoint)
    res.exceptional_points.push_back(
        {res.points.back().t, res.points.back().t, res.points.back().t});
  return res;
}

}  // namespace kreinspec
