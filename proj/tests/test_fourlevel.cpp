#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kreinspec/biortho.hpp"
#include "kreinspec/charpoly.hpp"
#include "kreinspec/fourlevel.hpp"

using namespace kreinspec;

namespace {

FourLevelParams random_params(std::mt19937& gen, double lo = -1.5, double hi = 1.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(gen), {u(gen), u(gen)}, {u(gen), u(gen)}};
}

FourLevelParams random_unbroken(std::mt19937& gen) {
  for (;;) {
    const FourLevelParams p = random_params(gen);
    if (discriminant(p) > 0.1 && std::sqrt(discriminant(p)) + p.a0 > 0.1) return p;
  }
}

}  // namespace

TEST_CASE("hamiltonian layout") {
  // A = B = 0 collapses to the level splitting alone
  CHECK(build_hamiltonian({1.0, {0.0, 0.0}, {0.0, 0.0}}) ==
        ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}));

  // A = 1, everything else zero: only the +/- iA entries survive
  const Complex i(0.0, 1.0);
  const ComplexMatrix h = build_hamiltonian({0.0, {1.0, 0.0}, {0.0, 0.0}});
  const ComplexMatrix expected{{0.0, 0.0, 0.0, i}, {0.0, 0.0, i, 0.0},
                               {0.0, -i, 0.0, 0.0}, {-i, 0.0, 0.0, 0.0}};
  CHECK(h == expected);
}

TEST_CASE("hamiltonian is traceless and generically asymmetric") {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix h = build_hamiltonian(random_params(gen));
    CHECK(h.trace() == Complex(0.0));
  }
  const ComplexMatrix h = build_hamiltonian({1.0, {0.5, 0.3}, {0.2, -0.1}});
  CHECK((h - h.transpose()).frobenius_norm() > 0.1);
}

TEST_CASE("block assembly from split-quaternions is exact") {
  std::mt19937 gen(18);
  std::uniform_int_distribution<int> d(-7, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const FourLevelParams p{double(d(gen)),
                            {double(d(gen)), double(d(gen))},
                            {double(d(gen)), double(d(gen))}};
    CHECK(hamiltonian_from_blocks(p) == build_hamiltonian(p));
  }
}

TEST_CASE("squared hamiltonian is the discriminant times the identity") {
  std::mt19937 gen(19);
  for (int trial = 0; trial < 30; ++trial) {
    const FourLevelParams p = random_params(gen);
    const ComplexMatrix h = build_hamiltonian(p);
    const ComplexMatrix expect = Complex(discriminant(p)) * ComplexMatrix::identity(4);
    CHECK((h * h - expect).frobenius_norm() < 1e-13 * std::max(1.0, h.frobenius_norm()));
  }
}

TEST_CASE("omega classification") {
  const OmegaResult real = omega({3.0, {4.0, 0.0}, {0.0, 0.0}});
  CHECK(real.kind == SpectrumKind::Real);
  CHECK(real.value == 5.0);

  const OmegaResult broken = omega({0.0, {0.0, 0.0}, {1.0, 0.0}});
  CHECK(broken.kind == SpectrumKind::Broken);
  CHECK(broken.value == 1.0);
  // the polynomial oracle confirms eigenvalues +/- i, each twice
  const auto roots = charpoly_roots(build_hamiltonian({0.0, {0.0, 0.0}, {1.0, 0.0}}));
  REQUIRE(roots.size() == 4);
  int plus = 0, minus = 0;
  for (const Complex& r : roots) {
    if (std::abs(r - Complex(0.0, 1.0)) < 1e-9) ++plus;
    if (std::abs(r - Complex(0.0, -1.0)) < 1e-9) ++minus;
  }
  CHECK(plus == 2);
  CHECK(minus == 2);

  CHECK(omega({0.0, {1.0, 0.0}, {1.0, 0.0}}).kind == SpectrumKind::Zero);
}

TEST_CASE("analytic eigensystem solves the eigenproblem") {
  std::mt19937 gen(20);
  for (int trial = 0; trial < 30; ++trial) {
    const FourLevelParams p = random_unbroken(gen);
    const AnalyticEigensystem sys = analytic_eigensystem(p);
    const ComplexMatrix h = build_hamiltonian(p);
    const double om = sys.omega;
    CHECK((h * sys.psi_pp - Complex(om) * sys.psi_pp).norm() < 1e-12 * h.frobenius_norm());
    CHECK((h * sys.psi_pm - Complex(om) * sys.psi_pm).norm() < 1e-12 * h.frobenius_norm());
    CHECK((h * sys.psi_mp - Complex(-om) * sys.psi_mp).norm() < 1e-12 * h.frobenius_norm());
    CHECK((h * sys.psi_mm - Complex(-om) * sys.psi_mm).norm() < 1e-12 * h.frobenius_norm());
    // duals solve the adjoint problem
    CHECK((h.adjoint() * sys.phi_pp - Complex(om) * sys.phi_pp).norm() <
          1e-12 * h.frobenius_norm());
    CHECK((h.adjoint() * sys.phi_mm - Complex(-om) * sys.phi_mm).norm() <
          1e-12 * h.frobenius_norm());
  }
}

TEST_CASE("duals are exactly the metric acting on the eigenvectors") {
  std::mt19937 gen(24);
  const ComplexMatrix eta = indefinite_metric_4();
  for (int trial = 0; trial < 20; ++trial) {
    const AnalyticEigensystem sys = analytic_eigensystem(random_unbroken(gen));
    CHECK((eta * sys.psi_pp - sys.phi_pp).norm() == 0.0);
    CHECK((eta * sys.psi_pm - sys.phi_pm).norm() == 0.0);
    CHECK((eta * sys.psi_mp - sys.phi_mp).norm() == 0.0);
    CHECK((eta * sys.psi_mm - sys.phi_mm).norm() == 0.0);
  }
}

TEST_CASE("normalization constant satisfies its defining relation") {
  std::mt19937 gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const FourLevelParams p = random_unbroken(gen);
    const AnalyticEigensystem sys = analytic_eigensystem(p);
    CHECK(sys.k > 0.0);
    CHECK(std::abs(2.0 * sys.omega * (sys.omega + p.a0) * sys.k * sys.k - 1.0) <= 1e-14);
  }
}

TEST_CASE("abnormal relations: signed diagonal, zero cross terms") {
  const FourLevelParams p{1.0, {0.5, 0.3}, {0.2, -0.1}};
  const AnalyticEigensystem sys = analytic_eigensystem(p);
  CHECK(std::abs(inner(sys.psi_pp, sys.phi_pp) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(inner(sys.psi_pm, sys.phi_pm) - Complex(-1.0)) < 1e-14);
  CHECK(std::abs(inner(sys.psi_mp, sys.phi_mp) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(inner(sys.psi_mm, sys.phi_mm) - Complex(-1.0)) < 1e-14);

  const AbnormalReport rep = abnormal_relations_check(sys, 1e-10);
  CHECK(rep.all_ok);
  CHECK(rep.pairings.size() == 16);
  CHECK(rep.max_pairing_residual <= 1e-12);
  CHECK(rep.completeness_residual <= 1e-12);
  CHECK(rep.k_residual <= 1e-14);
}

TEST_CASE("abnormal relations hold over random parameters, including a0 = 0") {
  std::mt19937 gen(22);
  for (int trial = 0; trial < 40; ++trial) {
    FourLevelParams p = random_unbroken(gen);
    if (trial % 4 == 0) {
      p.a0 = 0.0;
      if (!(discriminant(p) > 0.1)) continue;
    }
    const AbnormalReport rep = abnormal_relations_check(analytic_eigensystem(p), 1e-10);
    CHECK(rep.all_ok);
  }
}

TEST_CASE("perturbing one vector entry flags specific relations") {
  const FourLevelParams p{1.0, {0.5, 0.3}, {0.2, -0.1}};
  AnalyticEigensystem sys = analytic_eigensystem(p);
  sys.psi_pp[0] += 1e-3;
  const AbnormalReport rep = abnormal_relations_check(sys, 1e-10);
  CHECK_FALSE(rep.all_ok);
  int violated = 0;
  for (const RelationCheck& c : rep.pairings) {
    if (!c.ok) {
      ++violated;
      CHECK(c.name.find("psi_++") != std::string::npos);  // only the touched row
    }
  }
  CHECK(violated > 0);
  CHECK(violated <= 4);
}

TEST_CASE("error paths of the analytic eigensystem") {
  CHECK_THROWS_AS(analytic_eigensystem({0.0, {0.0, 0.0}, {1.0, 0.0}}), BrokenPhase);
  CHECK_THROWS_AS(analytic_eigensystem({0.0, {1.0, 0.0}, {1.0, 0.0}}), BrokenPhase);
  // omega = 1 but omega + a0 = 0: normalization breaks down
  CHECK_THROWS_AS(analytic_eigensystem({-1.0, {1.0, 0.0}, {1.0, 0.0}}), SingularNormalization);
}

TEST_CASE("numeric spectrum agrees with the closed form") {
  std::mt19937 gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const FourLevelParams p = random_unbroken(gen);
    const double om = std::sqrt(discriminant(p));
    const BiorthoSystem sys = build_biortho(build_hamiltonian(p));
    const double expect[4] = {-om, -om, om, om};
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(sys.levels[i].value - Complex(expect[i])) <= 1e-9);
  }
}

TEST_CASE("sweep brackets the exceptional point on |B|") {
  const FourLevelParams base{0.0, {1.0, 0.0}, {0.5, 0.0}};
  const SweepResult res = sweep_exceptional_point(base, SweepAxis::AbsB, 0.0, 2.0, 200);
  REQUIRE(res.exceptional_points.size() == 1);
  CHECK(std::abs(res.exceptional_points[0].location - 1.0) <= 1e-8);
  for (const SweepPoint& pt : res.points) {
    if (pt.t < 1.0 - 1e-9) CHECK(pt.phase == PtPhase::Unbroken);
    if (pt.t > 1.0 + 1e-9) CHECK(pt.phase == PtPhase::Broken);
  }
}

TEST_CASE("sweep with a0=3, A=4 finds the boundary at |B| = 5") {
  const FourLevelParams base{3.0, {4.0, 0.0}, {1.0, 0.0}};
  const SweepResult res = sweep_exceptional_point(base, SweepAxis::AbsB, 0.0, 10.0, 101);
  REQUIRE_FALSE(res.exceptional_points.empty());
  CHECK(std::abs(res.exceptional_points[0].location - 5.0) <= 1e-8);
}

TEST_CASE("a0 sweep finds both boundaries of the broken window") {
  // D = t^2 + |A|^2 - |B|^2 = t^2 - 1: broken for |t| < 1
  const FourLevelParams base{0.0, {1.0, 0.0}, {std::sqrt(2.0), 0.0}};
  const SweepResult res = sweep_exceptional_point(base, SweepAxis::A0, -2.0, 2.0, 157);
  REQUIRE(res.exceptional_points.size() == 2);
  CHECK(std::abs(res.exceptional_points[0].location + 1.0) <= 1e-8);
  CHECK(std::abs(res.exceptional_points[1].location - 1.0) <= 1e-8);
}

TEST_CASE("absA sweep crosses into the unbroken phase") {
  // D = t^2 - 1 along |A| with a0 = 0, |B| = 1
  const FourLevelParams base{0.0, {0.5, 0.0}, {0.0, 1.0}};
  const SweepResult res = sweep_exceptional_point(base, SweepAxis::AbsA, 0.0, 2.0, 123);
  REQUIRE(res.exceptional_points.size() == 1);
  CHECK(std::abs(res.exceptional_points[0].location - 1.0) <= 1e-8);
  CHECK(res.points.front().phase == PtPhase::Broken);
  CHECK(res.points.back().phase == PtPhase::Unbroken);
}

TEST_CASE("sweep inside one phase reports nothing") {
  const FourLevelParams base{3.0, {4.0, 0.0}, {1.0, 0.0}};
  const SweepResult res = sweep_exceptional_point(base, SweepAxis::AbsB, 0.0, 2.0, 50);
  CHECK(res.exceptional_points.empty());
  for (const SweepPoint& pt : res.points) CHECK(pt.phase == PtPhase::Unbroken);
}

TEST_CASE("the discriminant ignores coupling phases") {
  const FourLevelParams base{0.5, {1.0, 0.5}, {0.3, -0.2}};
  const SweepResult res =
      sweep_exceptional_point(base, SweepAxis::ArgA, 0.0, 6.283185307179586, 40);
  for (const SweepPoint& pt : res.points) CHECK(std::abs(pt.d - res.points[0].d) < 1e-12);
  const SweepResult res_b =
      sweep_exceptional_point(base, SweepAxis::ArgB, 0.0, 6.283185307179586, 40);
  for (const SweepPoint& pt : res_b.points) CHECK(std::abs(pt.d - res_b.points[0].d) < 1e-12);
}

TEST_CASE("sweep validates its range") {
  const FourLevelParams base{0.0, {1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(sweep_exceptional_point(base, SweepAxis::AbsB, 1.0, 1.0, 10), InvalidValue);
  CHECK_THROWS_AS(sweep_exceptional_point(base, SweepAxis::AbsB, 0.0, 1.0, 1), InvalidValue);
}

TEST_CASE("axis parsing") {
  CHECK(parse_axis("absB") == SweepAxis::AbsB);
  CHECK(parse_axis("a0") == SweepAxis::A0);
  CHECK(parse_axis("argA") == SweepAxis::ArgA);
  CHECK_FALSE(parse_axis("bogus").has_value());
}
