#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kreinspec/biortho.hpp"
#include "kreinspec/fourlevel.hpp"
#include "kreinspec/linalg.hpp"
#include "kreinspec/matrix.hpp"

using namespace kreinspec;

namespace {

const FourLevelParams kModel{1.0, {0.5, 0.3}, {0.2, -0.1}};

ComplexMatrix random_similarity(std::mt19937& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (;;) {
    ComplexMatrix s = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) += Complex(u(gen), u(gen));
    try {
      if (s.frobenius_norm() * inverse(s).frobenius_norm() < 60.0) return s;
    } catch (const SingularMatrix&) {
    }
  }
}

}  // namespace

TEST_CASE("diagonal Hermitian input gives the standard basis") {
  const BiorthoSystem sys = build_biortho(ComplexMatrix::diagonal({1.0, 2.0}));
  REQUIRE(sys.levels.size() == 2);
  CHECK(std::abs(sys.levels[0].value - Complex(1.0)) < 1e-14);
  CHECK(std::abs(sys.levels[1].value - Complex(2.0)) < 1e-14);
  for (std::size_t n = 0; n < 2; ++n) {
    CHECK((sys.levels[n].psi - sys.levels[n].phi).norm() < 1e-14);
    CHECK(std::abs(sys.levels[n].psi[n] - Complex(1.0)) < 1e-14);
  }
  CHECK(completeness_residual(sys) < 1e-14);
}

TEST_CASE("four-level model: doublet spectrum and residuals") {
  const ComplexMatrix h = build_hamiltonian(kModel);
  const double om = std::sqrt(discriminant(kModel));
  const BiorthoSystem sys = build_biortho(h);

  REQUIRE(sys.levels.size() == 4);
  REQUIRE(sys.clusters.size() == 2);
  for (const auto& c : sys.clusters) CHECK(c.size() == 2);
  const double expect[4] = {-om, -om, om, om};
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(sys.levels[i].value - Complex(expect[i])) < 1e-10);

  const BiorthoResiduals r = biortho_residuals(sys, h);
  CHECK(r.eigen_psi < 1e-10);
  CHECK(r.eigen_phi < 1e-10);
  CHECK(r.biorthonormality < 1e-10);
  CHECK(r.completeness < 1e-10);
  CHECK(r.spectral_rep < 1e-10);
}

TEST_CASE("a Jordan block is defective") {
  const ComplexMatrix j{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(build_biortho(j), Defective);
}

TEST_CASE("completeness residual detects a deleted level") {
  BiorthoSystem sys = build_biortho(build_hamiltonian(kModel));
  CHECK(completeness_residual(sys) < 1e-12);
  sys.levels.pop_back();
  CHECK(completeness_residual(sys) >= 1.0);  // a rank-one term is missing
}

TEST_CASE("spectral metric of a Hermitian matrix is the identity") {
  const ComplexMatrix h{{1.0, Complex(0.0, 0.5)}, {Complex(0.0, -0.5), 2.0}};
  const BiorthoSystem sys = build_biortho(h);
  const ComplexMatrix eta = spectral_metric(sys);
  CHECK((eta - ComplexMatrix::identity(2)).frobenius_norm() < 1e-12);
}

TEST_CASE("spectral metric intertwines the adjoint, positive definite") {
  const ComplexMatrix h = build_hamiltonian(kModel);
  const BiorthoSystem sys = build_biortho(h);
  const ComplexMatrix eta = spectral_metric(sys);

  CHECK((h.adjoint() - eta * h * inverse(eta)).frobenius_norm() <
        1e-10 * h.frobenius_norm());
  // Hermitian positive definite: real positive eigenvalues
  for (const Eigenpair& p : eig_right(eta, 1e-10)) {
    CHECK(std::abs(p.value.imag()) < 1e-12);
    CHECK(p.value.real() > 0.0);
  }
  // eta+ maps psi to phi, and its inverse is the psi projector sum
  for (const BiorthoLevel& l : sys.levels) CHECK((eta * l.psi - l.phi).norm() < 1e-8);
  ComplexMatrix psisum(4, 4);
  for (const BiorthoLevel& l : sys.levels) psisum = psisum + outer(l.psi, l.psi);
  CHECK((inverse(eta) - psisum).frobenius_norm() < 1e-10);
}

TEST_CASE("spectral metric refuses a complex spectrum") {
  const ComplexMatrix h = build_hamiltonian({0.0, {0.0, 0.0}, {1.0, 0.0}});  // broken phase
  const BiorthoSystem sys = build_biortho(h);
  CHECK_THROWS_AS(spectral_metric(sys), ComplexSpectrum);
}

TEST_CASE("broken-phase spectra still build a biorthonormal system") {
  const ComplexMatrix h = build_hamiltonian({0.0, {0.0, 0.0}, {1.0, 0.0}});
  const BiorthoSystem sys = build_biortho(h);
  const BiorthoResiduals r = biortho_residuals(sys, h);
  CHECK(r.biorthonormality < 1e-10);
  CHECK(r.completeness < 1e-10);
  // eigenvalues come out as the conjugate pair +/- i, each twice
  CHECK(std::abs(sys.levels.front().value - Complex(0.0, -1.0)) < 1e-10);
  CHECK(std::abs(sys.levels.back().value - Complex(0.0, 1.0)) < 1e-10);
}

TEST_CASE("random similarity transforms of real diagonals meet the contract") {
  std::mt19937 gen(5150);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = (trial % 2) ? 6 : 4;
    std::vector<Complex> lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = Complex(double(i), 0.0);
    if (trial % 2 == 0) lambda[1] = lambda[0];  // exact double eigenvalue
    const ComplexMatrix s = random_similarity(gen, n);
    const ComplexMatrix h = s * ComplexMatrix::diagonal(lambda) * inverse(s);

    const BiorthoSystem sys = build_biortho(h);
    const BiorthoResiduals r = biortho_residuals(sys, h);
    CHECK(r.eigen_psi <= 1e-9);
    CHECK(r.biorthonormality <= 1e-9);
    CHECK(r.completeness <= 1e-9 * std::sqrt(double(n)));
    CHECK(r.spectral_rep <= 1e-9);
  }
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(build_biortho(ComplexMatrix::identity(2), -1.0), InvalidValue);
  CHECK_THROWS_AS(build_biortho(ComplexMatrix(2, 3)), DimensionMismatch);
}
