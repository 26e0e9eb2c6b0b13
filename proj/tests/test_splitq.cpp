#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kreinspec/matrix.hpp"
#include "kreinspec/splitq.hpp"

using namespace kreinspec;

namespace {

SplitQuaternion random_int_sq(std::mt19937& gen) {
  std::uniform_int_distribution<int> d(-6, 6);
  return {double(d(gen)), double(d(gen)), double(d(gen)), double(d(gen))};
}

}  // namespace

TEST_CASE("pauli algebra") {
  CHECK(pauli_x() * pauli_x() == pauli0());
  CHECK(pauli_y() * pauli_y() == pauli0());
  CHECK(pauli_z() * pauli_z() == pauli0());
  CHECK(pauli_x() * pauli_y() == Complex(0.0, 1.0) * pauli_z());
}

TEST_CASE("unit element is the multiplicative identity") {
  const SplitQuaternion one{1.0, 0.0, 0.0, 0.0};
  const SplitQuaternion q{2.0, -1.0, 3.0, 0.5};
  CHECK(mul(one, q) == q);
  CHECK(mul(q, one) == q);
}

TEST_CASE("split-quaternion generator signature (+1, +1, -1)") {
  const SplitQuaternion e1{0.0, 1.0, 0.0, 0.0};
  const SplitQuaternion e2{0.0, 0.0, 1.0, 0.0};
  const SplitQuaternion e3{0.0, 0.0, 0.0, 1.0};
  CHECK(mul(e1, e1) == SplitQuaternion{1.0, 0.0, 0.0, 0.0});
  CHECK(mul(e2, e2) == SplitQuaternion{1.0, 0.0, 0.0, 0.0});
  CHECK(mul(e3, e3) == SplitQuaternion{-1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("quaternion generators all square to -1") {
  for (int axis = 1; axis <= 3; ++axis) {
    SplitQuaternion e{0.0, 0.0, 0.0, 0.0};
    (axis == 1 ? e.b1 : axis == 2 ? e.b2 : e.b3) = 1.0;
    CHECK(mul(e, e, GeneratorBasis::Quaternion) == SplitQuaternion{-1.0, 0.0, 0.0, 0.0});
    // and the matrix route says the same
    const ComplexMatrix g2 = embed(e, GeneratorBasis::Quaternion) *
                             embed(e, GeneratorBasis::Quaternion);
    CHECK(g2 == Complex(-1.0) * pauli0());
  }
}

TEST_CASE("conjugation gives the algebra norm") {
  const SplitQuaternion q{2.0, 1.0, 1.0, 1.0};
  CHECK(conjugate(q) == SplitQuaternion{2.0, -1.0, -1.0, -1.0});
  CHECK(mul(q, conjugate(q)) == SplitQuaternion{3.0, 0.0, 0.0, 0.0});  // N = 4+1-1-1
  CHECK(algebra_norm(q) == 3.0);
}

TEST_CASE("embedding formula expands the generator combination") {
  const SplitQuaternion q{1.5, -2.0, 0.5, 3.0};
  const auto g = generators(GeneratorBasis::SplitQuaternion);
  const ComplexMatrix direct = Complex(q.b0) * g[0] + Complex(q.b1) * g[1] +
                               Complex(q.b2) * g[2] + Complex(q.b3) * g[3];
  CHECK(embed(q) == direct);
  // explicit entries: [[b0+ib3, -b1+ib2], [-b1-ib2, b0-ib3]]
  CHECK(embed(q)(0, 0) == Complex(1.5, 3.0));
  CHECK(embed(q)(0, 1) == Complex(2.0, 0.5));
  CHECK(embed(q)(1, 0) == Complex(2.0, -0.5));
  CHECK(embed(q)(1, 1) == Complex(1.5, -3.0));

  const Complex det = embed(q)(0, 0) * embed(q)(1, 1) - embed(q)(0, 1) * embed(q)(1, 0);
  CHECK(std::abs(det - Complex(algebra_norm(q))) < 1e-14);
}

TEST_CASE("trivial embeddings") {
  CHECK(embed({1.0, 0.0, 0.0, 0.0}) == pauli0());
  CHECK(embed({0.0, 0.0, 0.0, 1.0}) == Complex(0.0, 1.0) * pauli_z());
}

TEST_CASE("embedding is an algebra homomorphism (both bases, exact)") {
  std::mt19937 gen(99);
  for (const GeneratorBasis basis :
       {GeneratorBasis::SplitQuaternion, GeneratorBasis::Quaternion}) {
    for (int trial = 0; trial < 100; ++trial) {
      const SplitQuaternion p = random_int_sq(gen);
      const SplitQuaternion q = random_int_sq(gen);
      CHECK(embed(mul(p, q, basis), basis) == embed(p, basis) * embed(q, basis));
    }
  }
}

TEST_CASE("norm is multiplicative (exact on integers)") {
  std::mt19937 gen(100);
  for (int trial = 0; trial < 100; ++trial) {
    const SplitQuaternion p = random_int_sq(gen);
    const SplitQuaternion q = random_int_sq(gen);
    CHECK(algebra_norm(mul(p, q)) == algebra_norm(p) * algebra_norm(q));
    CHECK(algebra_norm(mul(p, q, GeneratorBasis::Quaternion), GeneratorBasis::Quaternion) ==
          algebra_norm(p, GeneratorBasis::Quaternion) *
              algebra_norm(q, GeneratorBasis::Quaternion));
  }
}

TEST_CASE("conjugation is an anti-involution") {
  std::mt19937 gen(101);
  for (int trial = 0; trial < 100; ++trial) {
    const SplitQuaternion p = random_int_sq(gen);
    const SplitQuaternion q = random_int_sq(gen);
    CHECK(conjugate(mul(p, q)) == mul(conjugate(q), conjugate(p)));
    CHECK(conjugate(conjugate(p)) == p);
  }
}
