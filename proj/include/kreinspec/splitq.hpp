#pragma once

// Split-quaternion algebra with its 2x2 complex-matrix embedding. The
// split-quaternion generator set (sigma0, -sigma_x, -sigma_y, i*sigma_z)
// has signature (+1, +1, -1); the ordinary quaternion set
// (sigma0, i*sigma_x, i*sigma_y, i*sigma_z) is kept behind the same basis
// switch as a contrast case (all generators square to -1).

#include <array>
#include <cmath>

#include "kreinspec/matrix.hpp"

namespace kreinspec {

inline ComplexMatrix pauli0() { return {{1.0, 0.0}, {0.0, 1.0}}; }
inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() {
  return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

enum class GeneratorBasis { SplitQuaternion, Quaternion };

struct SplitQuaternion {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0, b3 = 0.0;

  bool operator==(const SplitQuaternion&) const = default;
};

inline std::array<ComplexMatrix, 4> generators(GeneratorBasis basis) {
  const Complex i(0.0, 1.0);
  if (basis == GeneratorBasis::SplitQuaternion)
    return {pauli0(), Complex(-1.0) * pauli_x(), Complex(-1.0) * pauli_y(), i * pauli_z()};
  return {pauli0(), i * pauli_x(), i * pauli_y(), i * pauli_z()};
}

// q -> b0*g0 + b1*g1 + b2*g2 + b3*g3 in the chosen generator basis. For the
// split-quaternion basis this is [[b0+i b3, -b1+i b2], [-b1-i b2, b0-i b3]].
inline ComplexMatrix embed(const SplitQuaternion& q,
                           GeneratorBasis basis = GeneratorBasis::SplitQuaternion) {
  const Complex i(0.0, 1.0);
  if (basis == GeneratorBasis::SplitQuaternion) {
    return {{Complex(q.b0) + i * q.b3, Complex(-q.b1) + i * q.b2},
            {Complex(-q.b1) - i * q.b2, Complex(q.b0) - i * q.b3}};
  }
  return {{Complex(q.b0) + i * q.b3, Complex(q.b2) + i * q.b1},
          {Complex(-q.b2) + i * q.b1, Complex(q.b0) - i * q.b3}};
}

// Component product induced by the generator algebra; exact polynomials in
// the inputs, so embed(mul(p,q)) == embed(p)*embed(q) holds entrywise.
inline SplitQuaternion mul(const SplitQuaternion& p, const SplitQuaternion& q,
                           GeneratorBasis basis = GeneratorBasis::SplitQuaternion) {
  if (basis == GeneratorBasis::SplitQuaternion) {
    // g1^2 = g2^2 = +1, g3^2 = -1; g1 g2 = g3 = -g2 g1;
    // g2 g3 = -g1 = -g3 g2; g3 g1 = -g2 = -g1 g3
    return {p.b0 * q.b0 + p.b1 * q.b1 + p.b2 * q.b2 - p.b3 * q.b3,
            p.b0 * q.b1 + p.b1 * q.b0 - p.b2 * q.b3 + p.b3 * q.b2,
            p.b0 * q.b2 + p.b2 * q.b0 + p.b1 * q.b3 - p.b3 * q.b1,
            p.b0 * q.b3 + p.b3 * q.b0 + p.b1 * q.b2 - p.b2 * q.b1};
  }
  // g1^2 = g2^2 = g3^2 = -1; g1 g2 = -g3 = -g2 g1 (left-handed set)
  return {p.b0 * q.b0 - p.b1 * q.b1 - p.b2 * q.b2 - p.b3 * q.b3,
          p.b0 * q.b1 + p.b1 * q.b0 - p.b2 * q.b3 + p.b3 * q.b2,
          p.b0 * q.b2 + p.b2 * q.b0 - p.b3 * q.b1 + p.b1 * q.b3,
          p.b0 * q.b3 + p.b3 * q.b0 - p.b1 * q.b2 + p.b2 * q.b1};
}

inline SplitQuaternion conjugate(const SplitQuaternion& q) {
  return {q.b0, -q.b1, -q.b2, -q.b3};
}

// Algebra norm N(q) = det(embed(q)): indefinite b0^2 + b3^2 - b1^2 - b2^2
// for split-quaternions, the usual sum of squares for quaternions.
inline double algebra_norm(const SplitQuaternion& q,
                           GeneratorBasis basis = GeneratorBasis::SplitQuaternion) {
  if (basis == GeneratorBasis::SplitQuaternion)
    return q.b0 * q.b0 + q.b3 * q.b3 - q.b1 * q.b1 - q.b2 * q.b2;
  return q.b0 * q.b0 + q.b1 * q.b1 + q.b2 * q.b2 + q.b3 * q.b3;
}

}  // namespace kreinspec
