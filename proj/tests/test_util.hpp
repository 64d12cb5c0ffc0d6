#pragma once
// Shared helpers for the unit/property tests: seeded random generators for
// multivectors, vectors, and matrices.

#include <random>

#include "lg/gc4.hpp"
#include "lg/multivector.hpp"

namespace lgtest {

using Rng = std::mt19937_64;

inline double rand_real(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline lg::Vec3 rand_vec3(Rng& rng) {
  return lg::Vec3(rand_real(rng), rand_real(rng), rand_real(rng));
}

inline lg::Vec4 rand_vec4(Rng& rng) {
  return lg::Vec4(rand_real(rng), rand_real(rng), rand_real(rng),
                  rand_real(rng));
}

inline lg::Multivector rand_mv(Rng& rng) {
  lg::Multivector m;
  for (int i = 0; i < 64; ++i) m.c[i] = rand_real(rng);
  return m;
}

inline lg::Vector33 rand_vector33(Rng& rng) {
  return lg::Vector33(rand_vec3(rng), rand_vec3(rng));
}

// Random invertible vector of R^{3,3} (|x.y| bounded away from 0).
inline lg::Vector33 rand_invertible(Rng& rng) {
  for (;;) {
    lg::Vector33 v = rand_vector33(rng);
    if (std::abs(v.x.dot(v.y)) > 0.1) return v;
  }
}

inline lg::Mat4 rand_mat4(Rng& rng) {
  lg::Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rand_real(rng);
  return m;
}

// Random element of SL(4): random matrix, retried until well-conditioned,
// scaled to determinant +1.
inline lg::Mat4 rand_sl4(Rng& rng) {
  for (;;) {
    lg::Mat4 m = rand_mat4(rng);
    double d = m.determinant();
    if (std::abs(d) < 0.05) continue;
    m *= std::pow(std::abs(d), -0.25);
    if (m.determinant() < 0) m.col(0) = (-m.col(0)).eval();
    return m;
  }
}

// Random rotation matrix via quaternion-free orthonormalization.
inline lg::Mat3 rand_rotation(Rng& rng) {
  Eigen::Quaterniond q(rand_real(rng), rand_real(rng), rand_real(rng),
                       rand_real(rng));
  while (q.norm() < 1e-3)
    q = Eigen::Quaterniond(rand_real(rng), rand_real(rng), rand_real(rng),
                           rand_real(rng));
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace lgtest
