#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "cvxo/rng.hpp"

namespace cvxo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline bool is_unit(const Vec& v, double tol = 1e-12) {
  return std::abs(v.norm() - 1.0) <= tol;
}

inline Vec unit_or_throw(const Vec& v) {
  double n = v.norm();
  require(n > 0.0, "zero vector where a direction is required");
  return v / n;
}

inline Vec random_unit(int n, Rng& rng) {
  Vec v(n);
  double nrm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    nrm = v.norm();
  } while (nrm < 1e-12);
  return v / nrm;
}

// uniform in the n-cube [-a,a]^n
inline Vec random_box(int n, double a, Rng& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-a, a);
  return v;
}

// 64-bit content hash of a vector, mixed with a seed; used by the
// deterministic adversarial boundary policy.
inline std::uint64_t hash_vec(const Vec& v, std::uint64_t seed) {
  std::uint64_t h = seed ^ 0x843b6f1f45fa2077ULL;
  for (int i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    double x = v[i];
    static_assert(sizeof(bits) == sizeof(x));
    __builtin_memcpy(&bits, &x, sizeof(bits));
    h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = splitmix64(h);
  }
  return h;
}

}  // namespace cvxo
