#pragma once

#include <cstdint>
#include <functional>

#include "cvxo/vec.hpp"

namespace cvxo {

using Evaluator = std::function<double(const Vec&)>;

// Parameters of the finite-difference subgradient routine: sampling radius
// r1, difference radius r2, evaluator accuracy delta, failure probability
// rho, Lipschitz constant L.
struct FdParams {
  double r1 = 0.0, r2 = 0.0, delta = 0.0, rho = 0.0, L = 0.0;

  // r2 := sqrt(delta * r1 * rho / (sqrt(n) * L)), the classical choice.
  static FdParams classical(int n, double r1, double delta, double rho, double L);
  void validate(int n) const;
};

// Central difference (f(x+r e_i) - f(x-r e_i)) / (2r) per coordinate.
Vec fd_gradient(const Evaluator& f, const Vec& x, double r, std::uint64_t* calls = nullptr);

// Sum_i (f(x+r e_i) - 2 f(x) + f(x-r e_i)) / r^2. Each summand must be
// nonnegative for convex f; asserted up to roundoff.
double fd_laplacian(const Evaluator& f, const Vec& x, double r, std::uint64_t* calls = nullptr);

enum class GradientMethod { ClassicalFd, JordanSim };

// An approximate subgradient with the certificate it was produced under:
// f(y) >= f(0) + <g,y> - slack_a * ||y|| - slack_b for all y in the domain,
// with probability >= 1 - rho over the draw of z.
struct GradientReport {
  Vec subgradient;
  double slack_a = 0.0;
  double slack_b = 0.0;
  Vec z_used;
  GradientMethod method = GradientMethod::ClassicalFd;
  std::uint64_t evaluator_calls = 0;
};

// Uniform hypergrid over B_inf(0, r1) with spacing r1 / 2^k. Spacing is a
// power-of-two fraction of r1 so that r1 is an exact multiple; k is chosen
// minimal with the snapped r2 an integer multiple within `tol`.
struct Hypergrid {
  double r1 = 0.0;
  double spacing = 0.0;
  int k = 0;

  static Hypergrid build(double r1, double r2, double tol = 1e-12);
  double snap(double x) const;
  // Uniform over the (2^{k+1}+1)^n grid points of [-r1, r1]^n.
  Vec sample(int n, Rng& rng) const;
};

// 2n-evaluation approximate subgradient at 0: pick z uniformly from the
// hypergrid over B_inf(0,r1) and return the central difference gradient of
// the delta-accurate evaluator at z.
GradientReport classical_subgradient(const Evaluator& f_approx, int n, const FdParams& params,
                                     Rng& rng);

}  // namespace cvxo
