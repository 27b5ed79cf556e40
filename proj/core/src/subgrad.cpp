#include "cvxo/subgrad.hpp"

#include <cmath>
#include <stdexcept>

namespace cvxo {

FdParams FdParams::classical(int n, double r1, double delta, double rho, double L) {
  FdParams p;
  p.r1 = r1;
  p.delta = delta;
  p.rho = rho;
  p.L = L;
  p.r2 = std::sqrt(delta * r1 * rho / (std::sqrt(static_cast<double>(n)) * L));
  p.validate(n);
  return p;
}

void FdParams::validate(int n) const {
  require(n >= 1, "dimension must be positive");
  require(r1 > 0.0 && L > 0.0 && delta > 0.0, "r1, L, delta must be positive");
  require(rho > 0.0 && rho <= 1.0 / 3.0, "rho must lie in (0, 1/3]");
  require(delta <= r1 * std::sqrt(static_cast<double>(n)) * L / rho,
          "delta exceeds r1*sqrt(n)*L/rho");
  double want = std::sqrt(delta * r1 * rho / (std::sqrt(static_cast<double>(n)) * L));
  require(std::abs(r2 - want) <= 1e-9 * want, "r2 must equal sqrt(delta*r1*rho/(sqrt(n)L))");
  require(r2 <= r1 * (1.0 + 1e-12), "r2 must not exceed r1");
}

Vec fd_gradient(const Evaluator& f, const Vec& x, double r, std::uint64_t* calls) {
  require(r > 0.0, "difference radius must be positive");
  const int n = static_cast<int>(x.size());
  Vec g(n);
  Vec probe = x;
  for (int i = 0; i < n; ++i) {
    probe[i] = x[i] + r;
    double fp = f(probe);
    probe[i] = x[i] - r;
    double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * r);
    if (calls) *calls += 2;
  }
  return g;
}

double fd_laplacian(const Evaluator& f, const Vec& x, double r, std::uint64_t* calls) {
  require(r > 0.0, "difference radius must be positive");
  const int n = static_cast<int>(x.size());
  double fx = f(x);
  if (calls) *calls += 1;
  double total = 0.0;
  Vec probe = x;
  for (int i = 0; i < n; ++i) {
    probe[i] = x[i] + r;
    double fp = f(probe);
    probe[i] = x[i] - r;
    double fm = f(probe);
    probe[i] = x[i];
    if (calls) *calls += 2;
    double numer = fp - 2.0 * fx + fm;
    if (numer < -1e-9)
      throw std::runtime_error("fd_laplacian: negative summand, evaluator not convex");
    total += numer / (r * r);
  }
  return total;
}

Hypergrid Hypergrid::build(double r1, double r2, double tol) {
  require(r1 > 0.0 && r2 > 0.0 && r2 <= r1 * (1.0 + 1e-12), "need 0 < r2 <= r1");
  Hypergrid g;
  g.r1 = r1;
  int k_min = static_cast<int>(std::ceil(std::log2(r1 / r2)));
  for (int k = std::max(k_min, 0); k <= 62; ++k) {
    double s = std::ldexp(r1, -k);
    double snapped = std::round(r2 / s) * s;
    if (snapped > 0.0 && std::abs(snapped - r2) <= tol) {
      g.k = k;
      g.spacing = s;
      return g;
    }
  }
  throw std::runtime_error("hypergrid: no spacing snaps r2 within tolerance");
}

double Hypergrid::snap(double x) const { return std::round(x / spacing) * spacing; }

Vec Hypergrid::sample(int n, Rng& rng) const {
  const std::uint64_t per_axis = (1ULL << (k + 1)) + 1ULL;
  Vec z(n);
  for (int i = 0; i < n; ++i)
    z[i] = -r1 + static_cast<double>(rng.uniform_int(per_axis)) * spacing;
  return z;
}

GradientReport classical_subgradient(const Evaluator& f_approx, int n, const FdParams& params,
                                     Rng& rng) {
  params.validate(n);
  Hypergrid grid = Hypergrid::build(params.r1, params.r2);
  double r2 = grid.snap(params.r2);
  Vec z = grid.sample(n, rng);
  GradientReport rep;
  rep.z_used = z;
  rep.method = GradientMethod::ClassicalFd;
  rep.subgradient = fd_gradient(f_approx, z, r2, &rep.evaluator_calls);
  double nd = static_cast<double>(n);
  rep.slack_a = 1.5 * std::pow(nd, 0.75) * std::sqrt(params.delta * params.L / (params.rho * params.r1));
  rep.slack_b = 2.0 * params.L * std::sqrt(nd) * params.r1;
  return rep;
}

}  // namespace cvxo
