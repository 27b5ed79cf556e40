#include "cvxo/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace cvxo {

namespace {

// True iff B(K,-eps) is empty, decided from the base parameters
// (erosion by d composes with the accumulated offset to off - d).
bool erosion_empty(const ConvexBody& body, double eps) {
  double toff = body.minkowski_offset() - eps;
  if (toff >= 0.0) return false;
  double d = -toff;
  switch (body.kind()) {
    case BodyKind::Ball:
      return d > body.ball_radius();
    case BodyKind::AxisBox:
      return d > 0.5 * (body.box_hi() - body.box_lo()).minCoeff();
    case BodyKind::CappedBall:
      // {<h,x> <= -d} ∩ B(0,rho-d) nonempty iff rho - d >= d
      return d > 0.5 * body.cap_radius();
    case BodyKind::HalfspacePolytope: {
      // Chebyshev-style feasibility: exists x with Ax <= b - d?
      // Solve max t s.t. Ax + t||a_i|| <= b within the bounding box.
      const Mat& A = body.facet_normals();
      const Vec& b = body.facet_offsets();
      int n = body.dim(), m = static_cast<int>(A.rows());
      auto [lo, hi] = body.bounding_box();
      Mat Aa = Mat::Zero(m + 1, n + 1);
      Vec ba(m + 1);
      for (int i = 0; i < m; ++i) {
        Aa.block(i, 0, 1, n) = A.row(i);
        Aa(i, n) = 1.0;
        ba[i] = b[i] + body.minkowski_offset();
      }
      Aa(m, n) = -1.0;  // t >= -1 keeps the region bounded below
      ba[m] = 1.0;
      Vec c = Vec::Zero(n + 1);
      c[n] = 1.0;
      Vec interior(n + 1);
      interior.head(n) = body.center();
      interior[n] = -0.5;
      // widen with box bounds so the LP region is bounded
      Mat Abox = Mat::Zero(2 * n, n + 1);
      Vec bbox(2 * n);
      for (int i = 0; i < n; ++i) {
        Abox(2 * i, i) = 1.0;
        bbox[2 * i] = hi[i] + 1.0;
        Abox(2 * i + 1, i) = -1.0;
        bbox[2 * i + 1] = -lo[i] + 1.0;
      }
      Mat Afull(Aa.rows() + Abox.rows(), n + 1);
      Afull << Aa, Abox;
      Vec bfull(ba.size() + bbox.size());
      bfull << ba, bbox;
      double cheb = lp_max(Afull, bfull, c, interior, nullptr);
      return d > cheb;
    }
  }
  return false;
}

}  // namespace

int majority_repetitions(double rho, double target) {
  require(target > 0.0, "target error probability must be positive");
  require(rho >= 0.0 && rho < 0.5, "majority vote needs rho < 1/2");
  if (rho == 0.0 || target >= rho) return 1;
  for (int T = 1; T <= 100001; T += 2) {
    // Pr[Bin(T,rho) >= (T+1)/2] via incremental pmf
    double logp = std::log(rho), logq = std::log1p(-rho);
    double tail = 0.0;
    for (int k = (T + 1) / 2; k <= T; ++k) {
      double logpmf = std::lgamma(T + 1.0) - std::lgamma(k + 1.0) - std::lgamma(T - k + 1.0) +
                      k * logp + (T - k) * logq;
      tail += std::exp(logpmf);
    }
    if (tail <= target) return T;
  }
  throw std::runtime_error("majority_repetitions: no feasible repetition count");
}

OracleHandle::OracleHandle(ConvexBody body, OracleKind kind, double eps, double rho,
                           std::uint64_t seed, BoundaryPolicy policy)
    : body_(std::move(body)),
      kind_(kind),
      eps_(eps),
      rho_(rho),
      seed_(seed),
      policy_(policy),
      rng_(seed) {
  require(eps_ >= 0.0, "oracle eps must be nonnegative");
  require(rho_ >= 0.0 && rho_ <= 1.0 / 3.0, "oracle rho must lie in [0, 1/3]");
  if (eps_ > 0.0) {
    // 64-bit floats stand in for the polylog(nR/(r eps)) bits of precision;
    // refuse regimes where the mantissa cannot represent the shell.
    double bits = std::log2(body_.dim() * body_.outer_radius() / (body_.inner_radius() * eps_));
    if (!(bits <= 52.0))
      throw std::domain_error("oracle precision regime exceeds 64-bit float capacity");
  }
}

bool OracleHandle::adversarial_choice(const Vec& y) const {
  return (hash_vec(y, seed_) & 1ULL) == 0ULL;
}

bool OracleHandle::shell_pick_first(const Vec& y) {
  return policy_ == BoundaryPolicy::Adversarial ? adversarial_choice(y) : rng_.bernoulli(0.5);
}

MemVerdict OracleHandle::mem_once(const Vec& y) {
  bool in_exp = eps_ == 0.0 ? body_.contains(y) : body_.shifted(eps_).contains(y);
  bool in_shr = false;
  if (eps_ == 0.0) {
    in_shr = in_exp;
  } else if (!erosion_empty(body_, eps_) && eps_ < body_.inner_radius()) {
    in_shr = body_.shifted(-eps_).contains(y);
  }
  MemVerdict v;
  if (in_shr)
    v = MemVerdict::InExpanded;
  else if (!in_exp)
    v = MemVerdict::NotInShrunk;
  else
    v = shell_pick_first(y) ? MemVerdict::InExpanded : MemVerdict::NotInShrunk;
  if (rho_ > 0.0 && rng_.bernoulli(rho_))
    v = (v == MemVerdict::InExpanded) ? MemVerdict::NotInShrunk : MemVerdict::InExpanded;
  return v;
}

MemVerdict OracleHandle::query_mem(const Vec& y) {
  require(kind_ == OracleKind::Mem, "handle is not a membership oracle");
  require(y.size() == body_.dim(), "query dimension mismatch");
  ledger_.at(OracleKind::Mem)++;
  if (base_ != nullptr) {
    int votes = 0;
    for (int i = 0; i < reps_; ++i)
      if (base_->query_mem(y) == MemVerdict::InExpanded) ++votes;
    return votes * 2 > reps_ ? MemVerdict::InExpanded : MemVerdict::NotInShrunk;
  }
  return mem_once(y);
}

SepAnswer OracleHandle::query_sep(const Vec& y) {
  require(kind_ == OracleKind::Sep, "handle is not a separation oracle");
  require(y.size() == body_.dim(), "query dimension mismatch");
  ledger_.at(OracleKind::Sep)++;

  bool in_exp = eps_ == 0.0 ? body_.contains(y) : body_.shifted(eps_).contains(y);
  bool shrunk_ok = eps_ == 0.0 || (!erosion_empty(body_, eps_) && eps_ < body_.inner_radius());
  ConvexBody shrunk = (eps_ > 0.0 && shrunk_ok) ? body_.shifted(-eps_) : body_;
  bool in_shr = eps_ == 0.0 ? in_exp : (shrunk_ok ? shrunk.contains(y) : false);

  bool answer_in;
  if (in_shr)
    answer_in = true;
  else if (!in_exp)
    answer_in = false;
  else
    answer_in = shell_pick_first(y);

  bool err = rho_ > 0.0 && rng_.bernoulli(rho_);
  if (err) answer_in = !answer_in;

  if (answer_in) return {MemVerdict::InExpanded, std::nullopt};

  Vec g;
  if (err || in_shr) {
    g = random_unit(body_.dim(), rng_);  // unsound branch, injected error
  } else {
    g = shrunk.separating_normal(y);
  }
  return {MemVerdict::NotInShrunk, Hyperplane{g, g.dot(y)}};
}

OptAnswer OracleHandle::query_opt(const Vec& c) {
  require(kind_ == OracleKind::Opt, "handle is not an optimization oracle");
  require(is_unit(c, 1e-9), "optimization direction must be a unit vector");
  ledger_.at(OracleKind::Opt)++;
  bool err = rho_ > 0.0 && rng_.bernoulli(rho_);
  if (err) return {std::nullopt};
  if (eps_ > 0.0 && erosion_empty(body_, eps_)) return {std::nullopt};
  ConvexBody expanded = eps_ > 0.0 ? body_.shifted(eps_) : body_;
  return {expanded.support_point(c)};
}

ViolAnswer OracleHandle::query_viol(const Vec& c, double gamma) {
  require(kind_ == OracleKind::Viol, "handle is not a violation oracle");
  require(is_unit(c, 1e-9), "violation direction must be a unit vector");
  ledger_.at(OracleKind::Viol)++;

  ConvexBody expanded = eps_ > 0.0 ? body_.shifted(eps_) : body_;
  bool shrunk_ok = eps_ == 0.0 || (!erosion_empty(body_, eps_) && eps_ < body_.inner_radius());
  double sup_shr = shrunk_ok ? (eps_ > 0.0 ? body_.shifted(-eps_) : body_).support(c)
                             : -std::numeric_limits<double>::infinity();
  double sup_exp = expanded.support(c);

  bool all_below = sup_shr <= gamma + eps_;
  bool some_above = sup_exp >= gamma - eps_;

  bool pick_below;
  if (all_below && !some_above)
    pick_below = true;
  else if (!all_below)
    pick_below = false;
  else
    pick_below = shell_pick_first(c);

  bool err = rho_ > 0.0 && rng_.bernoulli(rho_);
  if (err) pick_below = !pick_below;

  if (pick_below) return {std::nullopt};
  if (err) {
    // fabricated witness, deliberately outside B(K,eps)
    return {Vec(body_.center() + (body_.outer_radius() + 2.0 * eps_ + 1.0) * c)};
  }
  return {expanded.support_point(c)};
}

ValVerdict OracleHandle::query_val(const Vec& c, double gamma) {
  require(kind_ == OracleKind::Val, "handle is not a validity oracle");
  require(is_unit(c, 1e-9), "validity direction must be a unit vector");
  ledger_.at(OracleKind::Val)++;

  bool shrunk_ok = eps_ == 0.0 || (!erosion_empty(body_, eps_) && eps_ < body_.inner_radius());
  double sup_shr = shrunk_ok ? (eps_ > 0.0 ? body_.shifted(-eps_) : body_).support(c)
                             : -std::numeric_limits<double>::infinity();
  double sup_exp = (eps_ > 0.0 ? body_.shifted(eps_) : body_).support(c);

  bool all_below = sup_shr <= gamma + eps_;
  bool some_above = sup_exp >= gamma - eps_;

  ValVerdict v;
  if (all_below && !some_above)
    v = ValVerdict::AllBelow;
  else if (!all_below)
    v = ValVerdict::SomeAbove;
  else
    v = shell_pick_first(c) ? ValVerdict::AllBelow : ValVerdict::SomeAbove;

  if (rho_ > 0.0 && rng_.bernoulli(rho_))
    v = (v == ValVerdict::AllBelow) ? ValVerdict::SomeAbove : ValVerdict::AllBelow;
  return v;
}

OracleHandle OracleHandle::amplified(OracleHandle& base, double target_rho) {
  require(base.kind_ == OracleKind::Mem, "only membership handles can be amplified");
  require(target_rho > 0.0, "target error probability must be positive");
  OracleHandle h(base.body_, OracleKind::Mem, base.eps_, 0.0, base.seed_ ^ 0x5bf03635ULL,
                 base.policy_);
  h.base_ = &base;
  h.reps_ = majority_repetitions(base.rho_, target_rho);
  return h;
}

}  // namespace cvxo
