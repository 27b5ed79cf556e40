#include "cvxo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvxo {

namespace {

Vec clamp_to_box(const Vec& p, const Vec& lo, const Vec& hi) {
  Vec q = p;
  for (int i = 0; i < p.size(); ++i) q[i] = std::min(std::max(p[i], lo[i]), hi[i]);
  return q;
}

// Any unit vector orthogonal to the unit vector h.
Vec orthogonal_unit(const Vec& h) {
  int k = 0;
  for (int i = 1; i < h.size(); ++i)
    if (std::abs(h[i]) < std::abs(h[k])) k = i;
  Vec e = Vec::Zero(h.size());
  e[k] = 1.0;
  Vec w = e - h[k] * h;
  return w / w.norm();
}

// Projection onto {x : <h,x> <= t} ∩ B(0,rho), h unit, rho > |t|.
// The nearest point is either p itself, its halfspace projection, its ball
// projection, or the rim {<h,x>=t, ||x||=rho}; KKT case analysis.
Vec project_capped(const Vec& p, const Vec& h, double t, double rho) {
  double hp = h.dot(p);
  if (hp <= t && p.norm() <= rho) return p;

  Vec best;
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec& q) {
    if (h.dot(q) <= t + 1e-12 && q.norm() <= rho + 1e-12) {
      double d = (p - q).norm();
      if (d < best_d) {
        best_d = d;
        best = q;
      }
    }
  };
  if (hp > t) consider(p - (hp - t) * h);
  double pn = p.norm();
  if (pn > rho && pn > 0.0) consider((rho / pn) * p);
  Vec perp = p - hp * h;
  double pernorm = perp.norm();
  double w = std::sqrt(std::max(0.0, rho * rho - t * t));
  Vec rim = (pernorm > 1e-14) ? Vec(t * h + (w / pernorm) * perp)
                              : Vec(t * h + w * orthogonal_unit(h));
  consider(rim);
  if (!std::isfinite(best_d)) throw std::runtime_error("capped-ball projection failed");
  return best;
}

double capped_support_unit(const Vec& c, const Vec& h, double t, double rho, Vec* point) {
  double ch = c.dot(h);
  if (rho * ch <= t) {
    if (point) *point = rho * c;
    return rho;
  }
  Vec cperp = c - ch * h;
  double cp = cperp.norm();
  double w = std::sqrt(std::max(0.0, rho * rho - t * t));
  if (point) {
    *point = (cp > 1e-14) ? Vec(t * h + (w / cp) * cperp) : Vec(t * h);
  }
  return t * ch + cp * w;
}

}  // namespace

ConvexBody ConvexBody::ball(Vec center, double radius) {
  require(center.size() > 0, "dimension must be positive");
  require(radius > 0.0 && std::isfinite(radius), "ball radius must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::Ball;
  b.dim_ = static_cast<int>(center.size());
  b.ball_center_ = std::move(center);
  b.ball_radius_ = radius;
  b.set_default_frame();
  return b;
}

ConvexBody ConvexBody::axis_box(Vec lo, Vec hi) {
  require(lo.size() == hi.size() && lo.size() > 0, "box bounds dimension mismatch");
  for (int i = 0; i < lo.size(); ++i) require(lo[i] < hi[i], "box bounds must satisfy lo < hi");
  ConvexBody b;
  b.kind_ = BodyKind::AxisBox;
  b.dim_ = static_cast<int>(lo.size());
  b.lo_ = std::move(lo);
  b.hi_ = std::move(hi);
  b.set_default_frame();
  return b;
}

ConvexBody ConvexBody::halfspace_polytope(Mat normals, Vec offsets, Vec interior) {
  require(normals.rows() == offsets.size(), "one offset per facet required");
  require(normals.cols() == interior.size() && normals.cols() > 0, "facet dimension mismatch");
  ConvexBody b;
  b.kind_ = BodyKind::HalfspacePolytope;
  b.dim_ = static_cast<int>(normals.cols());
  b.A_ = Mat(normals.rows(), normals.cols());
  b.b_ = Vec(offsets.size());
  for (int i = 0; i < normals.rows(); ++i) {
    double n = normals.row(i).norm();
    require(n > 0.0, "zero facet normal");
    b.A_.row(i) = normals.row(i) / n;
    b.b_[i] = offsets[i] / n;
    require(b.A_.row(i).dot(interior) < b.b_[i], "interior point not strictly feasible");
  }
  b.interior_ = std::move(interior);
  b.set_default_frame();
  return b;
}

ConvexBody ConvexBody::capped_ball(Vec cap_normal, double ball_radius) {
  require(ball_radius > 0.0, "capped ball radius must be positive");
  Vec h = unit_or_throw(cap_normal);
  ConvexBody b;
  b.kind_ = BodyKind::CappedBall;
  b.dim_ = static_cast<int>(h.size());
  b.cap_h_ = std::move(h);
  b.cap_rho_ = ball_radius;
  b.set_default_frame();
  return b;
}

void ConvexBody::set_default_frame() {
  switch (kind_) {
    case BodyKind::Ball:
      x0_ = ball_center_;
      r_ = R_ = ball_radius_;
      break;
    case BodyKind::AxisBox: {
      x0_ = 0.5 * (lo_ + hi_);
      Vec half = 0.5 * (hi_ - lo_);
      r_ = half.minCoeff();
      R_ = half.norm();
      break;
    }
    case BodyKind::CappedBall:
      x0_ = -(cap_rho_ / 2.0) * cap_h_;
      r_ = cap_rho_ / 2.0;
      R_ = 1.5 * cap_rho_;
      break;
    case BodyKind::HalfspacePolytope: {
      x0_ = interior_;
      r_ = (b_ - A_ * x0_).minCoeff();
      if (dim_ <= 3) {
        double mx = 0.0;
        for (const Vec& v : vertices()) mx = std::max(mx, (v - x0_).norm());
        R_ = mx;
      } else {
        // Bounding-box corner bound; valid since K ⊆ AABB(K).
        auto [blo, bhi] = bounding_box();
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
          double d = std::max(std::abs(blo[i] - x0_[i]), std::abs(bhi[i] - x0_[i]));
          s += d * d;
        }
        R_ = std::sqrt(s);
      }
      break;
    }
  }
}

Vec ConvexBody::effective_b() const { return b_.array() + off_; }

bool ConvexBody::contains(const Vec& p) const {
  require(p.size() == dim_, "query dimension mismatch");
  switch (kind_) {
    case BodyKind::Ball:
      return (p - ball_center_).norm() <= ball_radius_ + off_;
    case BodyKind::AxisBox:
      if (off_ <= 0.0) {
        for (int i = 0; i < dim_; ++i)
          if (p[i] < lo_[i] - off_ || p[i] > hi_[i] + off_) return false;
        return true;
      }
      return (p - clamp_to_box(p, lo_, hi_)).norm() <= off_;
    case BodyKind::CappedBall:
      if (off_ <= 0.0)
        return cap_h_.dot(p) <= off_ && p.norm() <= cap_rho_ + off_;
      return (p - project_capped(p, cap_h_, 0.0, cap_rho_)).norm() <= off_;
    case BodyKind::HalfspacePolytope:
      return ((A_ * p - effective_b()).maxCoeff() <= 0.0);
  }
  return false;
}

double ConvexBody::support(const Vec& c) const {
  require(c.size() == dim_, "direction dimension mismatch");
  double cn = c.norm();
  require(cn > 0.0, "support direction must be nonzero");
  Vec u = c / cn;
  double s;
  switch (kind_) {
    case BodyKind::Ball:
      s = u.dot(ball_center_) + (ball_radius_ + off_);
      break;
    case BodyKind::AxisBox: {
      if (off_ <= 0.0) {
        s = 0.0;
        for (int i = 0; i < dim_; ++i) s += u[i] >= 0.0 ? u[i] * (hi_[i] + off_) : u[i] * (lo_[i] - off_);
      } else {
        s = off_;
        for (int i = 0; i < dim_; ++i) s += u[i] >= 0.0 ? u[i] * hi_[i] : u[i] * lo_[i];
      }
      break;
    }
    case BodyKind::CappedBall:
      if (off_ <= 0.0)
        s = capped_support_unit(u, cap_h_, off_, cap_rho_ + off_, nullptr);
      else
        s = capped_support_unit(u, cap_h_, 0.0, cap_rho_, nullptr) + off_;
      break;
    case BodyKind::HalfspacePolytope:
      s = lp_max(A_, effective_b(), u, interior_, nullptr);
      break;
    default:
      throw std::logic_error("unreachable");
  }
  return s * cn;
}

Vec ConvexBody::support_point(const Vec& c) const {
  require(c.size() == dim_, "direction dimension mismatch");
  Vec u = unit_or_throw(c);
  switch (kind_) {
    case BodyKind::Ball:
      return ball_center_ + (ball_radius_ + off_) * u;
    case BodyKind::AxisBox: {
      Vec p(dim_);
      if (off_ <= 0.0) {
        for (int i = 0; i < dim_; ++i) p[i] = u[i] >= 0.0 ? hi_[i] + off_ : lo_[i] - off_;
        return p;
      }
      for (int i = 0; i < dim_; ++i) p[i] = u[i] >= 0.0 ? hi_[i] : lo_[i];
      return p + off_ * u;
    }
    case BodyKind::CappedBall: {
      Vec p;
      if (off_ <= 0.0) {
        capped_support_unit(u, cap_h_, off_, cap_rho_ + off_, &p);
        return p;
      }
      capped_support_unit(u, cap_h_, 0.0, cap_rho_, &p);
      return p + off_ * u;
    }
    case BodyKind::HalfspacePolytope: {
      Vec p;
      lp_max(A_, effective_b(), u, interior_, &p);
      return p;
    }
  }
  throw std::logic_error("unreachable");
}

Vec ConvexBody::separating_normal(const Vec& y) const {
  require(y.size() == dim_, "query dimension mismatch");
  require(!contains(y), "separating_normal requires a non-member point");
  switch (kind_) {
    case BodyKind::Ball:
      return Vec((y - ball_center_).normalized());
    case BodyKind::AxisBox: {
      Vec lo = lo_, hi = hi_;
      if (off_ <= 0.0) {
        lo.array() -= off_;
        hi.array() += off_;
      }
      // Direction from the box projection is valid for the expanded body too.
      Vec q = clamp_to_box(y, lo, hi);
      return Vec((y - q).normalized());
    }
    case BodyKind::CappedBall: {
      double t = off_ <= 0.0 ? off_ : 0.0;
      double rho = off_ <= 0.0 ? cap_rho_ + off_ : cap_rho_;
      Vec q = project_capped(y, cap_h_, t, rho);
      return Vec((y - q).normalized());
    }
    case BodyKind::HalfspacePolytope: {
      Vec viol = A_ * y - effective_b();
      int best;
      viol.maxCoeff(&best);
      return A_.row(best).transpose();
    }
  }
  throw std::logic_error("unreachable");
}

ConvexBody ConvexBody::shifted(double eps) const {
  require(std::isfinite(eps), "offset must be finite");
  require(eps > -r_, "shrink offset must stay below the inner radius");
  ConvexBody b = *this;
  b.off_ += eps;
  b.r_ += eps;
  b.R_ += eps;
  return b;
}

std::pair<Vec, Vec> ConvexBody::bounding_box() const {
  Vec lo(dim_), hi(dim_);
  for (int i = 0; i < dim_; ++i) {
    Vec e = Vec::Zero(dim_);
    e[i] = 1.0;
    hi[i] = support(e);
    e[i] = -1.0;
    lo[i] = -support(e);
  }
  return {lo, hi};
}

ConvexBody ConvexBody::with_frame(Vec center, double inner_r, double outer_r) const {
  require(inner_r > 0.0 && outer_r >= inner_r, "frame radii must satisfy 0 < r <= R");
  require(center.size() == dim_, "frame center dimension mismatch");
  ConvexBody b = *this;
  b.x0_ = std::move(center);
  b.r_ = inner_r;
  b.R_ = outer_r;
  return b;
}

void ConvexBody::validate_frame(int samples, Rng& rng) const {
  for (int s = 0; s < samples; ++s) {
    Vec dir = random_unit(dim_, rng);
    Vec p = x0_ + (r_ * (1.0 - 1e-12)) * dir;
    if (!contains(p)) throw std::runtime_error("frame check failed: B(x0,r) not inside body");
    if (support(dir) > dir.dot(x0_) + R_ + 1e-9)
      throw std::runtime_error("frame check failed: body not inside B(x0,R)");
  }
}

Vec ConvexBody::sample_point(Rng& rng) const {
  auto [lo, hi] = bounding_box();
  for (int tries = 0; tries < 100000; ++tries) {
    Vec p(dim_);
    for (int i = 0; i < dim_; ++i) p[i] = rng.uniform(lo[i], hi[i]);
    if (contains(p)) return p;
  }
  throw std::runtime_error("sample_point: rejection sampling failed");
}

const Mat& ConvexBody::facet_normals() const {
  require(kind_ == BodyKind::HalfspacePolytope, "facets only exist for polytopes");
  return A_;
}

const Vec& ConvexBody::facet_offsets() const {
  require(kind_ == BodyKind::HalfspacePolytope, "facets only exist for polytopes");
  return b_;
}

const Vec& ConvexBody::polytope_interior() const {
  require(kind_ == BodyKind::HalfspacePolytope, "facets only exist for polytopes");
  return interior_;
}

std::vector<Vec> ConvexBody::vertices() const {
  require(kind_ == BodyKind::HalfspacePolytope, "vertex enumeration only for polytopes");
  require(dim_ <= 3, "vertex enumeration only for dim <= 3");
  const Vec beff = effective_b();
  const int m = static_cast<int>(A_.rows());
  std::vector<Vec> out;
  std::vector<int> idx(dim_);
  // all dim_-subsets of facets
  auto emit = [&](const std::vector<int>& sel) {
    Mat S(dim_, dim_);
    Vec t(dim_);
    for (int i = 0; i < dim_; ++i) {
      S.row(i) = A_.row(sel[i]);
      t[i] = beff[sel[i]];
    }
    Eigen::FullPivLU<Mat> lu(S);
    if (!lu.isInvertible()) return;
    Vec v = lu.solve(t);
    if ((A_ * v - beff).maxCoeff() > 1e-9) return;
    for (const Vec& w : out)
      if ((w - v).norm() < 1e-9) return;
    out.push_back(v);
  };
  if (dim_ == 1) {
    for (int i = 0; i < m; ++i) emit({i});
  } else if (dim_ == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) emit({i, j});
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) emit({i, j, k});
  }
  return out;
}

double lp_max(const Mat& A, const Vec& b, const Vec& c, const Vec& interior, Vec* argmax) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (n <= 3) {
    // vertex enumeration through a temporary polytope body
    ConvexBody poly = ConvexBody::halfspace_polytope(A, b, interior);
    double best = -std::numeric_limits<double>::infinity();
    Vec bestv;
    for (const Vec& v : poly.vertices()) {
      double val = c.dot(v);
      if (val > best) {
        best = val;
        bestv = v;
      }
    }
    if (!std::isfinite(best)) throw std::runtime_error("lp_max: no vertex found");
    if (argmax) *argmax = bestv;
    return best;
  }

  // Active-set ascent from the strictly feasible interior point.
  Vec x = interior;
  std::vector<int> W;
  const double tol = 1e-11;
  for (int iter = 0; iter < 200 * (m + n); ++iter) {
    Vec d;
    if (W.empty()) {
      d = c;
    } else {
      Mat Aw(static_cast<int>(W.size()), n);
      for (size_t i = 0; i < W.size(); ++i) Aw.row(static_cast<int>(i)) = A.row(W[i]);
      // project c onto null(Aw)
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(Aw.transpose());
      Vec lambda = cod.pseudoInverse() * c;
      d = c - Aw.transpose() * lambda;
      if (d.norm() <= tol * std::max(1.0, c.norm())) {
        // KKT: optimal iff multipliers nonnegative; otherwise drop one (Bland)
        int drop = -1;
        for (size_t i = 0; i < W.size(); ++i)
          if (lambda[static_cast<int>(i)] < -tol) {
            drop = static_cast<int>(i);
            break;
          }
        if (drop < 0) {
          if (argmax) *argmax = x;
          return c.dot(x);
        }
        W.erase(W.begin() + drop);
        continue;
      }
    }
    // step to the first blocking facet
    double alpha = std::numeric_limits<double>::infinity();
    int block = -1;
    for (int i = 0; i < m; ++i) {
      double ad = A.row(i).dot(d);
      if (ad > tol) {
        double step = (b[i] - A.row(i).dot(x)) / ad;
        if (step < alpha - 1e-15 || (step < alpha + 1e-15 && (block < 0 || i < block))) {
          alpha = std::max(step, 0.0);
          block = i;
        }
      }
    }
    if (block < 0) throw std::runtime_error("lp_max: unbounded polytope");
    x += alpha * d;
    W.push_back(block);
    if (static_cast<int>(W.size()) > n) {
      // keep W at most n rows; recompute from scratch next round
      std::sort(W.begin(), W.end());
      W.erase(std::unique(W.begin(), W.end()), W.end());
      while (static_cast<int>(W.size()) > n) W.erase(W.begin());
    }
  }
  throw std::runtime_error("lp_max: iteration limit (degenerate polytope?)");
}

}  // namespace cvxo
