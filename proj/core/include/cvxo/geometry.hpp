#pragma once

#include <utility>
#include <vector>

#include "cvxo/vec.hpp"

namespace cvxo {

// Unit-normal hyperplane {x : <normal,x> = offset}.
struct Hyperplane {
  Vec normal;
  double offset = 0.0;
};

enum class BodyKind { Ball, AxisBox, HalfspacePolytope, CappedBall };

// Analytic convex body with exact membership, support function and
// separating normals. Instances are immutable; a signed Minkowski offset
// accumulated by shifted() realizes B(K,eps) / B(K,-eps).
//
// Conventions: bodies are closed, boundary points are members. For the
// halfspace polytope a positive offset shifts facets outward, which is a
// superset of the true Euclidean expansion (exact for shrinking); ball,
// box and capped-ball offsets are exact in both directions.
class ConvexBody {
 public:
  static ConvexBody ball(Vec center, double radius);
  static ConvexBody axis_box(Vec lo, Vec hi);
  // Rows of `normals` need not be unit; constraints are <a_i,x> <= b_i.
  // `interior` must satisfy all constraints strictly. The region must be
  // bounded; for dim > 3 an outer radius is derived from support calls.
  static ConvexBody halfspace_polytope(Mat normals, Vec offsets, Vec interior);
  // {x : <cap_normal,x> <= 0} ∩ B(0, ball_radius), cap_normal unit.
  static ConvexBody capped_ball(Vec cap_normal, double ball_radius);

  int dim() const { return dim_; }
  BodyKind kind() const { return kind_; }
  double minkowski_offset() const { return off_; }
  double inner_radius() const { return r_; }
  double outer_radius() const { return R_; }
  const Vec& center() const { return x0_; }

  bool contains(const Vec& p) const;
  // sup_{x in body} <c,x> for any nonzero c (not necessarily unit).
  double support(const Vec& c) const;
  // A maximizer attaining support(c).
  Vec support_point(const Vec& c) const;
  // Unit g with <g,x> <= <g,y> for all x in the body; requires !contains(y).
  Vec separating_normal(const Vec& y) const;
  // B(K,eps) for eps >= 0, B(K,-|eps|) for eps < 0; requires eps > -inner_radius().
  ConvexBody shifted(double eps) const;
  // Axis-aligned bounding box from support calls along +-e_i.
  std::pair<Vec, Vec> bounding_box() const;

  // Override the stored frame (x0, r, R); the caller asserts the containment
  // B(x0,r) ⊆ K ⊆ B(x0,R), checkable with validate_frame().
  ConvexBody with_frame(Vec center, double inner_r, double outer_r) const;
  // Sampled check of B(x0,r) ⊆ K plus the support-based check K ⊆ B(x0,R).
  // Throws std::runtime_error on violation.
  void validate_frame(int samples, Rng& rng) const;

  // Rejection-sample a point of the body (bounding box proposal).
  Vec sample_point(Rng& rng) const;

  // Polytope accessors (facets are stored with unit normals).
  const Mat& facet_normals() const;
  const Vec& facet_offsets() const;
  const Vec& polytope_interior() const;
  // Vertex enumeration, dim <= 3 only.
  std::vector<Vec> vertices() const;

  // Base parameters, without the Minkowski offset.
  const Vec& ball_center() const { return ball_center_; }
  double ball_radius() const { return ball_radius_; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const Vec& cap_normal() const { return cap_h_; }
  double cap_radius() const { return cap_rho_; }

 private:
  ConvexBody() = default;
  void set_default_frame();
  // effective polytope offsets b_i + off_
  Vec effective_b() const;

  BodyKind kind_ = BodyKind::Ball;
  int dim_ = 0;
  double off_ = 0.0;

  Vec ball_center_;
  double ball_radius_ = 0.0;

  Vec lo_, hi_;

  Mat A_;  // unit rows
  Vec b_;
  Vec interior_;

  Vec cap_h_;
  double cap_rho_ = 0.0;

  Vec x0_;
  double r_ = 0.0, R_ = 0.0;
};

// max <c,x> s.t. Ax <= b (unit rows not required). Vertex enumeration for
// n <= 3, active-set ascent from the strictly feasible point otherwise.
// Returns the optimal value and sets *argmax if non-null.
double lp_max(const Mat& A, const Vec& b, const Vec& c, const Vec& interior,
              Vec* argmax = nullptr);

}  // namespace cvxo
