#include "cvxo/body_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cvxo {

namespace {

using nlohmann::json;

Vec vec_from_json(const json& j) {
  Vec v(j.size());
  int i = 0;
  for (const auto& x : j) v[i++] = x.get<double>();
  return v;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

ConvexBody parse_body(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  ConvexBody body = [&]() {
    if (kind == "ball") return ConvexBody::ball(vec_from_json(j.at("center")), j.at("radius").get<double>());
    if (kind == "box") return ConvexBody::axis_box(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")));
    if (kind == "capped_ball")
      return ConvexBody::capped_ball(vec_from_json(j.at("normal")), j.at("radius").get<double>());
    if (kind == "polytope") {
      const auto& rows = j.at("normals");
      require(!rows.empty(), "polytope needs at least one facet");
      Mat A(rows.size(), rows[0].size());
      int i = 0;
      for (const auto& row : rows) A.row(i++) = vec_from_json(row).transpose();
      return ConvexBody::halfspace_polytope(A, vec_from_json(j.at("offsets")), vec_from_json(j.at("interior")));
    }
    if (kind == "shifted") return parse_body(j.at("base")).shifted(j.at("offset").get<double>());
    throw std::invalid_argument("unknown body kind: " + kind);
  }();
  if (j.contains("frame")) {
    const auto& f = j.at("frame");
    body = body.with_frame(vec_from_json(f.at("center")), f.at("inner_radius").get<double>(),
                           f.at("outer_radius").get<double>());
  }
  return body;
}

json dump_base(const ConvexBody& b) {
  json j;
  switch (b.kind()) {
    case BodyKind::Ball:
      j["kind"] = "ball";
      j["center"] = vec_to_json(b.ball_center());
      j["radius"] = b.ball_radius();
      break;
    case BodyKind::AxisBox:
      j["kind"] = "box";
      j["lo"] = vec_to_json(b.box_lo());
      j["hi"] = vec_to_json(b.box_hi());
      break;
    case BodyKind::CappedBall:
      j["kind"] = "capped_ball";
      j["normal"] = vec_to_json(b.cap_normal());
      j["radius"] = b.cap_radius();
      break;
    case BodyKind::HalfspacePolytope: {
      j["kind"] = "polytope";
      json rows = json::array();
      const Mat& A = b.facet_normals();
      for (int i = 0; i < A.rows(); ++i) rows.push_back(vec_to_json(A.row(i).transpose()));
      j["normals"] = rows;
      j["offsets"] = vec_to_json(b.facet_offsets());
      j["interior"] = vec_to_json(b.polytope_interior());
      break;
    }
  }
  return j;
}

json dump_body(const ConvexBody& b) {
  json j;
  if (b.minkowski_offset() != 0.0) {
    j["kind"] = "shifted";
    j["base"] = dump_base(b);
    j["offset"] = b.minkowski_offset();
  } else {
    j = dump_base(b);
  }
  j["frame"] = {{"center", vec_to_json(b.center())},
                {"inner_radius", b.inner_radius()},
                {"outer_radius", b.outer_radius()}};
  return j;
}

}  // namespace

ConvexBody body_from_json(const std::string& text) {
  json j = json::parse(text);
  return parse_body(j);
}

std::string body_to_json(const ConvexBody& body) { return dump_body(body).dump(); }

ConvexBody load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open body file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return body_from_json(ss.str());
}

}  // namespace cvxo
