#pragma once

#include <string>

#include "cvxo/geometry.hpp"

namespace cvxo {

// JSON body descriptions, e.g. {"kind":"ball","center":[0,0],"radius":1}.
// See README for the full schema.
ConvexBody body_from_json(const std::string& text);
std::string body_to_json(const ConvexBody& body);
ConvexBody load_body_file(const std::string& path);

}  // namespace cvxo
