#pragma once

#include <string>
#include <vector>

#include "ballmap/bricks.hpp"
#include "ballmap/json_io.hpp"

namespace ballmap {

// y = diag(scale) x + shift applied to the image; the set and centre follow.
BrickResult affine_brick(const BrickResult& b, const RVec& scale, const RVec& shift);

// x -> (T_1(x), ..., T_k(x)) on [-1,1]
PolyMap cosine_moment_curve(int k);

// {"family": ..., parameters..., optional "affine": {"scale": [...], "shift": [...]}}
BrickResult brick_from_json(const Json& j);
// Representative parameters of every family, as JSON specs.
std::vector<Json> catalog_specs();

PLUnion plunion_from_json(const Json& j);
Json to_json(const PLUnion& S);

// {"pieces": [[poly, ...], ...], "bbox": {"lo": [...], "hi": [...]}} or a polytope/box/plunion spec
SemialgebraicSet set_from_json(const Json& j);
Json to_json(const SemialgebraicSet& S);

Json to_json(const BrickResult& b);

}  // namespace ballmap
