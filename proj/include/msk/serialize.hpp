#pragma once

#include <json.hpp>

#include "msk/circle_fun.hpp"
#include "msk/findings.hpp"
#include "msk/inner.hpp"
#include "msk/matops.hpp"
#include "msk/rng.hpp"
#include "msk/tto.hpp"

namespace msk {

// ordered_json keeps object keys in insertion order, so identical inputs
// serialize byte-identically.
using Json = nlohmann::ordered_json;

// Matrices travel as {"re": [[..]], "im": [[..]]}.
Json mat_to_json(const CMat& a);
CMat mat_from_json(const Json& j);

// Grid functions travel by Fourier coefficients:
//   {"shape": [rows, cols], "M": grid, "coeffs": [[k, mat], ...]}
// Coefficients below 1e-15 of the largest are dropped on write.
Json circle_to_json(const CircleFn& f);
CircleFn circle_from_json(const Json& j);

// Inner-function specs (the same JSON the inner constructors emit):
//   {"type": "monomial", "n": N, "d": D}
//   {"type": "bp", "d": D, "factors": [{"w": [re, im], "P": mat}, ...]}
//   {"type": "crofoot", "base": <spec>, "W": mat}
InnerFn inner_from_spec(const Json& spec, int grid);

// Symbol specs: explicit coefficients or a seeded random Laurent symbol.
//   {"coeffs": [[k, mat], ...]} | {"random": {"degree": D, "scale": S}}
CircleFn symbol_from_spec(const Json& spec, int d, int grid, Rng& rng);

Json tto_to_json(const TTOMatrix& t);
Json finding_to_json(const Finding& f);

}  // namespace msk
