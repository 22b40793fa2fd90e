#pragma once

#include "json.hpp"

#include "hamcoh/algebra.hpp"

namespace hamcoh {

nlohmann::json spec_to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const nlohmann::json& j);

// {spec, basis: [monomial], grades: {standard, symmetric},
//  brackets: [{i, j, terms: [{k, c}]}]}, nonzero brackets with i < j only.
nlohmann::json algebra_to_json(const LiePAlgebra& L);
// Reads the same schema. Structure constants are taken as given, so a
// corrupted table loads and then fails verify_algebra.
LiePAlgebra algebra_from_json(const nlohmann::json& j);

}  // namespace hamcoh
