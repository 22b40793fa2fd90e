#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "hamcoh/cohomology.hpp"

namespace hamcoh {

struct RenderOptions {
  bool ascii = false;        // "." instead of the middle dot
  bool merged_rows = false;  // one "±g" row when rows g and -g agree
  int k_min = 1;
  std::optional<int> k_max;  // default N
  bool footnote = true;      // the omitted H^0_0 line
};

// Blank cell for dim C = 0, a dot for dim H = 0, the dimension otherwise.
std::string render_text(const CohomologyTable& t, const RenderOptions& opts = {});
// g,k,dim_C,rank_in,rank_out,dim_H,provenance,source_g,source_k
std::string render_csv(const CohomologyTable& t);
nlohmann::json table_to_json(const CohomologyTable& t, bool wall_times = true);

}  // namespace hamcoh
