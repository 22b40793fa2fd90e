#include "doctest.h"

#include "hamcoh/cohomology.hpp"
#include "hamcoh/render.hpp"

using namespace hamcoh;

namespace {

CohomologyTable table() {
  return full_table(structure_constants({Family::h, 2, 3, Grading::symmetric}),
                    PruningOptions::all());
}

}  // namespace

TEST_CASE("ascii fallback") {
  const auto text = render_text(table(), {.ascii = true});
  CHECK(text.find("·") == std::string::npos);
  CHECK(text.find(" .") != std::string::npos);
}

TEST_CASE("merged rows") {
  const auto text = render_text(table(), {.merged_rows = true});
  CHECK(text.find("±3 |  1  1  1  2  2  2  1  1  1\n") != std::string::npos);
  CHECK(text.find("-3 |") == std::string::npos);
  CHECK(text.find("\n  0 |") != std::string::npos);
}

TEST_CASE("no trailing spaces, fixed widths") {
  const auto text = render_text(table());
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    REQUIRE(end != std::string::npos);
    if (end > start) CHECK(text[end - 1] != ' ');
    start = end + 1;
  }
}

TEST_CASE("k range") {
  const auto text = render_text(table(), {.k_min = 2, .k_max = 3, .footnote = false});
  CHECK(text.rfind("g\\k | 2 3\n", 0) == 0);
}

TEST_CASE("csv and json mirrors") {
  const auto t = table();
  const auto csv = render_csv(t);
  CHECK(csv.rfind("g,k,dim_C,rank_in,rank_out,dim_H,provenance,source_g,source_k\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 109);
  CHECK(csv.find("-3,1,1,0,0,1,by_prop1,3,1\n") != std::string::npos);
  const auto j = table_to_json(t, false);
  CHECK(j["entries"].size() == 108);
  CHECK(j["spec"]["family"] == "h");
  CHECK_FALSE(j["entries"][0].contains("wall_time_ms"));
  CHECK(table_to_json(t, false).dump() == table_to_json(table(), false).dump());
}
