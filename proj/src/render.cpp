#include "hamcoh/render.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <vector>

#include "hamcoh/algebra_io.hpp"

namespace hamcoh {
namespace {

// display width of a UTF-8 string
std::size_t width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string pad_left(const std::string& s, std::size_t w) {
  const auto n = width(s);
  return n >= w ? s : std::string(w - n, ' ') + s;
}

std::string cell(const TableEntry* e, bool ascii) {
  if (!e || e->dim_c == 0) return "";
  if (e->dim_h == 0) return ascii ? "." : "·";
  return std::to_string(e->dim_h);
}

void rstrip(std::string& s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
}

}  // namespace

std::string render_text(const CohomologyTable& t, const RenderOptions& opts) {
  const int n = static_cast<int>(t.dim);
  const int k_lo = std::max(0, opts.k_min);
  const int k_hi = std::min(n, opts.k_max.value_or(n));

  std::set<int> grades;
  for (const auto& [key, e] : t.entries)
    if (key.k >= k_lo && key.k <= k_hi && e.dim_c > 0) grades.insert(key.g);

  struct Row {
    std::string label;
    std::vector<std::string> cells;
  };
  const auto row_for = [&](int g) {
    std::vector<std::string> cells;
    for (int k = k_lo; k <= k_hi; ++k) cells.push_back(cell(t.find(g, k), opts.ascii));
    return cells;
  };
  std::vector<Row> rows;
  if (!grades.empty()) {
    if (opts.merged_rows) {
      std::set<int> done;
      for (int g : grades) {
        if (done.count(g)) continue;
        const auto here = row_for(g);
        if (g != 0 && grades.count(-g) && row_for(-g) == here) {
          rows.push_back({"±" + std::to_string(std::abs(g)), here});
          done.insert(-g);
        } else {
          rows.push_back({std::to_string(g), here});
        }
        done.insert(g);
      }
      // merged rows sit at the position of their positive grade
      std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        const auto key = [](const std::string& s) {
          return s.rfind("±", 0) == 0 ? std::stoi(s.substr(2)) : std::stoi(s);
        };
        return key(a.label) < key(b.label);
      });
    } else {
      for (int g = *grades.begin(); g <= *grades.rbegin(); ++g)
        rows.push_back({std::to_string(g), row_for(g)});
    }
  }

  const std::string corner = "g\\k";
  std::size_t label_w = width(corner);
  std::size_t cell_w = 1;
  for (int k = k_lo; k <= k_hi; ++k) cell_w = std::max(cell_w, std::to_string(k).size());
  for (const auto& r : rows) {
    label_w = std::max(label_w, width(r.label));
    for (const auto& c : r.cells) cell_w = std::max(cell_w, width(c));
  }

  std::ostringstream out;
  std::string header = pad_left(corner, label_w) + " |";
  for (int k = k_lo; k <= k_hi; ++k) header += " " + pad_left(std::to_string(k), cell_w);
  out << header << '\n';
  out << std::string(label_w + 1, '-') << '+'
      << std::string((cell_w + 1) * static_cast<std::size_t>(std::max(0, k_hi - k_lo + 1)), '-')
      << '\n';
  for (const auto& r : rows) {
    std::string line = pad_left(r.label, label_w) + " |";
    for (const auto& c : r.cells) line += " " + pad_left(c, cell_w);
    rstrip(line);
    out << line << '\n';
  }
  if (opts.footnote && k_lo > 0) out << "(dim H^0_0 = 1 not shown)\n";
  return out.str();
}

std::string render_csv(const CohomologyTable& t) {
  std::ostringstream out;
  out << "g,k,dim_C,rank_in,rank_out,dim_H,provenance,source_g,source_k\n";
  const auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  for (const auto& [key, e] : t.entries) {
    out << key.g << ',' << key.k << ',' << e.dim_c << ',' << opt(e.rank_in) << ','
        << opt(e.rank_out) << ',' << e.dim_h << ',' << to_string(e.provenance) << ',';
    if (e.source) out << e.source->g << ',' << e.source->k;
    else out << ',';
    out << '\n';
  }
  return out.str();
}

nlohmann::json table_to_json(const CohomologyTable& t, bool wall_times) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, e] : t.entries) {
    nlohmann::json j{{"g", key.g},
                     {"k", key.k},
                     {"dim_C", e.dim_c},
                     {"rank_in", e.rank_in ? nlohmann::json(*e.rank_in) : nlohmann::json()},
                     {"rank_out", e.rank_out ? nlohmann::json(*e.rank_out) : nlohmann::json()},
                     {"dim_H", e.dim_h},
                     {"provenance", std::string(to_string(e.provenance))}};
    if (e.source) j["source"] = {{"g", e.source->g}, {"k", e.source->k}};
    if (wall_times) j["wall_time_ms"] = e.wall_time_ms;
    entries.push_back(std::move(j));
  }
  return {{"spec", spec_to_json(t.spec)},
          {"dim", t.dim},
          {"convention", "homology dim H_{k,g} reported as dim H^k_g at the same grade label"},
          {"entries", std::move(entries)}};
}

}  // namespace hamcoh
