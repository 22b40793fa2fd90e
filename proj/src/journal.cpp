#include "hamcoh/journal.hpp"

#include <filesystem>

#include "hamcoh/algebra_io.hpp"
#include "hamcoh/error.hpp"

namespace hamcoh {

nlohmann::json to_json(const JournalRecord& r) {
  auto j = spec_to_json(r.spec);
  j["g"] = r.box.g;
  j["k"] = r.box.k;
  j["dim_C"] = r.entry.dim_c;
  j["rank_in"] = r.entry.rank_in ? nlohmann::json(*r.entry.rank_in) : nlohmann::json();
  j["rank_out"] = r.entry.rank_out ? nlohmann::json(*r.entry.rank_out) : nlohmann::json();
  j["dim_H"] = r.entry.dim_h;
  j["provenance"] = std::string(to_string(r.entry.provenance));
  j["wall_time_ms"] = r.entry.wall_time_ms;
  return j;
}

std::optional<JournalRecord> parse_journal_line(std::string_view line) {
  const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    JournalRecord r;
    r.spec = spec_from_json(j);
    r.box = {j.at("g").get<int>(), j.at("k").get<int>()};
    r.entry.dim_c = j.at("dim_C").get<std::uint64_t>();
    if (!j.at("rank_in").is_null()) r.entry.rank_in = j.at("rank_in").get<std::uint64_t>();
    if (!j.at("rank_out").is_null()) r.entry.rank_out = j.at("rank_out").get<std::uint64_t>();
    r.entry.dim_h = j.at("dim_H").get<std::uint64_t>();
    r.entry.provenance = parse_provenance(j.at("provenance").get<std::string>());
    r.entry.wall_time_ms = j.value("wall_time_ms", 0.0);
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<JournalRecord> read_journal(const std::string& path) {
  std::vector<JournalRecord> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line))
    if (auto r = parse_journal_line(line)) out.push_back(std::move(*r));
  return out;
}

JournalWriter::JournalWriter(const std::string& path) {
  // A run killed mid-write leaves a partial last line; start on a fresh one.
  bool needs_newline = false;
  if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
    std::ifstream in(path, std::ios::binary);
    in.seekg(-1, std::ios::end);
    needs_newline = in.get() != '\n';
  }
  out_.open(path, std::ios::app);
  if (!out_) throw ConfigError("cannot open journal " + path);
  if (needs_newline) out_ << '\n' << std::flush;
}

void JournalWriter::append(const JournalRecord& r) {
  const auto line = to_json(r).dump();
  std::lock_guard lock(mutex_);
  out_ << line << '\n' << std::flush;
}

}  // namespace hamcoh
