#pragma once

#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hamcoh/cohomology.hpp"

namespace hamcoh {

struct JournalRecord {
  AlgebraSpec spec;
  BoxKey box;
  TableEntry entry;
};

// {family, n, p, grading, g, k, dim_C, rank_in, rank_out, dim_H,
//  provenance, wall_time_ms}
nlohmann::json to_json(const JournalRecord& r);
// nullopt for blank, truncated or otherwise malformed lines.
std::optional<JournalRecord> parse_journal_line(std::string_view line);
// Missing file reads as empty.
std::vector<JournalRecord> read_journal(const std::string& path);

// Appends one line per record and flushes it. Safe to share between
// threads.
class JournalWriter {
 public:
  explicit JournalWriter(const std::string& path);
  void append(const JournalRecord& r);

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace hamcoh
