#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "keyjudge/scorer.hpp"

namespace keyjudge {

/// A NIST-style assessor verdict for one ranked response.
struct HumanJudgment {
  std::string run_id;
  std::string question_id;
  std::int64_t rank = 1;
  bool correct = false;

  friend bool operator==(const HumanJudgment&, const HumanJudgment&) = default;
};

/// "run_id<TAB>question_id<TAB>rank<TAB>response_text"; everything after the
/// third tab is the text. Blank and '#' lines are skipped. Throws ParseError.
std::vector<Response> read_responses(std::istream& in);

/// "run_id<TAB>question_id<TAB>rank<TAB>0|1". Throws ParseError, including on a
/// repeated (run, question, rank).
std::vector<HumanJudgment> read_judgments(std::istream& in);

/// Fills JudgedResponse::human from matching (run, question, rank) records.
/// Returns how many records found a match.
std::size_t attach_human_judgments(std::vector<JudgedResponse>& judged,
                                   const std::vector<HumanJudgment>& judgments);

/// Throws Error(Io) if the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace keyjudge
