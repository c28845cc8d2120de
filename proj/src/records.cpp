#include "keyjudge/records.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <tuple>

#include "keyjudge/error.hpp"

namespace keyjudge {

namespace {

using RecordKey = std::tuple<std::string, std::string, std::int64_t>;

std::vector<std::string_view> split_tabs(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (fields.size() + 1 < max_fields) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) break;
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

std::int64_t parse_rank(std::string_view text, std::size_t line_no) {
  std::int64_t rank = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), rank);
  if (ec != std::errc() || ptr != text.data() + text.size() || rank < 1)
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": rank '" + std::string(text) + "' is not a positive integer");
  return rank;
}

bool skip_line(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line.empty() || line.front() == '#';
}

}  // namespace

std::vector<Response> read_responses(std::istream& in) {
  std::vector<Response> responses;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto fields = split_tabs(line, 4);
    if (fields.size() < 4)
      throw Error(ErrorCode::ParseError, "responses line " + std::to_string(line_no) +
                                             ": expected run_id, question_id, rank and text");
    if (fields[0].empty() || fields[1].empty())
      throw Error(ErrorCode::ParseError, "responses line " + std::to_string(line_no) + ": empty run or question id");
    responses.push_back(Response{std::string(fields[0]), std::string(fields[1]),
                                 parse_rank(fields[2], line_no), std::string(fields[3])});
  }
  return responses;
}

std::vector<HumanJudgment> read_judgments(std::istream& in) {
  std::vector<HumanJudgment> judgments;
  std::map<RecordKey, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto fields = split_tabs(line, 5);
    if (fields.size() != 4)
      throw Error(ErrorCode::ParseError, "judgments line " + std::to_string(line_no) +
                                             ": expected run_id, question_id, rank and 0|1");
    if (fields[3] != "0" && fields[3] != "1")
      throw Error(ErrorCode::ParseError, "judgments line " + std::to_string(line_no) + ": judgment must be 0 or 1");
    HumanJudgment j{std::string(fields[0]), std::string(fields[1]), parse_rank(fields[2], line_no), fields[3] == "1"};
    auto [it, inserted] = seen.emplace(RecordKey{j.run_id, j.question_id, j.rank}, line_no);
    if (!inserted)
      throw Error(ErrorCode::ParseError, "judgments line " + std::to_string(line_no) + ": duplicates line " +
                                             std::to_string(it->second));
    judgments.push_back(std::move(j));
  }
  return judgments;
}

std::size_t attach_human_judgments(std::vector<JudgedResponse>& judged,
                                   const std::vector<HumanJudgment>& judgments) {
  std::map<RecordKey, bool> lookup;
  for (const auto& j : judgments) lookup.emplace(RecordKey{j.run_id, j.question_id, j.rank}, j.correct);
  std::size_t matched = 0;
  for (auto& record : judged) {
    const auto& r = record.response;
    auto it = lookup.find(RecordKey{r.run_id, r.question_id, r.rank});
    if (it == lookup.end()) continue;
    record.human = it->second;
    ++matched;
  }
  return matched;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot replace '" + path.string() + "'");
  }
}

}  // namespace keyjudge
