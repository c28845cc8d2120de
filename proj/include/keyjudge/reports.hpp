#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "keyjudge/analytics.hpp"
#include "keyjudge/answer_key.hpp"
#include "keyjudge/error.hpp"
#include "keyjudge/rational.hpp"
#include "keyjudge/scorer.hpp"

namespace keyjudge {

std::string_view version();

/// Settings shared by every command.
struct Config {
  std::filesystem::path key_path;
  std::filesystem::path responses_path;
  std::optional<std::filesystem::path> judgments_path;
  Rational threshold{1, 4};
  std::optional<std::filesystem::path> stopword_path;
  Metric metric = Metric::MeanReciprocalRank;
  int roc_steps = 100;
  std::optional<std::string> run_filter;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::filesystem::path> reference_out_path;  ///< roc: best/worst reference curves
  bool key_stats = false;                                    ///< judge: also print key statistics
};

/// Throws InvalidArgument when the threshold or step count is out of range.
void validate(const Config& config);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitAnalytic = 3 };

ExitCode exit_code_for(ErrorCode code);

// Renderers. Each returns the full report body, header line included.

/// "# keyjudge <version> command=<c> threshold=<m/k> metric=<m> stoplist=<hash>"
std::string report_header(std::string_view command, const Config& config, const StopWordList& stops);

/// One line per judged response: the input columns, then recall m/k, matched, key_size, 1|0.
std::string render_judged(std::span<const JudgedResponse> judged);

std::string render_roc_csv(const RocCurve& curve);
std::string render_reference_csv(const RatePoint& best, std::span<const RatePoint> worst);

/// "rank<TAB>run_id<TAB>score"; tied runs share a rank.
std::string render_ranking(const Ranking& ranking);

/// "n=<n> concordant=<c> discordant=<d> tau=<t>"
std::string render_tau_line(const RankingComparison& comparison);

/// Counts and column percentages; each percentage column is rounded to sum to 100.0.
std::string render_bucket_table(const BucketTable& table);

std::string render_key_statistics(const AnswerKey& key, const KeyStatistics& stats);

struct DisagreementSummary {
  std::size_t rows = 0;
  std::size_t human_correct_recall_at_or_below = 0;
  std::size_t human_incorrect_recall_above = 0;
};

/// Records where the automatic and human verdicts differ, sorted by
/// (question, run, rank), with an empty trailing category column for annotation.
std::string render_disagreements(std::span<const JudgedResponse> judged, const Rational& threshold,
                                 DisagreementSummary& summary);

// Commands. Each loads its inputs from config, writes the report to
// config.out_path (atomically) or to out, and prints a summary. Errors throw.

void cmd_judge(const Config& config, std::ostream& out, std::ostream& err);
void cmd_roc(const Config& config, std::ostream& out, std::ostream& err);
void cmd_rank(const Config& config, std::ostream& out, std::ostream& err);
void cmd_disagreements(const Config& config, std::ostream& out, std::ostream& err);
void cmd_buckets(const Config& config, std::ostream& out, std::ostream& err);
void cmd_key_stats(const Config& config, std::ostream& out, std::ostream& err);

/// Dispatches by name and converts errors into a diagnostic on err plus an exit code.
int run_command(std::string_view command, const Config& config, std::ostream& out, std::ostream& err);

}  // namespace keyjudge
