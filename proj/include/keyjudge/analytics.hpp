#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keyjudge/answer_key.hpp"
#include "keyjudge/rational.hpp"
#include "keyjudge/scorer.hpp"

namespace keyjudge {

/// 2x2 counts indexed [human][automatic], false = incorrect.
struct Confusion {
  std::array<std::array<std::int64_t, 2>, 2> cells{};

  std::int64_t count(bool human, bool automatic) const { return cells[human][automatic]; }
  std::int64_t total() const { return cells[0][0] + cells[0][1] + cells[1][0] + cells[1][1]; }
  std::int64_t agreements() const { return cells[0][0] + cells[1][1]; }
  std::int64_t human_column(bool human) const { return cells[human][0] + cells[human][1]; }
};

struct Agreement {
  Rational fraction;  ///< 0 for an empty list
  Confusion confusion;
};

/// Compares each stored automatic verdict with the human one.
/// Throws MissingHumanJudgment if any record lacks a human judgment.
Agreement agreement(std::span<const JudgedResponse> judged);

/// Same comparison, but re-judging every record at the given threshold.
Agreement agreement_at(std::span<const JudgedResponse> judged, const Rational& threshold);

enum class RecallBucket { Zero, UpToQuarter, UpToHalf, UpToThreeQuarters, BelowOne, One };

inline constexpr std::array<RecallBucket, 6> kAllBuckets = {
    RecallBucket::Zero,           RecallBucket::UpToQuarter, RecallBucket::UpToHalf,
    RecallBucket::UpToThreeQuarters, RecallBucket::BelowOne, RecallBucket::One};

/// Exact intervals: {0}, (0,1/4], (1/4,1/2], (1/2,3/4], (3/4,1), {1}.
RecallBucket bucket_of(const Rational& recall);

/// "0.00", "0.01 to 0.25", ..., "1.00".
std::string_view bucket_label(RecallBucket bucket);

struct BucketRow {
  std::string label;
  std::int64_t human_incorrect = 0;
  std::optional<Rational> human_incorrect_pct;  ///< empty when the column has no records
  std::int64_t human_correct = 0;
  std::optional<Rational> human_correct_pct;
};

struct BucketTable {
  std::array<BucketRow, 6> rows;
  BucketRow totals;
};

/// Recall distribution split by human verdict. Throws MissingHumanJudgment.
BucketTable bucket_table(std::span<const JudgedResponse> judged);

/// threshold is empty for the synthetic accept-all point. Rates are percentages.
struct RocPoint {
  std::optional<Rational> threshold;
  Rational hit_rate;
  Rational false_alarm_rate;

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct RocCurve {
  std::vector<RocPoint> points;  ///< accept-all first, then thresholds ascending
};

/// k/steps for k = 0..steps. Throws InvalidArgument if steps < 1.
std::vector<Rational> threshold_grid(int steps);

/// hit rate = P(recall > t | human correct), false alarm = P(recall > t | human incorrect).
/// thresholds must be ascending within [0,1]. Throws MissingHumanJudgment,
/// NoHumanCorrect, NoHumanIncorrect or InvalidArgument.
RocCurve roc_curve(std::span<const JudgedResponse> judged, std::span<const Rational> thresholds);

struct RatePoint {
  Rational hit_rate;
  Rational false_alarm_rate;
};

/// 100% hits with no false alarms.
RatePoint best_possible_point();

/// The chance diagonal: a judge accepting p% of responses at random, p = 100*k/steps.
std::vector<RatePoint> worst_possible_curve(int steps);

enum class Metric { MeanReciprocalRank, FirstAnswerAccuracy };
enum class JudgmentSource { Automatic, Human };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

using RunScores = std::map<std::string, Rational, std::less<>>;

/// Scores every run present in judged, averaging over all of the given questions
/// (a question a run never answered contributes 0). Throws DuplicateRank, or
/// MissingHumanJudgment when scoring from human verdicts.
RunScores run_scores(std::span<const JudgedResponse> judged, Metric metric, JudgmentSource source,
                     std::span<const std::string> questions);

/// Averages over every question in the key.
RunScores run_scores(std::span<const JudgedResponse> judged, Metric metric, JudgmentSource source,
                     const AnswerKey& key);

/// Runs best-first. tie_group[i] is shared by runs with equal scores and never decreases.
struct Ranking {
  std::vector<std::string> runs;
  std::vector<std::size_t> tie_group;
  std::vector<Rational> scores;
};

/// Descending score; equal scores ordered by run id and placed in one tie group.
Ranking rank_runs(const RunScores& scores);

/// Treats each run as its own tie group.
Ranking strict_ranking(std::vector<std::string> runs);

struct RankingComparison {
  Ranking ranking_a;
  Ranking ranking_b;
  std::int64_t n = 0;
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  Rational tau;
};

/// (concordant - discordant) / (n(n-1)/2); a pair tied in either ranking counts
/// as neither. Throws MismatchedRunSets or TooFewRuns.
RankingComparison kendalls_tau(const Ranking& a, const Ranking& b);

}  // namespace keyjudge
