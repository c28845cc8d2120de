#include "keyjudge/analytics.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

#include "keyjudge/error.hpp"

namespace keyjudge {

namespace {

bool human_of(const JudgedResponse& record) {
  if (!record.human)
    throw Error(ErrorCode::MissingHumanJudgment,
                "no human judgment for " + record.response.run_id + "/" + record.response.question_id +
                    "/rank " + std::to_string(record.response.rank));
  return *record.human;
}

Rational percent(std::int64_t part, std::int64_t whole) { return Rational(part * 100, whole); }

std::int64_t pairs(std::int64_t n) { return n * (n - 1) / 2; }

// Sorts values ascending and returns the number of strictly inverted pairs.
std::int64_t sort_counting_inversions(std::vector<std::size_t>& values) {
  std::int64_t swaps = 0;
  std::vector<std::size_t> buffer(values.size());
  for (std::size_t width = 1; width < values.size(); width *= 2) {
    for (std::size_t lo = 0; lo < values.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, values.size());
      const std::size_t hi = std::min(lo + 2 * width, values.size());
      std::size_t i = lo, j = mid, out = lo;
      while (i < mid && j < hi) {
        if (values[i] <= values[j]) {
          buffer[out++] = values[i++];
        } else {
          swaps += static_cast<std::int64_t>(mid - i);
          buffer[out++] = values[j++];
        }
      }
      while (i < mid) buffer[out++] = values[i++];
      while (j < hi) buffer[out++] = values[j++];
    }
    values.swap(buffer);
  }
  return swaps;
}

template <typename Range, typename Key>
std::int64_t tied_pairs(const Range& sorted, Key key) {
  std::int64_t ties = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && key(sorted[i]) == key(sorted[i - 1])) {
      ++run;
    } else {
      ties += pairs(run);
      run = 1;
    }
  }
  return ties;
}

void validate_ranking(const Ranking& r, std::string_view name) {
  if (r.tie_group.size() != r.runs.size())
    throw Error(ErrorCode::InvalidArgument, std::string(name) + ": tie groups do not match runs");
  if (!std::is_sorted(r.tie_group.begin(), r.tie_group.end()))
    throw Error(ErrorCode::InvalidArgument, std::string(name) + ": tie groups must not decrease");
}

}  // namespace

Agreement agreement(std::span<const JudgedResponse> judged) {
  Agreement result;
  for (const auto& record : judged) ++result.confusion.cells[human_of(record)][record.automatic.correct];
  const auto total = result.confusion.total();
  result.fraction = total == 0 ? Rational(0) : Rational(result.confusion.agreements(), total);
  return result;
}

Agreement agreement_at(std::span<const JudgedResponse> judged, const Rational& threshold) {
  Agreement result;
  for (const auto& record : judged)
    ++result.confusion.cells[human_of(record)][judge(record.score, threshold).correct];
  const auto total = result.confusion.total();
  result.fraction = total == 0 ? Rational(0) : Rational(result.confusion.agreements(), total);
  return result;
}

RecallBucket bucket_of(const Rational& recall) {
  if (recall <= 0) return RecallBucket::Zero;
  if (recall >= 1) return RecallBucket::One;
  if (recall <= Rational(1, 4)) return RecallBucket::UpToQuarter;
  if (recall <= Rational(1, 2)) return RecallBucket::UpToHalf;
  if (recall <= Rational(3, 4)) return RecallBucket::UpToThreeQuarters;
  return RecallBucket::BelowOne;
}

std::string_view bucket_label(RecallBucket bucket) {
  switch (bucket) {
    case RecallBucket::Zero: return "0.00";
    case RecallBucket::UpToQuarter: return "0.01 to 0.25";
    case RecallBucket::UpToHalf: return "0.26 to 0.50";
    case RecallBucket::UpToThreeQuarters: return "0.51 to 0.75";
    case RecallBucket::BelowOne: return "0.76 to 0.99";
    case RecallBucket::One: return "1.00";
  }
  return "";
}

BucketTable bucket_table(std::span<const JudgedResponse> judged) {
  BucketTable table;
  for (std::size_t i = 0; i < kAllBuckets.size(); ++i) table.rows[i].label = bucket_label(kAllBuckets[i]);
  table.totals.label = "TOTAL";

  for (const auto& record : judged) {
    auto& row = table.rows[static_cast<std::size_t>(bucket_of(record.score.value))];
    if (human_of(record)) {
      ++row.human_correct;
      ++table.totals.human_correct;
    } else {
      ++row.human_incorrect;
      ++table.totals.human_incorrect;
    }
  }

  auto fill = [&](BucketRow& row) {
    if (table.totals.human_incorrect > 0)
      row.human_incorrect_pct = percent(row.human_incorrect, table.totals.human_incorrect);
    if (table.totals.human_correct > 0)
      row.human_correct_pct = percent(row.human_correct, table.totals.human_correct);
  };
  for (auto& row : table.rows) fill(row);
  fill(table.totals);
  return table;
}

std::vector<Rational> threshold_grid(int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "threshold grid needs at least one step");
  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) grid.emplace_back(k, steps);
  return grid;
}

RocCurve roc_curve(std::span<const JudgedResponse> judged, std::span<const Rational> thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 0 || thresholds[i] > 1)
      throw Error(ErrorCode::InvalidArgument, "ROC threshold " + format_fraction(thresholds[i]) + " outside [0,1]");
    if (i > 0 && thresholds[i] < thresholds[i - 1])
      throw Error(ErrorCode::InvalidArgument, "ROC thresholds must be ascending");
  }

  std::vector<Rational> correct_recalls, incorrect_recalls;
  for (const auto& record : judged)
    (human_of(record) ? correct_recalls : incorrect_recalls).push_back(record.score.value);
  if (correct_recalls.empty())
    throw Error(ErrorCode::NoHumanCorrect, "hit rate undefined: no response was judged correct by a human");
  if (incorrect_recalls.empty())
    throw Error(ErrorCode::NoHumanIncorrect, "false alarm rate undefined: no response was judged incorrect by a human");

  std::sort(correct_recalls.begin(), correct_recalls.end());
  std::sort(incorrect_recalls.begin(), incorrect_recalls.end());
  auto above = [](const std::vector<Rational>& sorted, const Rational& t) {
    return static_cast<std::int64_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
  };
  const auto n_correct = static_cast<std::int64_t>(correct_recalls.size());
  const auto n_incorrect = static_cast<std::int64_t>(incorrect_recalls.size());

  RocCurve curve;
  curve.points.reserve(thresholds.size() + 1);
  curve.points.push_back(RocPoint{std::nullopt, Rational(100), Rational(100)});
  for (const auto& t : thresholds)
    curve.points.push_back(RocPoint{t, percent(above(correct_recalls, t), n_correct),
                                    percent(above(incorrect_recalls, t), n_incorrect)});
  return curve;
}

RatePoint best_possible_point() { return RatePoint{Rational(100), Rational(0)}; }

std::vector<RatePoint> worst_possible_curve(int steps) {
  std::vector<RatePoint> curve;
  for (const auto& p : threshold_grid(steps)) curve.push_back(RatePoint{p * 100, p * 100});
  return curve;
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::MeanReciprocalRank: return "mrr";
    case Metric::FirstAnswerAccuracy: return "first-answer";
  }
  return "";
}

std::optional<Metric> parse_metric(std::string_view text) {
  if (text == "mrr") return Metric::MeanReciprocalRank;
  if (text == "first-answer") return Metric::FirstAnswerAccuracy;
  return std::nullopt;
}

RunScores run_scores(std::span<const JudgedResponse> judged, Metric metric, JudgmentSource source,
                     std::span<const std::string> questions) {
  // run -> question -> best (lowest) rank judged correct, 0 when none
  std::map<std::string, std::unordered_map<std::string, std::int64_t>, std::less<>> first_correct;
  std::set<std::tuple<std::string_view, std::string_view, std::int64_t>> seen;

  for (const auto& record : judged) {
    const auto& r = record.response;
    if (!seen.emplace(r.run_id, r.question_id, r.rank).second)
      throw Error(ErrorCode::DuplicateRank, "run '" + r.run_id + "' has two responses at rank " +
                                                std::to_string(r.rank) + " for question '" + r.question_id + "'");
    const bool correct = source == JudgmentSource::Human ? human_of(record) : record.automatic.correct;
    auto& per_question = first_correct[r.run_id];
    auto [it, inserted] = per_question.try_emplace(r.question_id, 0);
    if (correct && (it->second == 0 || r.rank < it->second)) it->second = r.rank;
  }

  RunScores scores;
  if (questions.empty()) {
    for (const auto& [run, unused] : first_correct) scores.emplace(run, Rational(0));
    return scores;
  }
  const auto n_questions = static_cast<std::int64_t>(questions.size());
  for (const auto& [run, per_question] : first_correct) {
    Rational total(0);
    for (const auto& q : questions) {
      auto it = per_question.find(q);
      if (it == per_question.end() || it->second == 0) continue;
      if (metric == Metric::MeanReciprocalRank)
        total += Rational(1, it->second);
      else if (it->second == 1)
        total += 1;
    }
    scores.emplace(run, total / n_questions);
  }
  return scores;
}

RunScores run_scores(std::span<const JudgedResponse> judged, Metric metric, JudgmentSource source,
                     const AnswerKey& key) {
  std::vector<std::string> questions;
  questions.reserve(key.size());
  for (const auto& [qid, answers] : key.entries()) questions.push_back(qid);
  return run_scores(judged, metric, source, questions);
}

Ranking rank_runs(const RunScores& scores) {
  std::vector<std::pair<std::string, Rational>> sorted(scores.begin(), scores.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });

  Ranking ranking;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::size_t group = 0;
    if (i > 0) group = ranking.tie_group.back() + (sorted[i].second == sorted[i - 1].second ? 0 : 1);
    ranking.runs.push_back(sorted[i].first);
    ranking.tie_group.push_back(group);
    ranking.scores.push_back(sorted[i].second);
  }
  return ranking;
}

Ranking strict_ranking(std::vector<std::string> runs) {
  Ranking ranking;
  ranking.runs = std::move(runs);
  for (std::size_t i = 0; i < ranking.runs.size(); ++i) ranking.tie_group.push_back(i);
  return ranking;
}

RankingComparison kendalls_tau(const Ranking& a, const Ranking& b) {
  validate_ranking(a, "ranking A");
  validate_ranking(b, "ranking B");

  std::map<std::string_view, std::size_t> level_b;
  for (std::size_t i = 0; i < b.runs.size(); ++i)
    if (!level_b.emplace(b.runs[i], b.tie_group[i]).second)
      throw Error(ErrorCode::MismatchedRunSets, "run '" + b.runs[i] + "' listed twice in ranking B");

  std::set<std::string_view> seen_a;
  std::vector<std::pair<std::size_t, std::size_t>> levels;  // (level in A, level in B)
  levels.reserve(a.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    if (!seen_a.insert(a.runs[i]).second)
      throw Error(ErrorCode::MismatchedRunSets, "run '" + a.runs[i] + "' listed twice in ranking A");
    auto it = level_b.find(a.runs[i]);
    if (it == level_b.end())
      throw Error(ErrorCode::MismatchedRunSets, "run '" + a.runs[i] + "' missing from ranking B");
    levels.emplace_back(a.tie_group[i], it->second);
  }
  if (a.runs.size() != b.runs.size())
    throw Error(ErrorCode::MismatchedRunSets, "rankings cover different numbers of runs");

  const auto n = static_cast<std::int64_t>(levels.size());
  if (n < 2) throw Error(ErrorCode::TooFewRuns, "Kendall's tau needs at least two runs");

  // Knight's method: sort by (A, B), then count B-inversions with a merge sort.
  std::sort(levels.begin(), levels.end());
  const std::int64_t ties_a = tied_pairs(levels, [](const auto& p) { return p.first; });
  const std::int64_t ties_joint = tied_pairs(levels, [](const auto& p) { return p; });

  std::vector<std::size_t> b_sequence;
  b_sequence.reserve(levels.size());
  for (const auto& p : levels) b_sequence.push_back(p.second);
  const std::int64_t discordant = sort_counting_inversions(b_sequence);
  const std::int64_t ties_b = tied_pairs(b_sequence, [](std::size_t v) { return v; });

  const std::int64_t total = pairs(n);
  RankingComparison result;
  result.ranking_a = a;
  result.ranking_b = b;
  result.n = n;
  result.discordant = discordant;
  result.concordant = total - ties_a - ties_b + ties_joint - discordant;
  result.tau = Rational(result.concordant - result.discordant, total);
  return result;
}

}  // namespace keyjudge
