#include "keyjudge/reports.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "keyjudge/records.hpp"

namespace keyjudge {

namespace {

struct Inputs {
  StopWordList stops;
  AnswerKey key;
  BatchResult batch;
};

StopWordList load_stops(const Config& config) {
  if (!config.stopword_path) return StopWordList::english_default();
  std::istringstream in(read_file(*config.stopword_path));
  return StopWordList::from_stream(in);
}

AnswerKey load_key(const Config& config, const StopWordList& stops, std::ostream& err) {
  std::istringstream in(read_file(config.key_path));
  ParsedKey parsed = parse_answer_key(in, stops);
  for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
  return std::move(parsed.key);
}

Inputs load(const Config& config, bool need_judgments, std::ostream& err) {
  validate(config);
  if (need_judgments && !config.judgments_path)
    throw Error(ErrorCode::InvalidArgument, "this command needs --judgments");

  Inputs inputs{load_stops(config), {}, {}};
  inputs.key = load_key(config, inputs.stops, err);

  std::istringstream response_stream(read_file(config.responses_path));
  std::vector<Response> responses = read_responses(response_stream);
  if (config.run_filter) {
    std::erase_if(responses, [&](const Response& r) { return !r.run_id.starts_with(*config.run_filter); });
  }

  inputs.batch = judge_batch(responses, inputs.key, config.threshold, inputs.stops);
  for (const auto& e : inputs.batch.errors) err << "warning: response " << e.index + 1 << ": " << e.message << '\n';

  if (config.judgments_path) {
    std::istringstream judgment_stream(read_file(*config.judgments_path));
    attach_human_judgments(inputs.batch.judged, read_judgments(judgment_stream));
  }
  return inputs;
}

// Report body goes to the file when one is configured, else to out; the
// summary stream is whichever of out/err the body did not take.
std::ostream& emit(const Config& config, const std::string& body, std::ostream& out, std::ostream& err) {
  if (config.out_path) {
    write_file_atomic(*config.out_path, body);
    return out;
  }
  out << body;
  return err;
}

std::string sanitize(std::string_view text) {
  std::string clean(text);
  std::replace(clean.begin(), clean.end(), '\t', ' ');
  return clean;
}

std::string pct_cell(const std::optional<Rational>& pct) {
  return pct ? format_fixed(*pct, 1) + "%" : std::string("-");
}

// Rounds a column of percentages to tenths so the shown cells sum to exactly
// 100.0 (largest remainder; earlier rows win ties).
std::vector<std::string> pct_column(const std::array<BucketRow, 6>& rows, std::optional<Rational> BucketRow::*pct) {
  std::vector<std::string> cells(rows.size(), "-");
  if (!(rows[0].*pct)) return cells;
  std::vector<std::int64_t> tenths(rows.size());
  std::vector<Rational> remainder(rows.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational scaled = *(rows[i].*pct) * 10;
    tenths[i] = boost::rational_cast<std::int64_t>(scaled);
    remainder[i] = scaled - tenths[i];
    assigned += tenths[i];
  }
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < 1000 && i < order.size(); ++i, ++assigned) ++tenths[order[i]];
  for (std::size_t i = 0; i < rows.size(); ++i) cells[i] = format_fixed(Rational(tenths[i], 10), 1) + "%";
  return cells;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string_view version() { return KEYJUDGE_VERSION; }

void validate(const Config& config) {
  if (config.threshold < 0 || config.threshold > 1)
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0,1]");
  if (config.roc_steps < 1) throw Error(ErrorCode::InvalidArgument, "--roc-steps must be at least 1");
}

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    case ErrorCode::MissingTab:
    case ErrorCode::EmptyAnswerSet:
    case ErrorCode::DuplicateQuestionId:
    case ErrorCode::UnknownQuestion:
    case ErrorCode::ParseError:
    case ErrorCode::Io:
      return kExitInput;
    case ErrorCode::MissingHumanJudgment:
    case ErrorCode::NoHumanCorrect:
    case ErrorCode::NoHumanIncorrect:
    case ErrorCode::DuplicateRank:
    case ErrorCode::MismatchedRunSets:
    case ErrorCode::TooFewRuns:
      return kExitAnalytic;
  }
  return kExitInput;
}

std::string report_header(std::string_view command, const Config& config, const StopWordList& stops) {
  std::ostringstream out;
  out << "# keyjudge " << version() << " command=" << command << " threshold=" << format_fraction(config.threshold)
      << " metric=" << to_string(config.metric) << " stoplist=" << stops.fingerprint();
  if (config.run_filter) out << " run_filter=" << *config.run_filter;
  out << '\n';
  return out.str();
}

std::string render_judged(std::span<const JudgedResponse> judged) {
  std::ostringstream out;
  for (const auto& record : judged) {
    const auto& r = record.response;
    const auto& s = record.score;
    out << r.run_id << '\t' << r.question_id << '\t' << r.rank << '\t' << sanitize(r.text) << '\t' << s.matched
        << '/' << s.key_size << '\t' << s.matched << '\t' << s.key_size << '\t' << (record.automatic.correct ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::string render_roc_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "threshold,hit_rate_pct,false_alarm_pct\n";
  for (const auto& p : curve.points) {
    out << (p.threshold ? format_fixed(*p.threshold, 4) : std::string("accept-all")) << ','
        << format_fixed(p.hit_rate, 4) << ',' << format_fixed(p.false_alarm_rate, 4) << '\n';
  }
  return out.str();
}

std::string render_reference_csv(const RatePoint& best, std::span<const RatePoint> worst) {
  std::ostringstream out;
  out << "curve,hit_rate_pct,false_alarm_pct\n";
  out << "best," << format_fixed(best.hit_rate, 4) << ',' << format_fixed(best.false_alarm_rate, 4) << '\n';
  for (const auto& p : worst)
    out << "worst," << format_fixed(p.hit_rate, 4) << ',' << format_fixed(p.false_alarm_rate, 4) << '\n';
  return out.str();
}

std::string render_ranking(const Ranking& ranking) {
  std::ostringstream out;
  std::size_t shown_rank = 0;
  for (std::size_t i = 0; i < ranking.runs.size(); ++i) {
    if (i == 0 || ranking.tie_group[i] != ranking.tie_group[i - 1]) shown_rank = i + 1;
    out << shown_rank << '\t' << ranking.runs[i] << '\t';
    if (i < ranking.scores.size()) out << format_fixed(ranking.scores[i], 4);
    out << '\n';
  }
  return out.str();
}

std::string render_tau_line(const RankingComparison& c) {
  return "n=" + std::to_string(c.n) + " concordant=" + std::to_string(c.concordant) +
         " discordant=" + std::to_string(c.discordant) + " tau=" + format_fixed(c.tau, 4) + "\n";
}

std::string render_bucket_table(const BucketTable& table) {
  std::ostringstream out;
  constexpr std::size_t kLabel = 14, kCount = 9, kPct = 9;
  out << pad_right("Recall", kLabel) << pad_left("Human judged incorrect", kCount + kPct + 6)
      << pad_left("Human judged correct", kCount + kPct + 6) << '\n';
  out << pad_right("", kLabel) << "   " << pad_left("count", kCount) << pad_left("pct", kPct) << "   "
      << pad_left("count", kCount) << pad_left("pct", kPct) << '\n';
  auto row = [&](const BucketRow& r, const std::string& incorrect_pct, const std::string& correct_pct) {
    out << pad_right(r.label, kLabel) << "   " << pad_left(std::to_string(r.human_incorrect), kCount)
        << pad_left(incorrect_pct, kPct) << "   " << pad_left(std::to_string(r.human_correct), kCount)
        << pad_left(correct_pct, kPct) << '\n';
  };
  const auto incorrect = pct_column(table.rows, &BucketRow::human_incorrect_pct);
  const auto correct = pct_column(table.rows, &BucketRow::human_correct_pct);
  for (std::size_t i = 0; i < table.rows.size(); ++i) row(table.rows[i], incorrect[i], correct[i]);
  row(table.totals, pct_cell(table.totals.human_incorrect_pct), pct_cell(table.totals.human_correct_pct));
  return out.str();
}

std::string render_key_statistics(const AnswerKey& key, const KeyStatistics& stats) {
  std::ostringstream out;
  out << "questions=" << key.size() << " answers_per_question=" << format_fixed(stats.answers_per_question, 4)
      << " forms_per_answer=" << format_fixed(stats.forms_per_answer, 4)
      << " content_words_per_form=" << format_fixed(stats.content_words_per_form, 4) << '\n';
  return out.str();
}

std::string render_disagreements(std::span<const JudgedResponse> judged, const Rational& threshold,
                                 DisagreementSummary& summary) {
  std::vector<const JudgedResponse*> rows;
  summary = {};
  for (const auto& record : judged) {
    if (!record.human)
      throw Error(ErrorCode::MissingHumanJudgment, "no human judgment for " + record.response.run_id + "/" +
                                                       record.response.question_id + "/rank " +
                                                       std::to_string(record.response.rank));
    const bool automatic = judge(record.score, threshold).correct;
    if (automatic == *record.human) continue;
    rows.push_back(&record);
    if (*record.human)
      ++summary.human_correct_recall_at_or_below;
    else
      ++summary.human_incorrect_recall_above;
  }
  summary.rows = rows.size();
  std::sort(rows.begin(), rows.end(), [](const JudgedResponse* x, const JudgedResponse* y) {
    const auto& a = x->response;
    const auto& b = y->response;
    return std::tie(a.question_id, a.run_id, a.rank) < std::tie(b.question_id, b.run_id, b.rank);
  });

  std::ostringstream out;
  out << "question_id\trun_id\trank\trecall\tbucket\tauto\thuman\tresponse_text\tcategory\n";
  for (const auto* record : rows) {
    const auto& r = record->response;
    out << r.question_id << '\t' << r.run_id << '\t' << r.rank << '\t' << record->score.matched << '/'
        << record->score.key_size << '\t' << bucket_label(bucket_of(record->score.value)) << '\t'
        << (*record->human ? 0 : 1) << '\t' << (*record->human ? 1 : 0) << '\t' << sanitize(r.text) << "\t\n";
  }
  return out.str();
}

void cmd_judge(const Config& config, std::ostream& out, std::ostream& err) {
  Inputs in = load(config, false, err);
  const auto& judged = in.batch.judged;
  const std::string body = report_header("judge", config, in.stops) + render_judged(judged);
  std::ostream& summary = emit(config, body, out, err);

  const auto correct = std::count_if(judged.begin(), judged.end(),
                                     [](const JudgedResponse& r) { return r.automatic.correct; });
  const std::size_t total = judged.size() + in.batch.errors.size();
  summary << total << " responses: " << correct << " correct, " << judged.size() - static_cast<std::size_t>(correct)
          << " incorrect, " << in.batch.errors.size() << " errors\n";
  if (config.key_stats) summary << render_key_statistics(in.key, key_statistics(in.key));
}

void cmd_roc(const Config& config, std::ostream& out, std::ostream& err) {
  Inputs in = load(config, true, err);
  const auto grid = threshold_grid(config.roc_steps);
  const RocCurve curve = roc_curve(in.batch.judged, grid);
  std::ostream& summary = emit(config, report_header("roc", config, in.stops) + render_roc_csv(curve), out, err);

  if (config.reference_out_path) {
    const auto worst = worst_possible_curve(config.roc_steps);
    write_file_atomic(*config.reference_out_path,
                      report_header("roc-reference", config, in.stops) + render_reference_csv(best_possible_point(), worst));
  }
  const auto at = std::find_if(curve.points.begin(), curve.points.end(),
                               [&](const RocPoint& p) { return p.threshold && *p.threshold == config.threshold; });
  summary << curve.points.size() << " ROC points";
  if (at != curve.points.end())
    summary << "; at threshold " << format_fraction(config.threshold) << ": hit " << format_fixed(at->hit_rate, 1)
            << "%, false alarm " << format_fixed(at->false_alarm_rate, 1) << '%';
  summary << '\n';
}

void cmd_rank(const Config& config, std::ostream& out, std::ostream& err) {
  Inputs in = load(config, true, err);
  const auto& judged = in.batch.judged;
  const Ranking automatic = rank_runs(run_scores(judged, config.metric, JudgmentSource::Automatic, in.key));
  const Ranking human = rank_runs(run_scores(judged, config.metric, JudgmentSource::Human, in.key));
  const RankingComparison comparison = kendalls_tau(automatic, human);

  const std::string header = report_header("rank", config, in.stops);
  if (config.out_path) {
    auto with_suffix = [&](std::string_view suffix) {
      std::filesystem::path p = *config.out_path;
      p += suffix;
      return p;
    };
    write_file_atomic(with_suffix(".auto.tsv"), header + "# ranking=auto\n" + render_ranking(automatic));
    write_file_atomic(with_suffix(".human.tsv"), header + "# ranking=human\n" + render_ranking(human));
  } else {
    out << header << "# ranking=auto\n" << render_ranking(automatic) << "# ranking=human\n" << render_ranking(human);
  }
  out << render_tau_line(comparison);
}

void cmd_disagreements(const Config& config, std::ostream& out, std::ostream& err) {
  Inputs in = load(config, true, err);
  DisagreementSummary counts;
  const std::string body =
      report_header("disagreements", config, in.stops) + render_disagreements(in.batch.judged, config.threshold, counts);
  std::ostream& summary = emit(config, body, out, err);
  summary << "disagreements=" << counts.rows
          << " human_correct_recall_at_or_below_threshold=" << counts.human_correct_recall_at_or_below
          << " human_incorrect_recall_above_threshold=" << counts.human_incorrect_recall_above << '\n';
}

void cmd_buckets(const Config& config, std::ostream& out, std::ostream& err) {
  Inputs in = load(config, true, err);
  const BucketTable table = bucket_table(in.batch.judged);
  const Agreement agreed = agreement_at(in.batch.judged, config.threshold);
  std::ostream& summary = emit(config, report_header("buckets", config, in.stops) + render_bucket_table(table), out, err);
  summary << "agreement at threshold " << format_fraction(config.threshold) << ": "
          << format_fixed(agreed.fraction * 100, 1) << "% (" << agreed.confusion.agreements() << " of "
          << agreed.confusion.total() << ")\n";
}

void cmd_key_stats(const Config& config, std::ostream& out, std::ostream& err) {
  validate(config);
  const StopWordList stops = load_stops(config);
  const AnswerKey key = load_key(config, stops, err);
  emit(config, report_header("key-stats", config, stops) + render_key_statistics(key, key_statistics(key)), out, err);
}

int run_command(std::string_view command, const Config& config, std::ostream& out, std::ostream& err) {
  try {
    if (command == "judge")
      cmd_judge(config, out, err);
    else if (command == "roc")
      cmd_roc(config, out, err);
    else if (command == "rank")
      cmd_rank(config, out, err);
    else if (command == "disagreements")
      cmd_disagreements(config, out, err);
    else if (command == "buckets")
      cmd_buckets(config, out, err);
    else if (command == "key-stats")
      cmd_key_stats(config, out, err);
    else {
      err << "error: unknown command '" << command << "'\n";
      return kExitUsage;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitOk;
}

}  // namespace keyjudge
