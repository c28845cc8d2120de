// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "keyjudge/analytics.hpp"
#include "keyjudge/answer_key.hpp"
#include "keyjudge/records.hpp"
#include "keyjudge/reports.hpp"
#include "keyjudge/scorer.hpp"
#include "keyjudge/text_norm.hpp"
#include "oracles.hpp"

using namespace keyjudge;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const StopWordList& stops() {
  static const StopWordList list = StopWordList::english_default();
  return list;
}

AnswerKey key_from(const std::string& text) {
  std::istringstream in(text);
  return parse_answer_key(in, stops()).key;
}

std::string join(const NormalizedTermSet& terms) {
  std::string out = "{";
  for (const auto& t : terms) out += (out.size() > 1 ? "," : "") + t;
  return out + "}";
}

Check worked_example() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const AnswerKey key = key_from("Q1\tPeruvian fishermen\n");
  const Response response{"run", "Q1", 1, "Fisherman: They called it El Niño"};
  const auto key_terms = key.find("Q1")->at(0).forms.at(0).terms;
  const auto response_terms = normalize(response.text, stops());
  c.require(key_terms == NormalizedTermSet{"peru", "fisherman"}, "key terms " + join(key_terms));
  c.require(response_terms == NormalizedTermSet{"fisherman", "call", "niño"}, "response terms " + join(response_terms));
  const RecallScore score = score_response(response, key, stops());
  c.require(score.value == Rational(1, 2), "recall " + format_fraction(score.value));
  c.require(judge(score, Rational(1, 4)).correct, "not correct at 1/4");
  c.require(!judge(score, Rational(1, 2)).correct, "correct at 1/2");
  const double elapsed = seconds_since(start);
  c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  return c;
}

Check key_format() {
  Check c;
  const std::string line = "Q12\tNational Center for Supercomputing Applications; NCSA | Netscape Communications\n";
  const AnswerKey key = key_from(line);
  const auto* answers = key.find("Q12");
  c.require(answers && answers->size() == 2, "expected 2 answers");
  if (!c.ok) return c;
  c.require((*answers)[0].forms.size() == 2 && (*answers)[1].forms.size() == 1, "expected (2,1) forms");
  const AnswerKey again = key_from(serialize_answer_key(key));
  c.require(again == key, "round trip differs");
  return c;
}

Check threshold_endpoints() {
  Check c;
  std::mt19937 rng(101);
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    auto judged = oracle::random_judged(rng, 30);
    // guarantee some full-recall records
    judged[0].score.value = Rational(1);
    judged[1].score.value = Rational(1);
    for (const auto& r : judged) c.require(!judge(r.score, Rational(1)).correct, "correct at threshold 1");
    const std::vector<Rational> grid = {Rational(0), Rational(1)};
    const RocCurve curve = roc_curve(judged, grid);
    const auto& accept_all = curve.points.front();
    const auto& top = curve.points.back();
    c.require(!accept_all.threshold && accept_all.hit_rate == Rational(100) &&
                  accept_all.false_alarm_rate == Rational(100),
              "accept-all point is not (100,100)");
    c.require(top.threshold == Rational(1) && top.hit_rate == Rational(0) && top.false_alarm_rate == Rational(0),
              "threshold 1 point is not (0,0)");
  }
  return c;
}

Check roc_monotonicity() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(103);
  const auto grid = threshold_grid(100);
  std::size_t violations = 0;
  c.require(grid.size() == 101, "grid has " + std::to_string(grid.size()) + " points");
  for (int trial = 0; trial < 200; ++trial) {
    const auto judged = oracle::random_judged(rng, 50);
    const RocCurve curve = roc_curve(judged, grid);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      violations += curve.points[i].hit_rate > curve.points[i - 1].hit_rate;
      violations += curve.points[i].false_alarm_rate > curve.points[i - 1].false_alarm_rate;
    }
  }
  c.require(violations == 0, std::to_string(violations) + " violations");
  const double elapsed = seconds_since(start);
  c.require(elapsed < 10.0, "took " + std::to_string(elapsed) + " s");
  return c;
}

Check tau_oracle() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> size(2, 8);
  std::bernoulli_distribution ties(0.5);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> runs;
    for (int i = 0, n = size(rng); i < n; ++i) runs.push_back("run" + std::to_string(i));
    const Ranking a = oracle::random_ranking(rng, runs, ties(rng));
    const Ranking b = oracle::random_ranking(rng, runs, ties(rng));
    const RankingComparison got = kendalls_tau(a, b);
    const auto want = oracle::classify_pairs(a, b);
    const auto n = static_cast<std::int64_t>(runs.size());
    const Rational expected(want.concordant - want.discordant, n * (n - 1) / 2);
    violations += got.concordant != want.concordant || got.discordant != want.discordant || got.tau != expected;
  }
  for (int n = 2; n <= 8; ++n) {
    std::vector<std::string> runs;
    for (int i = 0; i < n; ++i) runs.push_back("run" + std::to_string(i));
    const Ranking identity = strict_ranking(runs);
    const Ranking reverse = strict_ranking({runs.rbegin(), runs.rend()});
    violations += kendalls_tau(identity, identity).tau != Rational(1);
    violations += kendalls_tau(identity, reverse).tau != Rational(-1);
  }
  c.require(violations == 0, std::to_string(violations) + " violations");
  const double elapsed = seconds_since(start);
  c.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  return c;
}

Check scorer_oracle() {
  Check c;
  std::mt19937 rng(109);
  std::size_t fixtures = 0, violations = 0;
  while (fixtures < 500) {
    AnswerKey key;
    try {
      key = key_from("Q\t" + oracle::random_key_text(rng, 4) + "\n");
    } catch (const Error&) {
      continue;  // every form reduced to stop words
    }
    ++fixtures;
    const Response response{"r", "Q", 1, oracle::random_phrase(rng, 0, 8)};
    const RecallScore got = score_response(response, key, stops());
    const auto want = oracle::best_recall(normalize(response.text, stops()), *key.find("Q"));
    violations += got.value != Rational(want.matched, want.size) || got.best_answer_index != want.answer ||
                  got.best_form_index != want.form;
  }
  c.require(violations == 0, std::to_string(violations) + " violations");
  return c;
}

Check conserved(const std::vector<JudgedResponse>& judged, const Rational& threshold) {
  Check c;
  std::vector<JudgedResponse> at = judged;
  for (auto& r : at) r.automatic = judge(r.score, threshold);
  const Agreement agreed = agreement(at);
  const Confusion& m = agreed.confusion;
  c.require(m.total() == static_cast<std::int64_t>(judged.size()), "confusion cells do not sum to record count");
  const BucketTable table = bucket_table(judged);
  std::int64_t bucket_incorrect = 0, bucket_correct = 0;
  for (const auto& row : table.rows) {
    bucket_incorrect += row.human_incorrect;
    bucket_correct += row.human_correct;
  }
  c.require(bucket_incorrect == table.totals.human_incorrect && bucket_correct == table.totals.human_correct,
            "bucket rows do not sum to totals");
  c.require(table.totals.human_incorrect == m.human_column(false) && table.totals.human_correct == m.human_column(true),
            "bucket totals differ from confusion column sums");
  DisagreementSummary summary;
  render_disagreements(judged, threshold, summary);
  c.require(static_cast<std::int64_t>(summary.rows) == m.total() - m.agreements(),
            "disagreement rows differ from total minus agreements");
  return c;
}

Check conservation() {
  Check c;
  std::mt19937 rng(113);
  const std::vector<Rational> thresholds = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)};
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    const auto judged = oracle::random_judged(rng, 50);
    for (const auto& t : thresholds) {
      const Check one = conserved(judged, t);
      c.require(one.ok, one.detail);
    }
  }
  const fs::path dir = KEYJUDGE_FIXTURES;
  const AnswerKey key = key_from(read_file(dir / "key.tsv"));
  std::istringstream responses_in(read_file(dir / "responses.tsv"));
  std::istringstream judgments_in(read_file(dir / "judgments.tsv"));
  BatchResult batch = judge_batch(read_responses(responses_in), key, Rational(1, 4), stops());
  attach_human_judgments(batch.judged, read_judgments(judgments_in));
  for (const auto& t : thresholds) {
    const Check one = conserved(batch.judged, t);
    c.require(one.ok, "fixture corpus: " + one.detail);
  }
  return c;
}

Check acronym_regression() {
  Check c;
  const auto city = normalize("South Bend, IN", stops());
  const auto phrase = normalize("in the city", stops());
  c.require(city.contains("in"), "\"South Bend, IN\" -> " + join(city));
  c.require(!phrase.contains("in"), "\"in the city\" -> " + join(phrase));
  return c;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

Check determinism() {
  Check c;
  const fs::path fixtures = KEYJUDGE_FIXTURES;
  const fs::path work = fs::temp_directory_path() / ("keyjudge_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string inputs = " --key " + shell_quote((fixtures / "key.tsv").string()) + " --responses " +
                             shell_quote((fixtures / "responses.tsv").string()) + " --judgments " +
                             shell_quote((fixtures / "judgments.tsv").string());
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"judge", " --key-stats --responses " + shell_quote((fixtures / "responses.tsv").string()) + " --key " +
                    shell_quote((fixtures / "key.tsv").string())},
      {"roc", inputs},
      {"rank", inputs},
      {"disagreements", inputs},
      {"buckets", inputs},
      {"key-stats", " --key " + shell_quote((fixtures / "key.tsv").string())}};

  auto run_all = [&](const std::string& tag) {
    for (const auto& [command, args] : commands) {
      const fs::path base = work / (tag + "_" + command);
      for (bool to_file : {false, true}) {
        std::string line = shell_quote(KEYJUDGE_CLI) + " " + command + args;
        const std::string suffix = to_file ? "_file" : "_stdout";
        if (to_file) {
          line += " --out " + shell_quote(base.string() + ".out");
          if (command == "roc") line += " --reference-out " + shell_quote(base.string() + ".ref");
        }
        line += " >" + shell_quote(base.string() + suffix + ".stdout") + " 2>" +
                shell_quote(base.string() + suffix + ".stderr");
        const int status = std::system(line.c_str());
        c.require(status == 0, command + " exited with status " + std::to_string(status));
      }
    }
  };
  run_all("first");
  run_all("second");

  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(work)) {
    const std::string name = entry.path().filename().string();
    if (!name.starts_with("first_")) continue;
    const fs::path other = work / ("second_" + name.substr(6));
    c.require(fs::exists(other), "missing " + other.filename().string());
    if (!fs::exists(other)) continue;
    c.require(read_file(entry.path()) == read_file(other), name.substr(6) + " differs between runs");
    ++compared;
  }
  c.require(compared >= commands.size() * 4, "only " + std::to_string(compared) + " outputs compared");
  fs::remove_all(work);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"worked example: recall 1/2, correct at 1/4, incorrect at 1/2", worked_example},
      {"key format: 2 answers with (2,1) forms, round trip identical", key_format},
      {"threshold endpoints: threshold 1 gives (0,0), accept-all gives (100,100)", threshold_endpoints},
      {"ROC monotonicity over 200 random fixtures and 101 thresholds", roc_monotonicity},
      {"Kendall's tau equals exhaustive pair classification", tau_oracle},
      {"scorer equals enumerate-all-forms oracle on 500 fixtures", scorer_oracle},
      {"agreement, bucket and disagreement counts are conserved", conservation},
      {"acronym exemption keeps IN but drops lowercase in", acronym_regression},
      {"every CLI command is byte-for-byte deterministic", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Check result;
    try {
      result = check();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (result.ok ? "PASS " : "FAIL ") << name;
    if (!result.ok) std::cout << " (" << result.detail << ")";
    std::cout << '\n';
    failures += !result.ok;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
