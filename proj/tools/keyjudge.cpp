// keyjudge: score question-answering responses against an answer key and
// compare the automatic verdicts with human assessments.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "keyjudge/reports.hpp"

int main(int argc, char** argv) {
  using namespace keyjudge;

  CLI::App app{"Answer-key recall judge for question-answering runs"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Config config;
  std::string threshold_text = "1/4";
  std::string metric_text = "mrr";
  std::string key_path, responses_path, judgments_path, stopword_path, out_path, reference_out, run_filter;

  auto add_common = [&](CLI::App* cmd, bool needs_responses, bool needs_judgments) {
    cmd->add_option("--key", key_path, "Answer-key TSV (QID<TAB>answers)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--stopwords", stopword_path, "Stop-word list overriding the built-in default")
        ->check(CLI::ExistingFile);
    cmd->add_option("--threshold", threshold_text, "Recall threshold as m/k or decimal; correct iff recall > R")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write the report here instead of standard output");
    if (!needs_responses) return;
    cmd->add_option("--responses", responses_path, "Responses TSV (run<TAB>qid<TAB>rank<TAB>text)")
        ->required()
        ->check(CLI::ExistingFile);
    auto* judgments = cmd->add_option("--judgments", judgments_path, "Human judgments TSV (run<TAB>qid<TAB>rank<TAB>0|1)")
                          ->check(CLI::ExistingFile);
    if (needs_judgments) judgments->required();
    cmd->add_option("--metric", metric_text, "Run scoring metric")
        ->check(CLI::IsMember({"mrr", "first-answer"}))
        ->capture_default_str();
    cmd->add_option("--roc-steps", config.roc_steps, "Threshold grid resolution (k/N for k=0..N)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--run-filter", run_filter, "Only keep runs whose id starts with PREFIX");
  };

  auto* judge = app.add_subcommand("judge", "Score and judge every response");
  add_common(judge, true, false);
  judge->add_flag("--key-stats", config.key_stats, "Also print answer-key statistics");

  auto* roc = app.add_subcommand("roc", "Hit rate vs. false alarm rate across thresholds (CSV)");
  add_common(roc, true, true);
  roc->add_option("--reference-out", reference_out, "Write best/worst reference curves to this CSV");

  auto* rank = app.add_subcommand("rank", "Rank runs by automatic and human verdicts and compare with Kendall's tau");
  add_common(rank, true, true);

  auto* disagreements = app.add_subcommand("disagreements", "List responses where the judge and the human differ");
  add_common(disagreements, true, true);

  auto* buckets = app.add_subcommand("buckets", "Recall buckets by human verdict");
  add_common(buckets, true, true);

  auto* key_stats = app.add_subcommand("key-stats", "Answers per question, forms per answer, words per form");
  add_common(key_stats, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto threshold = parse_rational(threshold_text);
  if (!threshold || *threshold < 0 || *threshold > 1) {
    std::cerr << "error: --threshold must be a rational in [0,1], got '" << threshold_text << "'\n";
    return kExitUsage;
  }
  config.threshold = *threshold;
  config.metric = *parse_metric(metric_text);
  config.key_path = key_path;
  config.responses_path = responses_path;
  if (!judgments_path.empty()) config.judgments_path = judgments_path;
  if (!stopword_path.empty()) config.stopword_path = stopword_path;
  if (!out_path.empty()) config.out_path = out_path;
  if (!reference_out.empty()) config.reference_out_path = reference_out;
  if (!run_filter.empty()) config.run_filter = run_filter;

  const std::string command = app.get_subcommands().front()->get_name();
  return run_command(command, config, std::cout, std::cerr);
}
