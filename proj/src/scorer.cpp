#include "keyjudge/scorer.hpp"

#include <algorithm>

#include "keyjudge/error.hpp"

namespace keyjudge {

namespace {

std::size_t overlap(const NormalizedTermSet& response_terms, const NormalizedTermSet& form_terms) {
  std::size_t matched = 0;
  for (const auto& term : form_terms)
    if (response_terms.contains(term)) ++matched;
  return matched;
}

}  // namespace

Rational form_recall(const NormalizedTermSet& response_terms, const AnswerForm& form) {
  if (form.terms.empty()) throw Error(ErrorCode::InvalidArgument, "answer form has no terms");
  return Rational(static_cast<std::int64_t>(overlap(response_terms, form.terms)),
                  static_cast<std::int64_t>(form.terms.size()));
}

RecallScore best_recall(const NormalizedTermSet& response_terms, const std::vector<Answer>& answers) {
  std::optional<RecallScore> best;
  for (std::size_t a = 0; a < answers.size(); ++a) {
    const auto& forms = answers[a].forms;
    for (std::size_t f = 0; f < forms.size(); ++f) {
      const std::size_t matched = overlap(response_terms, forms[f].terms);
      const std::size_t size = forms[f].terms.size();
      if (size == 0) continue;
      Rational value(static_cast<std::int64_t>(matched), static_cast<std::int64_t>(size));
      if (!best || value > best->value) best = RecallScore{value, a, f, matched, size};
    }
  }
  if (!best) throw Error(ErrorCode::EmptyAnswerSet, "question has no scorable answer forms");
  return *best;
}

RecallScore score_response(const Response& resp, const AnswerKey& key, const StopWordList& stops) {
  const auto* answers = key.find(resp.question_id);
  if (answers == nullptr)
    throw Error(ErrorCode::UnknownQuestion, "question '" + resp.question_id + "' is not in the answer key");
  return best_recall(normalize(resp.text, stops), *answers);
}

BatchResult judge_batch(const std::vector<Response>& responses, const AnswerKey& key,
                        const Rational& threshold, const StopWordList& stops) {
  BatchResult result;
  result.judged.reserve(responses.size());
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const Response& resp = responses[i];
    try {
      RecallScore score = score_response(resp, key, stops);
      const Judgment verdict = judge(score, threshold);
      result.judged.push_back(JudgedResponse{resp, std::move(score), verdict, std::nullopt});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnknownQuestion) throw;
      result.errors.push_back(RecordError{i, resp, e.what()});
    }
  }
  return result;
}

}  // namespace keyjudge
