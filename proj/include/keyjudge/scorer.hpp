#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "keyjudge/answer_key.hpp"
#include "keyjudge/rational.hpp"
#include "keyjudge/text_norm.hpp"

namespace keyjudge {

/// One ranked system response to a question.
struct Response {
  std::string run_id;
  std::string question_id;
  std::int64_t rank = 1;
  std::string text;

  friend bool operator==(const Response&, const Response&) = default;
};

/// Best answer-key word recall over every form of every answer.
struct RecallScore {
  Rational value;
  std::size_t best_answer_index = 0;
  std::size_t best_form_index = 0;
  std::size_t matched = 0;
  std::size_t key_size = 1;

  friend bool operator==(const RecallScore&, const RecallScore&) = default;
};

struct Judgment {
  bool correct = false;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

/// A response with its score, the automatic verdict and, when known, the human one.
struct JudgedResponse {
  Response response;
  RecallScore score;
  Judgment automatic;
  std::optional<bool> human;
};

/// |response ∩ form| / |form|. form.terms must not be empty.
Rational form_recall(const NormalizedTermSet& response_terms, const AnswerForm& form);

/// Max recall over the given answers; ties keep the first form in key order.
RecallScore best_recall(const NormalizedTermSet& response_terms, const std::vector<Answer>& answers);

/// Throws UnknownQuestion if the key has no entry for resp.question_id.
RecallScore score_response(const Response& resp, const AnswerKey& key, const StopWordList& stops);

/// Correct iff recall is strictly above the threshold.
inline Judgment judge(const RecallScore& score, const Rational& threshold) {
  return Judgment{score.value > threshold};
}

struct RecordError {
  std::size_t index = 0;  ///< position in the input list
  Response response;
  std::string message;
};

struct BatchResult {
  std::vector<JudgedResponse> judged;
  std::vector<RecordError> errors;
};

/// Scores and judges each response in order. Responses whose question is
/// missing from the key land in errors instead of judged.
BatchResult judge_batch(const std::vector<Response>& responses, const AnswerKey& key,
                        const Rational& threshold, const StopWordList& stops);

}  // namespace keyjudge
