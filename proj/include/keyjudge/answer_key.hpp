#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "keyjudge/rational.hpp"
#include "keyjudge/text_norm.hpp"

namespace keyjudge {

/// One phrasing of an answer. terms is never empty.
struct AnswerForm {
  std::string raw;
  NormalizedTermSet terms;

  friend bool operator==(const AnswerForm&, const AnswerForm&) = default;
};

/// Alternative forms of the same answer (";"-separated in the key file).
struct Answer {
  std::vector<AnswerForm> forms;

  friend bool operator==(const Answer&, const Answer&) = default;
};

/// Question id -> distinct answers ("|"-separated in the key file).
class AnswerKey {
 public:
  using Entries = std::map<std::string, std::vector<Answer>, std::less<>>;

  AnswerKey() = default;

  /// Throws DuplicateQuestionId, or EmptyAnswerSet when answers is empty or holds an empty Answer.
  void add(std::string question_id, std::vector<Answer> answers);

  /// nullptr when the question is not in the key.
  const std::vector<Answer>* find(std::string_view question_id) const;

  bool contains(std::string_view question_id) const { return find(question_id) != nullptr; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Entries& entries() const { return entries_; }

  friend bool operator==(const AnswerKey&, const AnswerKey&) = default;

 private:
  Entries entries_;
};

struct KeyLine {
  std::string question_id;
  std::vector<Answer> answers;
  /// Forms (and answers) dropped because they normalized to nothing.
  std::vector<std::string> warnings;
};

/// Parses "QID<TAB>form; form | form". "|" separates answers and binds looser
/// than ";", which separates forms. Whitespace around separators is trimmed.
/// Throws MissingTab or EmptyAnswerSet.
KeyLine parse_key_line(std::string_view line, const StopWordList& stops);

struct ParsedKey {
  AnswerKey key;
  std::vector<std::string> warnings;
};

/// Whole-file parse. Accepts LF or CRLF, skips blank and '#' lines. Errors carry
/// the 1-based line number; a repeated question id is DuplicateQuestionId.
ParsedKey parse_answer_key(std::istream& in, const StopWordList& stops);

/// Writes the key back in file format, one question per line in id order.
std::string serialize_answer_key(const AnswerKey& key);

/// Per-question ratios, averaged over questions.
struct KeyStatistics {
  Rational answers_per_question;
  Rational forms_per_answer;
  Rational content_words_per_form;
};

/// Throws InvalidArgument on an empty key.
KeyStatistics key_statistics(const AnswerKey& key);

}  // namespace keyjudge
