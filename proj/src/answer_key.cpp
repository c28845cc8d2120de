#include "keyjudge/answer_key.hpp"

#include <istream>
#include <sstream>

#include "keyjudge/error.hpp"

namespace keyjudge {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

void AnswerKey::add(std::string question_id, std::vector<Answer> answers) {
  if (answers.empty())
    throw Error(ErrorCode::EmptyAnswerSet, "question '" + question_id + "' has no answers");
  for (const auto& answer : answers)
    if (answer.forms.empty())
      throw Error(ErrorCode::EmptyAnswerSet, "question '" + question_id + "' has an answer with no forms");
  if (entries_.contains(question_id))
    throw Error(ErrorCode::DuplicateQuestionId, "question '" + question_id + "' appears twice");
  entries_.emplace(std::move(question_id), std::move(answers));
}

const std::vector<Answer>* AnswerKey::find(std::string_view question_id) const {
  auto it = entries_.find(question_id);
  return it == entries_.end() ? nullptr : &it->second;
}

KeyLine parse_key_line(std::string_view line, const StopWordList& stops) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);

  const auto tab = line.find('\t');
  if (tab == std::string_view::npos)
    throw Error(ErrorCode::MissingTab, "expected 'QID<TAB>answers'");

  KeyLine result;
  result.question_id = std::string(trim(line.substr(0, tab)));
  if (result.question_id.empty()) throw Error(ErrorCode::MissingTab, "empty question id before tab");

  const std::string_view answers_text = trim(line.substr(tab + 1));
  if (answers_text.empty())
    throw Error(ErrorCode::EmptyAnswerSet, "question '" + result.question_id + "' has no answers");

  for (std::string_view answer_text : split(answers_text, '|')) {
    Answer answer;
    for (std::string_view form_text : split(answer_text, ';')) {
      form_text = trim(form_text);
      AnswerForm form{std::string(form_text), normalize(form_text, stops)};
      if (form.terms.empty()) {
        result.warnings.push_back("question '" + result.question_id + "': form '" + form.raw +
                                  "' has no content words; skipped");
        continue;
      }
      answer.forms.push_back(std::move(form));
    }
    if (!answer.forms.empty()) result.answers.push_back(std::move(answer));
  }

  if (result.answers.empty())
    throw Error(ErrorCode::EmptyAnswerSet,
                "question '" + result.question_id + "': every form normalized to nothing");
  return result;
}

ParsedKey parse_answer_key(std::istream& in, const StopWordList& stops) {
  ParsedKey parsed;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    try {
      KeyLine record = parse_key_line(line, stops);
      for (auto& w : record.warnings) parsed.warnings.push_back("line " + std::to_string(line_no) + ": " + w);
      parsed.key.add(std::move(record.question_id), std::move(record.answers));
    } catch (const Error& e) {
      throw Error(e.code(), "answer key line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return parsed;
}

std::string serialize_answer_key(const AnswerKey& key) {
  std::ostringstream out;
  for (const auto& [qid, answers] : key.entries()) {
    out << qid << '\t';
    for (std::size_t a = 0; a < answers.size(); ++a) {
      if (a > 0) out << " | ";
      const auto& forms = answers[a].forms;
      for (std::size_t f = 0; f < forms.size(); ++f) {
        if (f > 0) out << "; ";
        out << forms[f].raw;
      }
    }
    out << '\n';
  }
  return out.str();
}

KeyStatistics key_statistics(const AnswerKey& key) {
  if (key.empty()) throw Error(ErrorCode::InvalidArgument, "key statistics need a non-empty key");

  Rational answers_sum, forms_sum, words_sum;
  for (const auto& [qid, answers] : key.entries()) {
    std::int64_t forms = 0;
    std::int64_t words = 0;
    for (const auto& answer : answers) {
      forms += static_cast<std::int64_t>(answer.forms.size());
      for (const auto& form : answer.forms) words += static_cast<std::int64_t>(form.terms.size());
    }
    const auto n_answers = static_cast<std::int64_t>(answers.size());
    answers_sum += n_answers;
    forms_sum += Rational(forms, n_answers);
    words_sum += Rational(words, forms);
  }
  const auto questions = static_cast<std::int64_t>(key.size());
  return {answers_sum / questions, forms_sum / questions, words_sum / questions};
}

}  // namespace keyjudge
