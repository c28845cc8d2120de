#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace keyjudge {

enum class ErrorCode {
  MissingTab,
  EmptyAnswerSet,
  DuplicateQuestionId,
  UnknownQuestion,
  MissingHumanJudgment,
  NoHumanCorrect,
  NoHumanIncorrect,
  DuplicateRank,
  MismatchedRunSets,
  TooFewRuns,
  ParseError,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingTab: return "MissingTab";
    case ErrorCode::EmptyAnswerSet: return "EmptyAnswerSet";
    case ErrorCode::DuplicateQuestionId: return "DuplicateQuestionId";
    case ErrorCode::UnknownQuestion: return "UnknownQuestion";
    case ErrorCode::MissingHumanJudgment: return "MissingHumanJudgment";
    case ErrorCode::NoHumanCorrect: return "NoHumanCorrect";
    case ErrorCode::NoHumanIncorrect: return "NoHumanIncorrect";
    case ErrorCode::DuplicateRank: return "DuplicateRank";
    case ErrorCode::MismatchedRunSets: return "MismatchedRunSets";
    case ErrorCode::TooFewRuns: return "TooFewRuns";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace keyjudge
