#pragma once

#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace keyjudge {

/// A word unit before normalization.
struct Token {
  std::string surface;
  /// Every cased character was uppercase and the surface has at least two code points.
  bool was_all_uppercase = false;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Deduplicated, case-folded, stemmed content terms.
using NormalizedTermSet = std::set<std::string, std::less<>>;

/// Immutable set of lowercase stop words.
class StopWordList {
 public:
  StopWordList() = default;

  /// Throws Error(InvalidArgument) if an entry is empty, has whitespace, or is not lowercase.
  explicit StopWordList(std::set<std::string, std::less<>> words);

  /// The 127-entry English IR list.
  static StopWordList english127();

  /// english127() plus "el". This is the shipped default.
  static StopWordList english_default();

  /// One word per line; '#' lines and blank lines are skipped, trailing
  /// whitespace trimmed. Throws Error(ParseError) naming the offending line.
  static StopWordList from_stream(std::istream& in);

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

  /// 16 hex digits of FNV-1a over the sorted entries; stable across runs and platforms.
  std::string fingerprint() const;

 private:
  std::set<std::string, std::less<>> words_;
};

/// Splits text into maximal runs of Unicode letters and digits (combining marks
/// stay attached). An apostrophe or period is kept when it sits between two
/// word characters, so "O'Brien", "1.39" and "U.S" survive whole. Input is
/// NFC-normalized first and U+2019 is stored as an ASCII apostrophe.
std::vector<Token> tokenize(std::string_view text);

/// Unicode simple lowercase, code point by code point.
std::string fold_case(std::string_view text);

/// Stem of a case-folded word: possessive "'s" stripped, then the exception
/// map and one Porter pass applied until nothing changes. Words containing
/// anything other than letters come back as they are.
std::string stem(std::string_view word);

/// tokenize -> fold -> drop stop words (all-uppercase tokens exempt) -> stem.
/// Tokens containing a digit are kept folded but otherwise verbatim.
NormalizedTermSet normalize(std::string_view text, const StopWordList& stops);

}  // namespace keyjudge
