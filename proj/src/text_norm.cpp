#include "keyjudge/text_norm.hpp"

#include <array>
#include <cstdint>
#include <istream>
#include <unordered_map>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "keyjudge/error.hpp"
#include "keyjudge/porter.hpp"
#include "utf8.hpp"

namespace keyjudge {

namespace {

constexpr std::array<std::string_view, 127> kEnglish127 = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
    "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
    "for", "with", "about", "against", "between", "into", "through", "during", "before",
    "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
    "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
    "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can",
    "will", "just", "don", "should", "now"};

// Irregular plurals that suffix stripping cannot reach.
const std::unordered_map<std::u32string, std::u32string>& exception_map() {
  static const std::unordered_map<std::u32string, std::u32string> map = {
      {U"fishermen", U"fisherman"}, {U"women", U"woman"}, {U"men", U"man"},
      {U"children", U"child"},      {U"feet", U"foot"},   {U"peruvian", U"peru"},
  };
  return map;
}

using detail::decode_utf8;
using detail::encode_utf8;

std::u32string nfc_code_points(std::string_view text) {
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString normalized;
  if (U_SUCCESS(status)) normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) normalized = source;

  std::u32string out;
  out.reserve(static_cast<std::size_t>(normalized.length()));
  for (std::int32_t i = 0; i < normalized.length(); i = normalized.moveIndex32(i, 1))
    out.push_back(static_cast<char32_t>(normalized.char32At(i)));
  return out;
}

bool is_mark(char32_t c) { return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_M_MASK) != 0; }
bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }
bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }
bool is_word_char(char32_t c) { return is_letter(c) || is_digit(c); }
bool is_joiner(char32_t c) { return c == U'\'' || c == U'.' || c == char32_t{0x2019}; }

bool all_uppercase(std::u32string_view surface) {
  if (surface.size() < 2) return false;
  bool any_cased = false;
  for (char32_t c : surface) {
    const auto cp = static_cast<UChar32>(c);
    if (!u_hasBinaryProperty(cp, UCHAR_CASED)) continue;
    any_cased = true;
    if (!u_isUUppercase(cp)) return false;
  }
  return any_cased;
}

std::u32string fold(std::u32string_view text) {
  std::u32string out(text);
  for (auto& c : out) c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
  return out;
}

bool contains_digit(std::u32string_view text) {
  for (char32_t c : text)
    if (is_digit(c)) return true;
  return false;
}

std::u32string stem_code_points(std::u32string word) {
  while (word.size() > 2 && word.ends_with(U"'s")) word.resize(word.size() - 2);

  for (char32_t c : word)
    if (!is_letter(c) && !is_mark(c)) return word;

  const auto& exceptions = exception_map();
  // A single Porter pass is not idempotent ("agreed" -> "agre" -> "agr"); iterate
  // to the fixed point. Each pass never lengthens the word, so this terminates.
  for (int pass = 0; pass < 32; ++pass) {
    std::u32string next = word;
    if (auto it = exceptions.find(next); it != exceptions.end()) next = it->second;
    next = porter_stem(std::move(next));
    if (next == word) break;
    word = std::move(next);
  }
  return word;
}

std::uint64_t fnv1a(std::uint64_t hash, std::string_view bytes) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

bool has_space(std::string_view s) {
  for (unsigned char c : s)
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') return true;
  return false;
}

}  // namespace

StopWordList::StopWordList(std::set<std::string, std::less<>> words) : words_(std::move(words)) {
  for (const auto& w : words_) {
    if (w.empty() || has_space(w))
      throw Error(ErrorCode::InvalidArgument, "stop word '" + w + "' is empty or has whitespace");
    if (fold_case(w) != w)
      throw Error(ErrorCode::InvalidArgument, "stop word '" + w + "' is not lowercase");
  }
}

StopWordList StopWordList::english127() {
  return StopWordList(std::set<std::string, std::less<>>(kEnglish127.begin(), kEnglish127.end()));
}

StopWordList StopWordList::english_default() {
  auto words = english127().words();
  words.insert("el");
  return StopWordList(std::move(words));
}

StopWordList StopWordList::from_stream(std::istream& in) {
  std::set<std::string, std::less<>> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (has_space(line) || fold_case(line) != line)
      throw Error(ErrorCode::ParseError, "stop-word line " + std::to_string(line_no) + ": '" +
                                             line + "' must be a single lowercase word");
    words.insert(line);
  }
  return StopWordList(std::move(words));
}

std::string StopWordList::fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const auto& w : words_) {
    hash = fnv1a(hash, w);
    hash = fnv1a(hash, "\n");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = nfc_code_points(text);
  std::vector<Token> tokens;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    if (!is_word_char(cps[i])) {
      ++i;
      continue;
    }
    std::u32string surface;
    surface.push_back(cps[i++]);
    while (i < n) {
      const char32_t c = cps[i];
      if (is_word_char(c) || is_mark(c)) {
        surface.push_back(c);
        ++i;
      } else if (is_joiner(c) && i + 1 < n && is_word_char(cps[i + 1])) {
        surface.push_back(c == char32_t{0x2019} ? U'\'' : c);
        surface.push_back(cps[i + 1]);
        i += 2;
      } else {
        break;
      }
    }
    tokens.push_back(Token{encode_utf8(surface), all_uppercase(surface)});
  }
  return tokens;
}

std::string fold_case(std::string_view text) { return encode_utf8(fold(decode_utf8(text))); }

std::string stem(std::string_view word) {
  return encode_utf8(stem_code_points(decode_utf8(word)));
}

NormalizedTermSet normalize(std::string_view text, const StopWordList& stops) {
  NormalizedTermSet terms;
  for (const Token& token : tokenize(text)) {
    const std::u32string folded = fold(decode_utf8(token.surface));
    std::string folded_utf8 = encode_utf8(folded);
    if (contains_digit(folded)) {
      terms.insert(std::move(folded_utf8));
      continue;
    }
    const bool exempt = token.was_all_uppercase;
    if (!exempt && stops.contains(folded_utf8)) continue;
    std::string stemmed = encode_utf8(stem_code_points(folded));
    // "doing" -> "do": a stem that is itself a stop word would vanish on re-normalization
    if (!exempt && stops.contains(stemmed)) continue;
    terms.insert(std::move(stemmed));
  }
  return terms;
}

}  // namespace keyjudge
