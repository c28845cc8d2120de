#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "keyjudge/answer_key.hpp"
#include "keyjudge/error.hpp"

using namespace keyjudge;

namespace {

const StopWordList& stops() {
  static const StopWordList list = StopWordList::english_default();
  return list;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

AnswerKey parse(const std::string& text) {
  std::istringstream in(text);
  return parse_answer_key(in, stops()).key;
}

constexpr const char* kMosaic =
    "Q12\tNational Center for Supercomputing Applications; NCSA | Netscape Communications";

}  // namespace

TEST(ParseKeyLine, AnswersAndForms) {
  const KeyLine line = parse_key_line(kMosaic, stops());
  EXPECT_EQ(line.question_id, "Q12");
  ASSERT_EQ(line.answers.size(), 2u);
  ASSERT_EQ(line.answers[0].forms.size(), 2u);
  ASSERT_EQ(line.answers[1].forms.size(), 1u);
  EXPECT_EQ(line.answers[0].forms[0].raw, "National Center for Supercomputing Applications");
  EXPECT_EQ(line.answers[0].forms[1].raw, "NCSA");
  EXPECT_EQ(line.answers[1].forms[0].raw, "Netscape Communications");
  EXPECT_EQ(line.answers[0].forms[1].terms, NormalizedTermSet{"ncsa"});
  EXPECT_TRUE(line.warnings.empty());
}

TEST(ParseKeyLine, SingleForm) {
  const KeyLine line = parse_key_line("Q1\tPeruvian fishermen", stops());
  ASSERT_EQ(line.answers.size(), 1u);
  ASSERT_EQ(line.answers[0].forms.size(), 1u);
  EXPECT_EQ(line.answers[0].forms[0].terms, (NormalizedTermSet{"peru", "fisherman"}));
}

TEST(ParseKeyLine, Errors) {
  EXPECT_EQ(code_of([] { parse_key_line("Q9\tthe; of", stops()); }), ErrorCode::EmptyAnswerSet);
  EXPECT_EQ(code_of([] { parse_key_line("Q9 no tab here", stops()); }), ErrorCode::MissingTab);
  EXPECT_EQ(code_of([] { parse_key_line("Q9\t   ", stops()); }), ErrorCode::EmptyAnswerSet);
  EXPECT_EQ(code_of([] { parse_key_line("\tfoo", stops()); }), ErrorCode::MissingTab);
}

TEST(ParseKeyLine, EmptyFormsAreSkippedWithWarning) {
  const KeyLine line = parse_key_line("Q3\tthe ; Abraham Lincoln | of the | Honest Abe", stops());
  ASSERT_EQ(line.answers.size(), 2u);
  EXPECT_EQ(line.answers[0].forms.size(), 1u);
  EXPECT_EQ(line.answers[0].forms[0].raw, "Abraham Lincoln");
  EXPECT_EQ(line.answers[1].forms[0].raw, "Honest Abe");
  EXPECT_EQ(line.warnings.size(), 2u);
}

TEST(ParseKeyLine, CrlfAndInteriorWhitespace) {
  const KeyLine line = parse_key_line("Q4\t  New   York ;NYC\r", stops());
  ASSERT_EQ(line.answers[0].forms.size(), 2u);
  EXPECT_EQ(line.answers[0].forms[0].raw, "New   York");
  EXPECT_EQ(line.answers[0].forms[1].raw, "NYC");
}

TEST(ParseAnswerKey, FileLevel) {
  const std::string text = std::string("# key file\n\n") + kMosaic + "\r\nQ1\tPeruvian fishermen\n";
  const AnswerKey key = parse(text);
  EXPECT_EQ(key.size(), 2u);
  EXPECT_TRUE(key.contains("Q1"));
  EXPECT_TRUE(key.contains("Q12"));
  EXPECT_FALSE(key.contains("Q2"));
}

TEST(ParseAnswerKey, DuplicateQuestionReportsLine) {
  std::istringstream in("Q1\tfoo\nQ2\tbar\nQ1\tbaz\n");
  try {
    parse_answer_key(in, stops());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateQuestionId);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseAnswerKey, RoundTrip) {
  const AnswerKey key = parse(std::string(kMosaic) + "\nQ1\tPeruvian fishermen\nQ7\tthe | Lincoln; Abe Lincoln\n");
  const AnswerKey again = parse(serialize_answer_key(key));
  EXPECT_EQ(key, again);
}

TEST(ParseAnswerKeyProperty, SeparatorCounts) {
  const std::vector<std::string> words = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot"};
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> n_answers(1, 4), n_forms(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::string key_text;
    const int answers = n_answers(rng);
    for (int a = 0; a < answers; ++a) {
      if (a > 0) key_text += " | ";
      const int forms = n_forms(rng);
      for (int f = 0; f < forms; ++f) {
        if (f > 0) key_text += "; ";
        key_text += words[pick(rng)] + " " + words[pick(rng)];
      }
    }
    const KeyLine line = parse_key_line("Q\t" + key_text, stops());
    const auto bars = std::count(key_text.begin(), key_text.end(), '|');
    const auto semis = std::count(key_text.begin(), key_text.end(), ';');
    std::size_t total_forms = 0;
    for (const auto& answer : line.answers) total_forms += answer.forms.size();
    EXPECT_EQ(line.answers.size(), static_cast<std::size_t>(1 + bars));
    EXPECT_EQ(total_forms, static_cast<std::size_t>(1 + semis + bars));

    // round trip through the serializer
    AnswerKey key;
    key.add(line.question_id, line.answers);
    EXPECT_EQ(parse(serialize_answer_key(key)), key);
  }
}

TEST(KeyStatistics, SingleEntry) {
  const auto stats = key_statistics(parse("Q1\tPeruvian fishermen\n"));
  EXPECT_EQ(stats.answers_per_question, Rational(1));
  EXPECT_EQ(stats.forms_per_answer, Rational(1));
  EXPECT_EQ(stats.content_words_per_form, Rational(2));
}

TEST(KeyStatistics, MosaicPlusFishermen) {
  // Hand count with the default stop list ("for" removed):
  //   Q12 forms: {nation, center, supercomput, applic}=4, {ncsa}=1, {netscap, commun}=2
  //   Q1 form:   {peru, fisherman}=2
  // Per question: Q12 answers 2, forms/answer 3/2, words/form 7/3; Q1 1, 1, 2.
  const auto stats = key_statistics(parse(std::string(kMosaic) + "\nQ1\tPeruvian fishermen\n"));
  EXPECT_EQ(stats.answers_per_question, Rational(3, 2));
  EXPECT_EQ(stats.forms_per_answer, Rational(5, 4));
  EXPECT_EQ(stats.content_words_per_form, Rational(13, 6));
}

TEST(KeyStatistics, DroppedFormsAreExcluded) {
  const auto with_empty = key_statistics(parse("Q1\tthe; Peruvian fishermen | of\n"));
  const auto without = key_statistics(parse("Q1\tPeruvian fishermen\n"));
  EXPECT_EQ(with_empty.answers_per_question, without.answers_per_question);
  EXPECT_EQ(with_empty.forms_per_answer, without.forms_per_answer);
  EXPECT_EQ(with_empty.content_words_per_form, without.content_words_per_form);
}

TEST(KeyStatistics, PermutationInvariant) {
  const std::vector<std::string> lines = {kMosaic, "Q1\tPeruvian fishermen", "Q5\tBlue; azure | Green",
                                          "Q6\tGeorge Washington"};
  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::optional<KeyStatistics> first;
  do {
    std::string text;
    for (auto i : order) text += lines[i] + "\n";
    const auto stats = key_statistics(parse(text));
    if (!first) first = stats;
    EXPECT_EQ(stats.answers_per_question, first->answers_per_question);
    EXPECT_EQ(stats.forms_per_answer, first->forms_per_answer);
    EXPECT_EQ(stats.content_words_per_form, first->content_words_per_form);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(KeyStatistics, EmptyKeyRejected) {
  EXPECT_EQ(code_of([] { key_statistics(AnswerKey{}); }), ErrorCode::InvalidArgument);
}
