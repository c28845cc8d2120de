#include "keyjudge/porter.hpp"

#include "utf8.hpp"

namespace keyjudge {

namespace {

// Works on b[0..k] inclusive, mirroring the reference implementation's
// cursor layout; j marks the end of the stem once a suffix has matched.
class PorterStemmer {
 public:
  explicit PorterStemmer(std::u32string word) : b_(std::move(word)) {
    k_ = static_cast<int>(b_.size()) - 1;
  }

  std::u32string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
    return b_;
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case U'a': case U'e': case U'i': case U'o': case U'u':
        return false;
      case U'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // number of VC sequences in b[0..j]
  int m() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, where the last consonant is not w, x or y
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char32_t ch = b_[i];
    return !(ch == U'w' || ch == U'x' || ch == U'y');
  }

  bool ends(std::u32string_view s) {
    const int length = static_cast<int>(s.size());
    if (length > k_ + 1) return false;
    if (std::u32string_view(b_).substr(static_cast<std::size_t>(k_ - length + 1),
                                       static_cast<std::size_t>(length)) != s)
      return false;
    j_ = k_ - length;
    return true;
  }

  void set_to(std::u32string_view s) {
    b_.resize(static_cast<std::size_t>(j_ + 1));
    b_.append(s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::u32string_view s) {
    if (m() > 0) set_to(s);
  }

  void step1ab() {
    if (b_[k_] == U's') {
      if (ends(U"sses"))
        k_ -= 2;
      else if (ends(U"ies"))
        set_to(U"i");
      else if (b_[k_ - 1] != U's')
        --k_;
    }
    if (ends(U"eed")) {
      if (m() > 0) --k_;
    } else if ((ends(U"ed") || ends(U"ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends(U"at")) {
        set_to(U"ate");
      } else if (ends(U"bl")) {
        set_to(U"ble");
      } else if (ends(U"iz")) {
        set_to(U"ize");
      } else if (double_consonant(k_)) {
        --k_;
        char32_t ch = b_[k_];
        if (ch == U'l' || ch == U's' || ch == U'z') ++k_;
      } else if (j_ = k_; m() == 1 && cvc(k_)) {
        set_to(U"e");
      }
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step1c() {
    if (ends(U"y") && vowel_in_stem()) b_[k_] = U'i';
  }

  // Each table is tried in order; the first suffix that matches ends the step
  // whether or not the measure condition lets it be replaced.
  struct Rule {
    std::u32string_view suffix;
    std::u32string_view replacement;
  };

  template <std::size_t N>
  void apply_first(const Rule (&rules)[N]) {
    for (const auto& rule : rules) {
      if (ends(rule.suffix)) {
        replace_if_measured(rule.replacement);
        return;
      }
    }
  }

  void step2() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case U'a': {
        static constexpr Rule rules[] = {{U"ational", U"ate"}, {U"tional", U"tion"}};
        apply_first(rules);
        break;
      }
      case U'c': {
        static constexpr Rule rules[] = {{U"enci", U"ence"}, {U"anci", U"ance"}};
        apply_first(rules);
        break;
      }
      case U'e': {
        static constexpr Rule rules[] = {{U"izer", U"ize"}};
        apply_first(rules);
        break;
      }
      case U'l': {
        static constexpr Rule rules[] = {
            {U"bli", U"ble"}, {U"alli", U"al"}, {U"entli", U"ent"}, {U"eli", U"e"}, {U"ousli", U"ous"}};
        apply_first(rules);
        break;
      }
      case U'o': {
        static constexpr Rule rules[] = {{U"ization", U"ize"}, {U"ation", U"ate"}, {U"ator", U"ate"}};
        apply_first(rules);
        break;
      }
      case U's': {
        static constexpr Rule rules[] = {
            {U"alism", U"al"}, {U"iveness", U"ive"}, {U"fulness", U"ful"}, {U"ousness", U"ous"}};
        apply_first(rules);
        break;
      }
      case U't': {
        static constexpr Rule rules[] = {{U"aliti", U"al"}, {U"iviti", U"ive"}, {U"biliti", U"ble"}};
        apply_first(rules);
        break;
      }
      case U'g': {
        static constexpr Rule rules[] = {{U"logi", U"log"}};
        apply_first(rules);
        break;
      }
      default:
        break;
    }
  }

  void step3() {
    switch (b_[k_]) {
      case U'e': {
        static constexpr Rule rules[] = {{U"icate", U"ic"}, {U"ative", U""}, {U"alize", U"al"}};
        apply_first(rules);
        break;
      }
      case U'i': {
        static constexpr Rule rules[] = {{U"iciti", U"ic"}};
        apply_first(rules);
        break;
      }
      case U'l': {
        static constexpr Rule rules[] = {{U"ical", U"ic"}, {U"ful", U""}};
        apply_first(rules);
        break;
      }
      case U's': {
        static constexpr Rule rules[] = {{U"ness", U""}};
        apply_first(rules);
        break;
      }
      default:
        break;
    }
  }

  bool match_any(std::initializer_list<std::u32string_view> suffixes) {
    for (auto s : suffixes)
      if (ends(s)) return true;
    return false;
  }

  void step4() {
    if (k_ < 1) return;
    bool matched = false;
    switch (b_[k_ - 1]) {
      case U'a': matched = ends(U"al"); break;
      case U'c': matched = match_any({U"ance", U"ence"}); break;
      case U'e': matched = ends(U"er"); break;
      case U'i': matched = ends(U"ic"); break;
      case U'l': matched = match_any({U"able", U"ible"}); break;
      case U'n': matched = match_any({U"ant", U"ement", U"ment", U"ent"}); break;
      case U'o':
        if (ends(U"ion") && j_ >= 0 && (b_[j_] == U's' || b_[j_] == U't'))
          matched = true;
        else
          matched = ends(U"ou");
        break;
      case U's': matched = ends(U"ism"); break;
      case U't': matched = match_any({U"ate", U"iti"}); break;
      case U'u': matched = ends(U"ous"); break;
      case U'v': matched = ends(U"ive"); break;
      case U'z': matched = ends(U"ize"); break;
      default: break;
    }
    if (matched && m() > 1) k_ = j_;
  }

  void step5() {
    j_ = k_;
    if (b_[k_] == U'e') {
      int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == U'l' && double_consonant(k_) && m() > 1) --k_;
  }

  std::u32string b_;
  int k_ = 0;
  int j_ = 0;
};

}  // namespace

std::u32string porter_stem(std::u32string word) {
  if (word.size() <= 2) return word;
  return PorterStemmer(std::move(word)).run();
}

std::string porter_stem(std::string_view word) {
  return detail::encode_utf8(porter_stem(detail::decode_utf8(word)));
}

}  // namespace keyjudge
