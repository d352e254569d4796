#pragma once

#include <string>
#include <vector>

#include "subdyn/dill.hpp"
#include "subdyn/io.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn::testing {

inline Substitution subst(const std::string& rules) { return parse_substitution(rules); }

inline LanguagePtr thue_morse() {
  static const LanguagePtr lang = make_language(subst("0 -> 01\n1 -> 10\n"));
  return lang;
}
inline LanguagePtr fibonacci() {
  static const LanguagePtr lang = make_language(subst("a -> ab\nb -> a\n"));
  return lang;
}
inline LanguagePtr tribonacci() {
  static const LanguagePtr lang = make_language(subst("a -> ab\nb -> ac\nc -> a\n"));
  return lang;
}
inline LanguagePtr unbalanced() {
  static const LanguagePtr lang = make_language(subst("0 -> 0001\n1 -> 110\n"));
  return lang;
}

inline Word w(const LanguagePtr& lang, const std::string& text) { return parse_word(text, lang->alphabet()); }

// Independent of the library: iterate the images on plain strings.
inline std::string naive_fixed_point(const std::vector<std::string>& images, char seed, std::size_t n) {
  std::string x(1, seed);
  while (x.size() < n) {
    std::string next;
    for (char c : x) next += images[static_cast<std::size_t>(c - '0')];
    x = next;
  }
  return x.substr(0, n);
}

// Two-letter flip on a language over two letters.
inline DillTable flip(const LanguagePtr& lang) { return letter_map(lang, lang, {1, 0}); }

}  // namespace subdyn::testing
