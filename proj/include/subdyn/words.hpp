#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subdyn {

using Letter = std::uint16_t;

/// Ordered set of letter tokens. Letters are referred to by their index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  const std::string& name(Letter a) const { return letters_.at(a); }
  const std::vector<std::string>& names() const noexcept { return letters_; }
  std::optional<Letter> find(std::string_view token) const;

  /// True when every token is a single character, so words print without separators.
  bool compact() const noexcept { return compact_; }

  bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Letter> index_;
  bool compact_ = true;
};

/// Finite word over an alphabet, stored as letter indices.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::span<const Letter> letters) : letters_(letters.begin(), letters.end()) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  std::span<const Letter> view() const noexcept { return letters_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  /// w_{[pos, pos+len-1]}; clamps at the end of the word.
  Word sub(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return sub(0, len); }

  void push_back(Letter a) { letters_.push_back(a); }
  Word& operator+=(const Word& other);
  Word& operator+=(std::span<const Letter> other);
  friend Word operator+(Word a, const Word& b) { return a += b; }

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return hash(w.view()); }
  std::size_t operator()(std::span<const Letter> w) const noexcept { return hash(w); }
  static std::size_t hash(std::span<const Letter> w) noexcept;
};

/// |w|_v, counting overlapping occurrences.
std::size_t occurrences(const Word& w, const Word& v);

/// Set of length-n factors of w. {ε} for n = 0, empty when n > |w|.
std::set<Word> factors(const Word& w, std::size_t n);

/// Text form: letters run together for single-character alphabets, else space-separated; ε is "-".
std::string format_word(const Word& w, const Alphabet& alphabet);
Word parse_word(std::string_view text, const Alphabet& alphabet);

}  // namespace subdyn
