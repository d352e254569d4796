#include "subdyn/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "subdyn/error.hpp"

namespace subdyn {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.size() > 0xFFFF) fail(ErrorKind::argument, "alphabet too large");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const std::string& token = letters_[i];
    if (token.empty() || token == "-" ||
        std::any_of(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); })) {
      fail(ErrorKind::argument, "invalid letter token '" + token + "'");
    }
    if (!index_.emplace(token, static_cast<Letter>(i)).second) {
      fail(ErrorKind::argument, "duplicate letter '" + token + "'");
    }
    if (token.size() != 1) compact_ = false;
  }
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Word::sub(std::size_t pos, std::size_t len) const {
  if (pos >= letters_.size()) return {};
  len = std::min(len, letters_.size() - pos);
  return Word(std::span<const Letter>(letters_).subspan(pos, len));
}

Word& Word::operator+=(const Word& other) { return *this += other.view(); }

Word& Word::operator+=(std::span<const Letter> other) {
  letters_.insert(letters_.end(), other.begin(), other.end());
  return *this;
}

std::size_t WordHash::hash(std::span<const Letter> w) noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Letter a : w) {
    h ^= a;
    h *= 1099511628211ULL;
  }
  h ^= w.size();
  return static_cast<std::size_t>(h * 0x9E3779B97F4A7C15ULL);
}

std::size_t occurrences(const Word& w, const Word& v) {
  if (v.empty()) fail(ErrorKind::argument, "occurrences: pattern must be non-empty");
  if (v.size() > w.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + v.size() <= w.size(); ++i) {
    if (std::equal(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

std::set<Word> factors(const Word& w, std::size_t n) {
  std::set<Word> out;
  if (n > w.size()) return out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.sub(i, n));
  return out;
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !alphabet.compact()) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() == 1 && tokens[0] == "-") return {};
  if (tokens.empty()) fail(ErrorKind::parse, "empty word (write ε as '-')");

  Word w;
  auto push = [&](std::string_view token) {
    auto a = alphabet.find(token);
    if (!a) fail(ErrorKind::parse, "unknown letter '" + std::string(token) + "'");
    w.push_back(*a);
  };
  if (tokens.size() == 1 && alphabet.compact()) {
    for (char c : tokens[0]) push(std::string_view(&c, 1));
  } else {
    for (const auto& t : tokens) push(t);
  }
  return w;
}

}  // namespace subdyn
