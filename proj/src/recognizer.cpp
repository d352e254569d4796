#include "subdyn/recognizer.hpp"

#include <unordered_map>

#include "subdyn/error.hpp"

namespace subdyn {

namespace {

CutData cuts_of_image(const Substitution& s, const Word& y, std::size_t n) {
  CutData data;
  for (Letter a : y) {
    if (data.prefix.size() >= n) break;
    data.cuts.push_back(data.prefix.size());
    data.sources.push_back(a);
    data.prefix += s.image(a);
  }
  return data;
}

}  // namespace

CutData cut_data(const Substitution& s, Letter seed, std::size_t n) {
  // x = s(x): the cuts of x are the images of its own letters; |y| ≤ |x| suffices.
  const Word x = fixed_point_prefix(s, seed, std::max<std::size_t>(n, 1));
  return cuts_of_image(s, x, n);
}

CutData cut_data(const FactorLanguage& lang, std::size_t n) {
  const Substitution& s = lang.substitution();
  // Each letter of y yields at least one letter of x.
  return cuts_of_image(s, lang.prefix(std::max<std::size_t>(n, 1)), n);
}

std::optional<CutTable> cut_table(const CutData& data, std::size_t window_len, std::size_t offset) {
  if (offset >= window_len) fail(ErrorKind::argument, "cut offset outside the window");
  const Word& x = data.prefix;
  std::vector<int> mark(x.size(), -1);
  for (std::size_t k = 0; k < data.cuts.size(); ++k) mark[data.cuts[k]] = data.sources[k];

  std::unordered_map<Word, int, WordHash> seen;
  for (std::size_t j = 0; j + window_len <= x.size(); ++j) {
    const int value = mark[j + offset];
    auto [it, fresh] = seen.try_emplace(x.sub(j, window_len), value);
    if (!fresh && it->second != value) return std::nullopt;
  }
  CutTable table;
  for (auto& [w, v] : seen) table.emplace(w, v < 0 ? std::nullopt : std::optional<Letter>(Letter(v)));
  return table;
}

Recognizer::Recognizer(LanguagePtr language, std::size_t radius, CutTable table, std::size_t build_length)
    : language_(std::move(language)), radius_(radius), table_(std::move(table)), build_length_(build_length) {}

std::optional<Letter> Recognizer::lookup(std::span<const Letter> window) const {
  auto it = table_.find(Word(window));
  if (it == table_.end()) {
    fail(ErrorKind::coverage, "unseen window " + format_word(Word(window), language_->alphabet()) +
                                  " (recognizer coverage insufficient or word not in the language)");
  }
  return it->second;
}

std::size_t coverage_length(const FactorLanguage& lang, std::size_t window_len, std::size_t coverage_factor) {
  return coverage_factor * lang.recurrence_gap(window_len) + window_len;
}

Recognizer build_recognizer(LanguagePtr lang, std::size_t max_radius, std::size_t coverage_factor) {
  if (!lang) fail(ErrorKind::argument, "build_recognizer: no language");
  if (coverage_factor == 0) fail(ErrorKind::argument, "coverage factor must be positive");
  if (!is_aperiodic_heuristic(*lang, 1024)) {
    fail(ErrorKind::precondition, "fixed point is eventually periodic; the substitution is not recognizable");
  }
  for (std::size_t radius = 1; radius <= max_radius; ++radius) {
    const std::size_t window = 2 * radius + 1;
    const CutData data = cut_data(*lang, coverage_length(*lang, window, coverage_factor));
    if (auto table = cut_table(data, window, radius)) {
      return Recognizer(lang, radius, std::move(*table), data.prefix.size());
    }
  }
  fail(ErrorKind::precondition, "not recognizable within radius " + std::to_string(max_radius));
}

Word decode(const Recognizer& r, const Word& w) {
  const std::size_t len = r.window_length();
  if (w.size() < len) fail(ErrorKind::argument, "decode: word shorter than the recognizer window");
  Word out;
  for (std::size_t j = 0; j + len <= w.size(); ++j) {
    if (auto letter = r.lookup(w.view().subspan(j, len))) out.push_back(*letter);
  }
  return out;
}

}  // namespace subdyn
