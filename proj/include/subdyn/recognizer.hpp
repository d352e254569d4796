#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "subdyn/substitution.hpp"
#include "subdyn/words.hpp"

namespace subdyn {

/// Prefix of a point x = τ(y) together with its cutting positions |τ(y_{[0,p)})| and
/// the letters y_p they come from. cuts[0] = 0.
struct CutData {
  Word prefix;
  std::vector<std::size_t> cuts;
  std::vector<Letter> sources;
};

/// Cuts of the fixed point of s starting at `seed`; x = s(x), so the prefix is the fixed point itself.
CutData cut_data(const Substitution& s, Letter seed, std::size_t n);

/// Cuts of x = τ(y), y the fixed point the language is generated from. Works when only a
/// power of τ is prolongable.
CutData cut_data(const FactorLanguage& lang, std::size_t n);

/// Window → (source letter, or nullopt for "not a cut") for every window of length
/// `window_len` in the prefix, testing position `offset` of the window. nullopt on conflict.
using CutTable = std::map<Word, std::optional<Letter>>;
std::optional<CutTable> cut_table(const CutData& data, std::size_t window_len, std::size_t offset);

/// Window table R of strict recognizability: windows of length 2L+1 with the tested
/// position at the centre (offset L).
class Recognizer {
 public:
  Recognizer(LanguagePtr language, std::size_t radius, CutTable table, std::size_t build_length);

  std::size_t radius() const noexcept { return radius_; }
  std::size_t window_length() const noexcept { return 2 * radius_ + 1; }
  const CutTable& table() const noexcept { return table_; }
  const LanguagePtr& language() const noexcept { return language_; }
  /// Length of the fixed-point prefix the table was read from.
  std::size_t build_length() const noexcept { return build_length_; }

  /// Entry for a window; throws coverage when the window was never seen.
  std::optional<Letter> lookup(std::span<const Letter> window) const;

 private:
  LanguagePtr language_;
  std::size_t radius_;
  CutTable table_;
  std::size_t build_length_;
};

/// Prefix length scanned for windows of length `window_len`.
std::size_t coverage_length(const FactorLanguage& lang, std::size_t window_len, std::size_t coverage_factor);

/// Smallest radius L ≤ max_radius whose table is conflict-free on a prefix of length
/// ≥ coverage_factor · recurrence_gap(2L+1) + 2L+1.
Recognizer build_recognizer(LanguagePtr lang, std::size_t max_radius = 16, std::size_t coverage_factor = 4);

/// Source letters at the recognized cuts of w, for centres L ≤ i < |w| − L.
Word decode(const Recognizer& r, const Word& w);

}  // namespace subdyn
