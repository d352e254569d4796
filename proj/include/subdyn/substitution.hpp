#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <unordered_set>
#include <vector>

#include "subdyn/words.hpp"

namespace subdyn {

/// Letter-count matrices. Entry (a, b) is |τ(a)|_b, so row a sums to |τ(a)|
/// and the matrix of (outer ∘ inner) is matrix(inner) * matrix(outer).
using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Non-erasing substitution: one non-empty image per letter.
class Substitution {
 public:
  Substitution(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return images_.size(); }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const noexcept { return images_; }
  std::size_t max_image_length() const noexcept { return max_len_; }
  std::size_t min_image_length() const noexcept { return min_len_; }

  Word apply(const Word& w) const;
  Word operator()(const Word& w) const { return apply(w); }

  /// τ^k, k ≥ 1.
  Substitution power(unsigned k) const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.alphabet_ == b.alphabet_ && a.images_ == b.images_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
  std::size_t max_len_ = 0;
  std::size_t min_len_ = 0;
};

/// outer ∘ inner over a shared alphabet.
Substitution compose(const Substitution& outer, const Substitution& inner);

CountMatrix associated_matrix(const Substitution& s);

/// Some power M^n with n ≤ (k-1)^2 + 1 is entrywise positive.
bool is_primitive(const CountMatrix& m);
bool is_primitive(const Substitution& s);
bool is_uniform(const Substitution& s);
bool is_injective(const Substitution& s);

/// Letters a whose image starts with a and has length ≥ 2.
std::vector<Letter> prolongable_letters(const Substitution& s);

/// Smallest k ≥ 1 such that τ^k has a prolongable letter, with that letter; nullopt if none up to |A|.
std::optional<std::pair<unsigned, Letter>> prolongable_power(const Substitution& s);

/// First n letters of the fixed point starting with `seed`. Throws precondition if seed is not prolongable.
Word fixed_point_prefix(const Substitution& s, Letter seed, std::size_t n);

/// Factor language B_n(X_τ) of a primitive substitution, memoized per length.
///
/// Points of X_τ are generated from the fixed point of the smallest power of τ with
/// a prolongable letter, so τ itself never needs a prolongable letter.
class FactorLanguage {
 public:
  explicit FactorLanguage(Substitution s);

  const Substitution& substitution() const noexcept { return subst_; }
  const Alphabet& alphabet() const noexcept { return subst_.alphabet(); }

  /// Power k and seed used to generate the fixed point.
  unsigned generator_power() const noexcept { return power_; }
  Letter seed() const noexcept { return seed_; }

  /// B_n, sorted. References stay valid for the lifetime of the language.
  const std::vector<Word>& words(std::size_t n) const;
  bool contains(std::span<const Letter> w) const;
  bool contains(const Word& w) const { return contains(w.view()); }

  /// Prefix of a one-sided fixed point x ∈ X_τ.
  Word prefix(std::size_t n) const;

  /// Iterations of τ used to stabilize the longest computed length.
  std::size_t stabilization_depth() const;

  /// Smallest G such that, on the fixed point, every w ∈ B_n first occurs before G
  /// and consecutive occurrences are at most G apart. recurrence_gap(0) = 1.
  std::size_t recurrence_gap(std::size_t n) const;

 private:
  struct Bucket {
    std::vector<Word> sorted;
    std::unordered_set<Word, WordHash, std::equal_to<>> members;
  };

  const Bucket& bucket(std::size_t n) const;
  void compute_up_to(std::size_t n) const;

  Substitution subst_;
  Substitution generator_;
  unsigned power_ = 1;
  Letter seed_ = 0;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::size_t, Bucket> buckets_;
  mutable std::size_t computed_ = 0;
  mutable std::size_t depth_ = 0;
  mutable Word prefix_;
  mutable std::map<std::size_t, std::size_t> gaps_;
};

using LanguagePtr = std::shared_ptr<const FactorLanguage>;

inline LanguagePtr make_language(Substitution s) {
  return std::make_shared<const FactorLanguage>(std::move(s));
}

/// Convenience wrapper: B_n(X_s) as a set.
std::set<Word> language(const Substitution& s, std::size_t n);

/// Smallest N ≥ 2 with w^N ∉ B(X) for every non-empty |w| ≤ max_word_len; nullopt when a
/// power persists up to max_exponent (periodic behaviour).
std::optional<std::size_t> bounded_power_exponent(const FactorLanguage& lang, std::size_t max_word_len,
                                                  std::size_t max_exponent = 32);

/// False when the fixed-point prefix of length `depth` is eventually periodic with period ≤ depth/4.
bool is_aperiodic_heuristic(const FactorLanguage& lang, std::size_t depth);
bool is_aperiodic_heuristic(const Word& prefix);

std::size_t recurrence_gap(const Substitution& s, std::size_t n);

}  // namespace subdyn
