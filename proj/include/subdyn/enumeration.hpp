#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "subdyn/dill.hpp"
#include "subdyn/recognizer.hpp"

namespace subdyn {

/// Membership in B_{≤n}(Y) for long words: a suffix automaton over a prefix of a point of
/// Y that contains every factor of length n.
class FactorAutomaton {
 public:
  FactorAutomaton(const FactorLanguage& lang, std::size_t max_len);

  std::size_t max_length() const noexcept { return max_len_; }
  /// Every factor of w of length min(len, |w|) is in the language (len ≤ max_length()).
  bool all_factors_admissible(std::span<const Letter> w, std::size_t len) const;

  /// Matching statistics of a word read letter by letter: `matched` is the longest suffix
  /// read so far that is a factor.
  struct Cursor {
    int state = 0;
    std::size_t matched = 0;
  };
  /// Reads a; true when the suffix of length `need` is a factor.
  bool extend(Cursor& c, Letter a, std::size_t need) const;

 private:
  struct State {
    std::size_t len = 0;
    int link = -1;
  };
  int step(int state, Letter a) const { return next_[static_cast<std::size_t>(state) * k_ + a]; }

  std::size_t k_;
  std::size_t max_len_;
  std::vector<State> states_;
  std::vector<int> next_;
};

struct EnumerationOptions {
  std::size_t verify_len = 0;  // 0: 4·recurrence_gap_ρ(r+1) + r
  std::size_t node_budget = 200'000'000;
  unsigned threads = 1;
};

/// verify_len default for block rules of the given radius into rho.
std::size_t default_verify_len(const FactorLanguage& rho, std::size_t radius);

/// Every rule B_{r+1}(X_τ) → letters of ρ mapping each word of B_{verify_len}(X_τ) into B(X_ρ),
/// sorted by table. The search walks a prefix of X_τ containing all of B_{verify_len}, branching
/// where a window first occurs, so every partial image is checked against B(X_ρ) as it grows.
/// Throws budget when more than node_budget letters are tried.
std::vector<BlockRule> search_block_maps(const LanguagePtr& tau, const LanguagePtr& rho, std::size_t radius,
                                         const EnumerationOptions& options, std::size_t* nodes = nullptr);

struct MorphismClass {
  BlockRule representative;        // member of least radius
  std::vector<std::size_t> shifts;  // members are σᵏ ∘ representative, one entry per k found
};

struct MorphismClassSet {
  std::vector<MorphismClass> classes;
  std::size_t radius = 0;
  std::size_t verify_len = 0;
  std::size_t nodes = 0;
};

/// Groups rules by f = σᵏ ∘ g on canonical tables; representatives have least radius,
/// then least table.
MorphismClassSet dedupe_up_to_shift(const std::vector<BlockRule>& rules);

MorphismClassSet enumerate_block_maps(const LanguagePtr& tau, const LanguagePtr& rho, std::size_t radius,
                                      const EnumerationOptions& options = {});

/// p with f(τ(X)) ⊆ σᵖ(τ(X)) for a uniform τ of length m, read off the recognized cuts.
std::size_t period_class(const DillTable& f, const Recognizer& rec);

enum class FamilyVariant { uniform, nonuniform };

/// Uniform: the state-split substitution on a_i, b_i, c (letter order a0.., b0.., c).
/// Non-uniform: τ(a_i) = b_{i+1} a_i^{n−1}, τ(b_i) = b_i a_i^n on a_i, b_i. Requires m ≥ 1, n ≥ 4.
Substitution build_example_family(std::size_t m, std::size_t n, FamilyVariant variant);

}  // namespace subdyn
