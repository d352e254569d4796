#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subdyn/recognizer.hpp"
#include "subdyn/substitution.hpp"
#include "subdyn/words.hpp"

namespace subdyn {

/// Same language: the same object, or languages of equal substitutions.
bool same_language(const LanguagePtr& a, const LanguagePtr& b);

/// Finite implementation φ of a dill map X → Y: windows B_{I+1}(X) → words over Y,
/// applied as Φ(x) = φ(x) φ(σx) φ(σ²x) ⋯. Block maps are the case where every output
/// has length 1.
class DillTable {
 public:
  /// Throws argument when a window of B_{I+1}(X) is missing or a key is not in the language.
  DillTable(LanguagePtr domain, LanguagePtr target, std::size_t in_radius, std::map<Word, Word> table);

  const LanguagePtr& domain() const noexcept { return domain_; }
  const LanguagePtr& target() const noexcept { return target_; }
  std::size_t in_radius() const noexcept { return in_radius_; }
  std::size_t window_length() const noexcept { return in_radius_ + 1; }
  /// Longest output, O(φ).
  std::size_t out_radius() const noexcept { return out_radius_; }
  const std::map<Word, Word>& table() const noexcept { return table_; }

  /// Output for a window of length I+1; throws domain when it is not in the table.
  const Word& output(std::span<const Letter> window) const;

  bool is_block_map() const;

  friend bool operator==(const DillTable& a, const DillTable& b) {
    return a.in_radius_ == b.in_radius_ && a.table_ == b.table_;
  }

 private:
  LanguagePtr domain_;
  LanguagePtr target_;
  std::size_t in_radius_;
  std::size_t out_radius_ = 0;
  std::map<Word, Word> table_;
};

/// Sliding block code with one-sided neighbourhood [0, r].
struct BlockRule {
  LanguagePtr domain;
  LanguagePtr target;
  std::size_t radius = 0;
  std::map<Word, Letter> table;
};

DillTable from_block_map(const BlockRule& b);
/// The block rule behind a table with all outputs of length 1.
std::optional<BlockRule> as_block_rule(const DillTable& d);

/// a ↦ τ(a) on X_τ.
DillTable from_substitution(const LanguagePtr& lang);
DillTable identity_map(const LanguagePtr& lang);
/// σⁿ as the rule w ↦ w_n on windows of length n+1.
DillTable shift_map(const LanguagePtr& lang, std::size_t n);
/// Letter-to-letter map (e.g. the bit flip), I = 0.
DillTable letter_map(const LanguagePtr& domain, const LanguagePtr& target, const std::vector<Letter>& images);

/// Concatenated outputs over the |w| − I windows of w.
Word apply_prefix(const DillTable& d, const Word& w);

/// Smallest in-radius that still determines every output.
DillTable canonicalize(const DillTable& d);

/// No cycle of the window-overlap graph has only empty outputs, so every point is
/// eventually mapped to a non-empty word.
bool is_nontrivial(const DillTable& d);

/// First word w ∈ B_n(X) whose image leaves B(Y), or nullopt when every image is admissible.
std::optional<Word> find_inadmissible_image(const DillTable& d, std::size_t n);

/// d2 ∘ d1, canonicalized. Throws argument when the languages do not chain, domain when d1
/// produces a word d2 cannot read, and budget when no radius up to `max_radius` suffices.
DillTable compose(const DillTable& d2, const DillTable& d1, std::size_t max_radius = 4096);

/// σᵏ ∘ d.
DillTable shift_after(const DillTable& d, std::size_t k);

enum class Tristate { yes, no, unknown };
std::string to_string(Tristate t);

struct InvariantOptions {
  /// Start points scanned in the domain point; 0 means "same as the horizon".
  std::size_t starts = 0;
  /// D above this is reported as unbounded.
  double unbounded_threshold = 64.0;
  /// D(T) − D(T/2) at most this is reported as stable.
  double stable_tolerance = 1.0;
};

/// Measured growth: lengths |ⁿφ(σˢx)| for n ≤ horizon over many starts s.
struct InvariantReport {
  double z = 0;        // slope minimising the discrepancy
  double z_width = 0;  // D / horizon: any slope outside [z − w, z + w] is inconsistent with the data
  double d_observed = 0;
  double d_half = 0;   // discrepancy with starts and lengths both halved
  Tristate d_bounded = Tristate::unknown;
  std::size_t in_radius = 0;
  std::size_t out_radius = 0;
  std::size_t horizon = 0;
};

InvariantReport invariants(const DillTable& d, std::size_t horizon, const InvariantOptions& options = {});

/// Predicted Z and upper bounds for D and I of d2 ∘ d1 from the invariants of the factors.
struct CompositionBounds {
  double z = 0;
  double d_max = 0;
  double i_max = 0;
};
CompositionBounds compose_invariant_bounds(const InvariantReport& r1, const InvariantReport& r2);

/// Smallest i + j (then smallest i) with σⁱ(Φ₁(x)) = σʲ(Φ₂(x)) on x = the domain's fixed point,
/// compared over at least prefix_len letters. Throws argument when the outputs stay too short.
std::optional<std::pair<std::size_t, std::size_t>> almost_equivalent(const DillTable& d1, const DillTable& d2,
                                                                     std::size_t prefix_len = 512,
                                                                     std::size_t shift_bound = 32);

/// Almost inverse of τ from its recognizer: I = 2L, output the source letter when position c
/// of the window is a cut, ε otherwise. c is the smallest offset in [0, L] for which the
/// windows decide the cut.
DillTable almost_inverse(const Recognizer& r);

}  // namespace subdyn
