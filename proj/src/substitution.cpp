#include "subdyn/substitution.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "subdyn/error.hpp"

namespace subdyn {

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size()) fail(ErrorKind::argument, "substitution needs one image per letter");
  if (images_.empty()) fail(ErrorKind::argument, "substitution over an empty alphabet");
  min_len_ = images_.front().size();
  for (std::size_t a = 0; a < images_.size(); ++a) {
    const Word& img = images_[a];
    if (img.empty()) fail(ErrorKind::argument, "erasing rule for letter '" + alphabet_.name(Letter(a)) + "'");
    for (Letter b : img) {
      if (b >= alphabet_.size()) fail(ErrorKind::argument, "image uses a letter outside the alphabet");
    }
    max_len_ = std::max(max_len_, img.size());
    min_len_ = std::min(min_len_, img.size());
  }
}

Word Substitution::apply(const Word& w) const {
  Word out;
  for (Letter a : w) out += images_[a];
  return out;
}

Substitution Substitution::power(unsigned k) const {
  if (k == 0) fail(ErrorKind::argument, "power must be at least 1");
  Substitution result = *this;
  for (unsigned i = 1; i < k; ++i) result = compose(*this, result);
  return result;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  if (!(outer.alphabet() == inner.alphabet())) fail(ErrorKind::argument, "compose: alphabets differ");
  std::vector<Word> images;
  images.reserve(inner.size());
  for (const Word& img : inner.images()) images.push_back(outer.apply(img));
  return Substitution(inner.alphabet(), std::move(images));
}

CountMatrix associated_matrix(const Substitution& s) {
  const auto k = static_cast<Eigen::Index>(s.size());
  CountMatrix m = CountMatrix::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Letter b : s.image(Letter(a))) m(a, b) += 1;
  }
  return m;
}

bool is_primitive(const CountMatrix& m) {
  const Eigen::Index k = m.rows();
  if (k == 0 || m.cols() != k) return false;
  using Pattern = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  const Pattern base = (m.array() > 0).cast<std::int64_t>();
  Pattern power = base;
  const Eigen::Index wielandt = (k - 1) * (k - 1) + 1;
  for (Eigen::Index n = 1; n <= wielandt; ++n) {
    if ((power.array() > 0).all()) return true;
    power = ((power * base).array() > 0).cast<std::int64_t>();
  }
  return false;
}

bool is_primitive(const Substitution& s) { return is_primitive(associated_matrix(s)); }

bool is_uniform(const Substitution& s) { return s.min_image_length() == s.max_image_length(); }

bool is_injective(const Substitution& s) {
  std::set<Word> seen(s.images().begin(), s.images().end());
  return seen.size() == s.size();
}

std::vector<Letter> prolongable_letters(const Substitution& s) {
  std::vector<Letter> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    const Word& img = s.image(Letter(a));
    if (img[0] == a && img.size() >= 2) out.push_back(Letter(a));
  }
  return out;
}

std::optional<std::pair<unsigned, Letter>> prolongable_power(const Substitution& s) {
  Substitution p = s;
  for (unsigned k = 1; k <= std::max<std::size_t>(s.size(), 1) + 1; ++k) {
    if (k > 1) p = compose(s, p);
    auto letters = prolongable_letters(p);
    if (!letters.empty()) return std::pair{k, letters.front()};
  }
  return std::nullopt;
}

Word fixed_point_prefix(const Substitution& s, Letter seed, std::size_t n) {
  if (seed >= s.size()) fail(ErrorKind::argument, "seed outside the alphabet");
  const Word& first = s.image(seed);
  if (first[0] != seed || first.size() < 2) {
    fail(ErrorKind::precondition,
         "letter '" + s.alphabet().name(seed) + "' is not self-prolongable; use a power of the substitution");
  }
  Word x = first;
  for (std::size_t i = 1; x.size() < n; ++i) x += s.image(x[i]);
  return x.prefix(n);
}

FactorLanguage::FactorLanguage(Substitution s) : subst_(std::move(s)), generator_(subst_) {
  if (!is_primitive(subst_)) {
    fail(ErrorKind::unsupported, "factor languages are only computed for primitive substitutions");
  }
  auto pw = prolongable_power(subst_);
  if (!pw) fail(ErrorKind::unsupported, "no power of the substitution has a prolongable letter");
  power_ = pw->first;
  seed_ = pw->second;
  generator_ = subst_.power(power_);
}

const std::vector<Word>& FactorLanguage::words(std::size_t n) const { return bucket(n).sorted; }

bool FactorLanguage::contains(std::span<const Letter> w) const {
  const Bucket& b = bucket(w.size());
  return b.members.find(Word(w)) != b.members.end();
}

const FactorLanguage::Bucket& FactorLanguage::bucket(std::size_t n) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = buckets_.find(n); it != buckets_.end()) return it->second;
  }
  compute_up_to(n);
  std::shared_lock lock(mutex_);
  return buckets_.at(n);
}

void FactorLanguage::compute_up_to(std::size_t n) const {
  std::unique_lock lock(mutex_);
  if (buckets_.count(n)) return;

  std::unordered_set<Word, WordHash> found;
  std::size_t depth = 0;
  if (n > 0) {
    // Iterate τ on every letter and collect length-n factors until one more
    // iteration (with all images already long enough) adds nothing.
    std::vector<Word> current;
    for (std::size_t a = 0; a < subst_.size(); ++a) current.push_back(Word{Letter(a)});
    bool previous_long = false;
    constexpr std::size_t kLengthLimit = std::size_t{1} << 28;
    for (;;) {
      ++depth;
      std::size_t total = 0;
      bool all_long = true;
      for (Word& w : current) {
        w = subst_.apply(w);
        total += w.size();
        all_long = all_long && w.size() >= n;
      }
      if (total > kLengthLimit) fail(ErrorKind::budget, "factor language did not stabilize within length budget");
      const std::size_t before = found.size();
      for (const Word& w : current) {
        for (std::size_t i = 0; i + n <= w.size(); ++i) found.insert(w.sub(i, n));
      }
      if (found.size() * n > kLengthLimit) fail(ErrorKind::budget, "factor language too large to materialize");
      if (previous_long && all_long && found.size() == before) break;
      previous_long = all_long;
    }
  }

  auto make_bucket = [](std::set<Word> words) {
    Bucket b;
    b.sorted.assign(words.begin(), words.end());
    b.members.insert(b.sorted.begin(), b.sorted.end());
    return b;
  };
  // One-sided languages are right-extendable, so every shorter length is the prefix set.
  for (std::size_t k = 0; k <= n; ++k) {
    if (buckets_.count(k)) continue;
    std::set<Word> words;
    if (k == 0) {
      words.insert(Word{});
    } else {
      for (const Word& w : found) words.insert(w.prefix(k));
    }
    buckets_.emplace(k, make_bucket(std::move(words)));
  }
  if (n >= computed_) {
    computed_ = n;
    depth_ = depth;
  }
}

std::size_t FactorLanguage::stabilization_depth() const {
  std::shared_lock lock(mutex_);
  return depth_;
}

Word FactorLanguage::prefix(std::size_t n) const {
  {
    std::shared_lock lock(mutex_);
    if (prefix_.size() >= n) return prefix_.prefix(n);
  }
  std::unique_lock lock(mutex_);
  if (prefix_.size() < n) prefix_ = fixed_point_prefix(generator_, seed_, std::max(n, 2 * prefix_.size()));
  return prefix_.prefix(n);
}

std::size_t FactorLanguage::recurrence_gap(std::size_t n) const {
  if (n == 0) return 1;
  {
    std::shared_lock lock(mutex_);
    if (auto it = gaps_.find(n); it != gaps_.end()) return it->second;
  }
  const std::size_t expected = words(n).size();

  auto measure = [&](std::size_t length) {
    const Word x = prefix(length);
    std::unordered_map<Word, std::size_t, WordHash> last;
    std::size_t gap = 0;
    for (std::size_t i = 0; i + n <= x.size(); ++i) {
      auto [it, fresh] = last.try_emplace(x.sub(i, n), i);
      gap = std::max(gap, fresh ? i + 1 : i - it->second);
      it->second = i;
    }
    return std::pair{last.size(), gap};
  };

  std::size_t length = std::max<std::size_t>(1024, 64 * n);
  std::size_t result = 0;
  for (;;) {
    if (length > (std::size_t{1} << 27) || length * n > (std::size_t{1} << 34)) {
      fail(ErrorKind::budget, "recurrence gap did not stabilize within the scan budget");
    }
    auto [seen, gap] = measure(length);
    if (seen == expected) {
      auto [seen2, gap2] = measure(2 * length);
      if (gap2 == gap) {
        result = gap;
        break;
      }
    }
    length *= 2;
  }
  std::unique_lock lock(mutex_);
  gaps_[n] = result;
  return result;
}

std::set<Word> language(const Substitution& s, std::size_t n) {
  FactorLanguage lang(s);
  const auto& w = lang.words(n);
  return {w.begin(), w.end()};
}

std::optional<std::size_t> bounded_power_exponent(const FactorLanguage& lang, std::size_t max_word_len,
                                                  std::size_t max_exponent) {
  if (max_word_len == 0) fail(ErrorKind::argument, "max_word_len must be positive");
  for (std::size_t exponent = 2; exponent <= max_exponent; ++exponent) {
    bool power_found = false;
    for (std::size_t len = 1; len <= max_word_len && !power_found; ++len) {
      for (const Word& w : lang.words(len)) {
        Word p;
        for (std::size_t e = 0; e < exponent; ++e) p += w;
        if (lang.contains(p)) {
          power_found = true;
          break;
        }
      }
    }
    if (!power_found) return exponent;
  }
  return std::nullopt;
}

bool is_aperiodic_heuristic(const Word& x) {
  const std::size_t depth = x.size();
  const std::size_t from = depth / 4;
  for (std::size_t p = 1; p <= depth / 4; ++p) {
    bool periodic = true;
    for (std::size_t i = from; i + p < depth; ++i) {
      if (x[i] != x[i + p]) {
        periodic = false;
        break;
      }
    }
    if (periodic) return false;
  }
  return true;
}

bool is_aperiodic_heuristic(const FactorLanguage& lang, std::size_t depth) {
  return is_aperiodic_heuristic(lang.prefix(depth));
}

std::size_t recurrence_gap(const Substitution& s, std::size_t n) { return FactorLanguage(s).recurrence_gap(n); }

}  // namespace subdyn
