#include "subdyn/dill.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "subdyn/error.hpp"

namespace subdyn {

bool same_language(const LanguagePtr& a, const LanguagePtr& b) {
  if (!a || !b) return false;
  return a == b || a->substitution() == b->substitution();
}

DillTable::DillTable(LanguagePtr domain, LanguagePtr target, std::size_t in_radius, std::map<Word, Word> table)
    : domain_(std::move(domain)), target_(std::move(target)), in_radius_(in_radius), table_(std::move(table)) {
  if (!domain_ || !target_) fail(ErrorKind::argument, "dill table needs a domain and a target language");
  const std::size_t k = target_->alphabet().size();
  for (const auto& [w, out] : table_) {
    if (w.size() != in_radius_ + 1 || !domain_->contains(w)) {
      fail(ErrorKind::argument,
           "window " + format_word(w, domain_->alphabet()) + " is not a factor of length " +
               std::to_string(in_radius_ + 1));
    }
    for (Letter b : out) {
      if (b >= k) fail(ErrorKind::argument, "output letter outside the target alphabet");
    }
    out_radius_ = std::max(out_radius_, out.size());
  }
  for (const Word& w : domain_->words(in_radius_ + 1)) {
    if (!table_.count(w)) {
      fail(ErrorKind::argument, "table is not total: missing window " + format_word(w, domain_->alphabet()));
    }
  }
}

const Word& DillTable::output(std::span<const Letter> window) const {
  auto it = table_.find(Word(window));
  if (it == table_.end()) {
    fail(ErrorKind::domain, "window " + format_word(Word(window), domain_->alphabet()) + " is not in the table");
  }
  return it->second;
}

bool DillTable::is_block_map() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

DillTable from_block_map(const BlockRule& b) {
  std::map<Word, Word> table;
  for (const auto& [w, a] : b.table) table.emplace(w, Word{a});
  return DillTable(b.domain, b.target, b.radius, std::move(table));
}

std::optional<BlockRule> as_block_rule(const DillTable& d) {
  if (!d.is_block_map()) return std::nullopt;
  BlockRule b{d.domain(), d.target(), d.in_radius(), {}};
  for (const auto& [w, out] : d.table()) b.table.emplace(w, out[0]);
  return b;
}

DillTable from_substitution(const LanguagePtr& lang) {
  std::map<Word, Word> table;
  for (const Word& w : lang->words(1)) table.emplace(w, lang->substitution().image(w[0]));
  return DillTable(lang, lang, 0, std::move(table));
}

DillTable identity_map(const LanguagePtr& lang) { return shift_map(lang, 0); }

DillTable shift_map(const LanguagePtr& lang, std::size_t n) {
  std::map<Word, Word> table;
  for (const Word& w : lang->words(n + 1)) table.emplace(w, Word{w[n]});
  return DillTable(lang, lang, n, std::move(table));
}

DillTable letter_map(const LanguagePtr& domain, const LanguagePtr& target, const std::vector<Letter>& images) {
  if (images.size() != domain->alphabet().size()) fail(ErrorKind::argument, "letter map needs one image per letter");
  std::map<Word, Word> table;
  for (const Word& w : domain->words(1)) table.emplace(w, Word{images[w[0]]});
  return DillTable(domain, target, 0, std::move(table));
}

Word apply_prefix(const DillTable& d, const Word& w) {
  const std::size_t len = d.window_length();
  if (w.size() < len) fail(ErrorKind::argument, "apply_prefix: word shorter than the input window");
  Word out;
  for (std::size_t j = 0; j + len <= w.size(); ++j) out += d.output(w.view().subspan(j, len));
  return out;
}

DillTable canonicalize(const DillTable& d) {
  for (std::size_t radius = 0; radius < d.in_radius(); ++radius) {
    std::map<Word, Word> reduced;
    bool determined = true;
    for (const auto& [w, out] : d.table()) {
      auto [it, fresh] = reduced.try_emplace(w.prefix(radius + 1), out);
      if (!fresh && it->second != out) {
        determined = false;
        break;
      }
    }
    if (determined) return DillTable(d.domain(), d.target(), radius, std::move(reduced));
  }
  return d;
}

bool is_nontrivial(const DillTable& d) {
  // Kahn's algorithm on the overlap graph restricted to ε-output windows.
  std::map<Word, std::size_t> index;
  for (const auto& [w, out] : d.table()) {
    if (out.empty()) index.emplace(w, index.size());
  }
  if (index.empty()) return true;
  std::vector<std::vector<std::size_t>> succ(index.size());
  std::vector<std::size_t> indegree(index.size(), 0);
  const std::size_t len = d.window_length();
  for (const Word& w : d.domain()->words(len + 1)) {
    auto u = index.find(w.prefix(len));
    auto v = index.find(w.sub(1, len));
    if (u == index.end() || v == index.end()) continue;
    succ[u->second].push_back(v->second);
    ++indegree[v->second];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < indegree.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t u = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t v : succ[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  return removed == index.size();
}

std::optional<Word> find_inadmissible_image(const DillTable& d, std::size_t n) {
  if (n < d.window_length()) fail(ErrorKind::argument, "verification length shorter than the input window");
  for (const Word& w : d.domain()->words(n)) {
    if (!d.target()->contains(apply_prefix(d, w))) return w;
  }
  return std::nullopt;
}

DillTable compose(const DillTable& d2, const DillTable& d1, std::size_t max_radius) {
  if (!same_language(d1.target(), d2.domain())) {
    fail(ErrorKind::argument, "compose: target of the inner map is not the domain of the outer map");
  }
  const std::size_t i1 = d1.in_radius();
  const std::size_t i2 = d2.in_radius();
  const std::size_t len2 = d2.window_length();
  // φ(w) = ^{|φ₁(w)|}φ₂(Φ₁(w)): read the radius at which Φ₁ has produced enough letters
  // to feed |φ₁(head)| windows of φ₂ on every word.
  for (std::size_t radius = i1; radius <= max_radius; ++radius) {
    const auto& words = d1.domain()->words(radius + 1);
    std::vector<Word> images;
    images.reserve(words.size());
    bool enough = true;
    for (const Word& w : words) {
      Word u = apply_prefix(d1, w);
      if (u.size() < d1.output(w.view().first(i1 + 1)).size() + i2) {
        enough = false;
        break;
      }
      images.push_back(std::move(u));
    }
    if (!enough) continue;

    std::map<Word, Word> table;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const Word& w = words[k];
      const std::size_t head = d1.output(w.view().first(i1 + 1)).size();
      Word out;
      for (std::size_t p = 0; p < head; ++p) out += d2.output(images[k].view().subspan(p, len2));
      table.emplace(w, std::move(out));
    }
    return canonicalize(DillTable(d1.domain(), d2.target(), radius, std::move(table)));
  }
  fail(ErrorKind::budget, "compose: inner map does not produce enough output within radius " +
                              std::to_string(max_radius) + " (is its cocycle trivial?)");
}

DillTable shift_after(const DillTable& d, std::size_t k) {
  if (k == 0) return d;
  return compose(shift_map(d.target(), k), d);
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: break;
  }
  return "unknown";
}

namespace {

/// max over s ≤ starts and 0 ≤ n ≤ span of |g(s + n) − g(s)|, g(t) = P(t) − z·t.
double discrepancy(const std::vector<std::int64_t>& prefix_sums, double z, std::size_t starts, std::size_t span) {
  const std::size_t total = prefix_sums.size();
  std::vector<double> g(total);
  for (std::size_t t = 0; t < total; ++t) g[t] = static_cast<double>(prefix_sums[t]) - z * static_cast<double>(t);
  std::deque<std::size_t> hi;  // indices with decreasing g
  std::deque<std::size_t> lo;  // indices with increasing g
  std::size_t next = 0;
  double worst = 0;
  for (std::size_t s = 0; s <= starts && s + span < total; ++s) {
    for (; next <= s + span; ++next) {
      while (!hi.empty() && g[hi.back()] <= g[next]) hi.pop_back();
      hi.push_back(next);
      while (!lo.empty() && g[lo.back()] >= g[next]) lo.pop_back();
      lo.push_back(next);
    }
    while (hi.front() < s) hi.pop_front();
    while (lo.front() < s) lo.pop_front();
    worst = std::max({worst, g[hi.front()] - g[s], g[s] - g[lo.front()]});
  }
  return worst;
}

}  // namespace

InvariantReport invariants(const DillTable& d, std::size_t horizon, const InvariantOptions& options) {
  if (horizon < 2) fail(ErrorKind::argument, "horizon must be at least 2");
  InvariantReport report;
  report.in_radius = d.in_radius();
  report.out_radius = d.out_radius();
  report.horizon = horizon;

  const std::size_t starts = options.starts ? options.starts : horizon;
  const std::size_t len = d.window_length();
  const Word x = d.domain()->prefix(starts + horizon + len);
  std::vector<std::int64_t> sums(starts + horizon + 1, 0);
  std::size_t shortest = std::numeric_limits<std::size_t>::max();
  std::size_t longest = 0;
  for (std::size_t i = 0; i < starts + horizon; ++i) {
    const std::size_t l = d.output(x.view().subspan(i, len)).size();
    shortest = std::min(shortest, l);
    longest = std::max(longest, l);
    sums[i + 1] = sums[i] + static_cast<std::int64_t>(l);
  }
  if (shortest == longest) {
    report.z = static_cast<double>(shortest);
    report.d_bounded = Tristate::yes;
    return report;
  }

  // D(z) is a maximum of functions affine in z, hence convex: golden-section search.
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = static_cast<double>(shortest);
  double b = static_cast<double>(longest);
  auto cost = [&](double z) { return discrepancy(sums, z, starts, horizon); };
  double c = b - phi * (b - a);
  double e = a + phi * (b - a);
  double fc = cost(c);
  double fe = cost(e);
  for (int iter = 0; iter < 80 && b - a > 1e-12; ++iter) {
    if (fc <= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - phi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + phi * (b - a);
      fe = cost(e);
    }
  }
  report.z = (a + b) / 2;
  report.d_observed = cost(report.z);
  // Same measurement on the first half of the data: growth between the two signals unboundedness.
  report.d_half = discrepancy(sums, report.z, starts / 2, horizon / 2);
  report.z_width = report.d_observed / static_cast<double>(horizon);
  if (report.d_observed > options.unbounded_threshold) {
    report.d_bounded = Tristate::no;
  } else if (report.d_observed - report.d_half <= options.stable_tolerance) {
    report.d_bounded = Tristate::yes;
  }
  return report;
}

CompositionBounds compose_invariant_bounds(const InvariantReport& r1, const InvariantReport& r2) {
  CompositionBounds b;
  b.z = r1.z * r2.z;
  b.d_max = r2.z * r1.d_observed + r2.d_observed;
  if (r1.z > 0) {
    b.i_max = (2 * r1.d_observed + static_cast<double>(r2.in_radius)) / r1.z + static_cast<double>(r1.in_radius) + 1;
  } else {
    b.i_max = std::numeric_limits<double>::infinity();
  }
  return b;
}

std::optional<std::pair<std::size_t, std::size_t>> almost_equivalent(const DillTable& d1, const DillTable& d2,
                                                                     std::size_t prefix_len,
                                                                     std::size_t shift_bound) {
  if (!same_language(d1.domain(), d2.domain()) || !same_language(d1.target(), d2.target())) {
    fail(ErrorKind::argument, "almost_equivalent: maps have different domains or targets");
  }
  if (prefix_len == 0) fail(ErrorKind::argument, "prefix length must be positive");
  const std::size_t need = prefix_len + shift_bound;
  constexpr std::size_t kInputCap = std::size_t{1} << 22;
  std::size_t n = std::max(d1.window_length(), d2.window_length()) + need;
  Word o1;
  Word o2;
  for (;; n *= 2) {
    if (n > kInputCap) fail(ErrorKind::argument, "almost_equivalent: outputs too short for the requested overlap");
    const Word x = d1.domain()->prefix(n);
    o1 = apply_prefix(d1, x);
    o2 = apply_prefix(d2, x);
    if (o1.size() >= need && o2.size() >= need) break;
  }
  for (std::size_t sum = 0; sum <= 2 * shift_bound; ++sum) {
    for (std::size_t i = sum > shift_bound ? sum - shift_bound : 0; i <= std::min(sum, shift_bound); ++i) {
      const std::size_t j = sum - i;
      const std::size_t overlap = std::min(o1.size() - i, o2.size() - j);
      if (std::equal(o1.begin() + static_cast<std::ptrdiff_t>(i),
                     o1.begin() + static_cast<std::ptrdiff_t>(i + overlap),
                     o2.begin() + static_cast<std::ptrdiff_t>(j))) {
        return std::pair{i, j};
      }
    }
  }
  return std::nullopt;
}

DillTable almost_inverse(const Recognizer& r) {
  const LanguagePtr& lang = r.language();
  const std::size_t window = r.window_length();
  const CutData data = cut_data(*lang, r.build_length());
  for (std::size_t offset = 0; offset <= r.radius(); ++offset) {
    auto cuts = cut_table(data, window, offset);
    if (!cuts) continue;
    std::map<Word, Word> table;
    for (const Word& w : lang->words(window)) {
      auto it = cuts->find(w);
      if (it == cuts->end()) {
        fail(ErrorKind::coverage, "almost_inverse: window " + format_word(w, lang->alphabet()) +
                                      " never seen while building the recognizer");
      }
      table.emplace(w, it->second ? Word{*it->second} : Word{});
    }
    return DillTable(lang, lang, window - 1, std::move(table));
  }
  fail(ErrorKind::precondition, "almost_inverse: recognizer table is inconsistent with its language");
}

}  // namespace subdyn
