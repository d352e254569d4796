#include "subdyn/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "subdyn/error.hpp"

namespace subdyn {

FactorAutomaton::FactorAutomaton(const FactorLanguage& lang, std::size_t max_len)
    : k_(lang.alphabet().size()), max_len_(max_len) {
  const Word text = lang.prefix(lang.recurrence_gap(max_len) + max_len);
  states_.reserve(2 * text.size() + 1);
  next_.reserve((2 * text.size() + 1) * k_);
  auto add_state = [this](std::size_t len, int link) {
    states_.push_back({len, link});
    next_.resize(next_.size() + k_, -1);
    return static_cast<int>(states_.size() - 1);
  };
  int last = add_state(0, -1);
  for (Letter a : text) {
    const int cur = add_state(states_[static_cast<std::size_t>(last)].len + 1, -1);
    int p = last;
    while (p != -1 && step(p, a) == -1) {
      next_[static_cast<std::size_t>(p) * k_ + a] = cur;
      p = states_[static_cast<std::size_t>(p)].link;
    }
    if (p == -1) {
      states_[static_cast<std::size_t>(cur)].link = 0;
    } else {
      const int q = step(p, a);
      if (states_[static_cast<std::size_t>(p)].len + 1 == states_[static_cast<std::size_t>(q)].len) {
        states_[static_cast<std::size_t>(cur)].link = q;
      } else {
        const int clone = add_state(states_[static_cast<std::size_t>(p)].len + 1,
                                    states_[static_cast<std::size_t>(q)].link);
        std::copy_n(next_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(q) * k_), k_,
                    next_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(clone) * k_));
        while (p != -1 && step(p, a) == q) {
          next_[static_cast<std::size_t>(p) * k_ + a] = clone;
          p = states_[static_cast<std::size_t>(p)].link;
        }
        states_[static_cast<std::size_t>(q)].link = clone;
        states_[static_cast<std::size_t>(cur)].link = clone;
      }
    }
    last = cur;
  }
}

bool FactorAutomaton::extend(Cursor& c, Letter a, std::size_t need) const {
  if (need > max_len_) fail(ErrorKind::argument, "factor automaton queried beyond its length");
  if (a >= k_) return false;
  while (c.state != 0 && step(c.state, a) == -1) {
    c.state = states_[static_cast<std::size_t>(c.state)].link;
    c.matched = states_[static_cast<std::size_t>(c.state)].len;
  }
  if (step(c.state, a) != -1) {
    c.state = step(c.state, a);
    ++c.matched;
  } else {
    c.matched = 0;
  }
  return c.matched >= need;
}

bool FactorAutomaton::all_factors_admissible(std::span<const Letter> w, std::size_t len) const {
  const std::size_t need = std::min(len, w.size());
  Cursor c;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!extend(c, w[i], std::min(need, i + 1))) return false;
  }
  return true;
}

std::size_t default_verify_len(const FactorLanguage& rho, std::size_t radius) {
  return 4 * rho.recurrence_gap(radius + 1) + radius;
}

namespace {

struct SearchProblem {
  std::size_t letters = 0;       // target alphabet size
  std::size_t check_len = 0;     // image factors of this length must be admissible
  std::vector<int> window_at;    // window index at each position of the domain prefix
  std::size_t windows = 0;
  const FactorAutomaton* automaton = nullptr;
};

/// Walks the domain prefix left to right, branching on a window's letter where the window
/// first occurs, and keeps the image's matching state so every step is checked at once.
class Searcher {
 public:
  Searcher(const SearchProblem& problem, std::atomic<std::size_t>& nodes, std::size_t budget)
      : p_(problem), nodes_(nodes), budget_(budget), assign_(problem.windows, -1) {}

  void run(const std::vector<Letter>& first_choices) {
    const std::size_t n = p_.window_at.size();
    std::vector<FactorAutomaton::Cursor> cursor(n + 1);
    struct Decision {
      std::size_t pos;
      std::size_t choice;  // index into the letters tried at this decision
    };
    std::vector<Decision> decisions;
    auto letter_for = [&](std::size_t depth, std::size_t choice) -> std::optional<Letter> {
      if (depth == 0) {
        if (choice < first_choices.size()) return first_choices[choice];
        return std::nullopt;
      }
      if (choice < p_.letters) return static_cast<Letter>(choice);
      return std::nullopt;
    };

    std::size_t pos = 0;
    for (;;) {
      bool ok = true;
      if (pos == n) {
        std::vector<Letter> rule(assign_.size());
        for (std::size_t w = 0; w < assign_.size(); ++w) rule[w] = static_cast<Letter>(assign_[w]);
        results.push_back(std::move(rule));
        ok = false;
      } else {
        const auto w = static_cast<std::size_t>(p_.window_at[pos]);
        if (assign_[w] < 0) {
          if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
            fail(ErrorKind::budget, "enumeration exceeded its node budget");
          }
          auto b = letter_for(decisions.size(), 0);
          if (!b) return;
          decisions.push_back({pos, 0});
          assign_[w] = *b;
        }
        cursor[pos + 1] = cursor[pos];
        ok = p_.automaton->extend(cursor[pos + 1], static_cast<Letter>(assign_[w]), std::min(p_.check_len, pos + 1));
        if (ok) {
          ++pos;
          continue;
        }
      }
      // Backtrack to the latest decision with an untried letter.
      for (;;) {
        if (decisions.empty()) return;
        Decision& d = decisions.back();
        const auto w = static_cast<std::size_t>(p_.window_at[d.pos]);
        auto b = letter_for(decisions.size() - 1, ++d.choice);
        if (b) {
          if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
            fail(ErrorKind::budget, "enumeration exceeded its node budget");
          }
          assign_[w] = *b;
          pos = d.pos;
          break;
        }
        assign_[w] = -1;
        decisions.pop_back();
      }
    }
  }

  std::vector<std::vector<Letter>> results;

 private:
  const SearchProblem& p_;
  std::atomic<std::size_t>& nodes_;
  std::size_t budget_;
  std::vector<int> assign_;
};

}  // namespace

std::vector<BlockRule> search_block_maps(const LanguagePtr& tau, const LanguagePtr& rho, std::size_t radius,
                                         const EnumerationOptions& options, std::size_t* nodes_out) {
  if (!tau || !rho) fail(ErrorKind::argument, "search_block_maps: missing language");
  const std::size_t window = radius + 1;
  const std::size_t verify = options.verify_len ? options.verify_len : default_verify_len(*rho, radius);
  if (verify < window) fail(ErrorKind::argument, "verify_len must be at least radius + 1");

  const std::vector<Word>& windows = tau->words(window);
  std::unordered_map<Word, int, WordHash> index;
  for (std::size_t i = 0; i < windows.size(); ++i) index.emplace(windows[i], static_cast<int>(i));

  // A prefix containing every word of B_verify(X_τ): images of its factors are exactly the
  // images of those words.
  const Word x = tau->prefix(tau->recurrence_gap(verify) + verify);
  SearchProblem problem;
  problem.letters = rho->alphabet().size();
  problem.check_len = verify - radius;
  problem.windows = windows.size();
  for (std::size_t pos = 0; pos + window <= x.size(); ++pos) problem.window_at.push_back(index.at(x.sub(pos, window)));
  const FactorAutomaton automaton(*rho, problem.check_len);
  problem.automaton = &automaton;

  std::atomic<std::size_t> nodes{0};
  std::vector<std::vector<Letter>> found;
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(problem.letters)));
  if (threads == 1) {
    std::vector<Letter> all(problem.letters);
    for (std::size_t b = 0; b < all.size(); ++b) all[b] = static_cast<Letter>(b);
    Searcher s(problem, nodes, options.node_budget);
    s.run(all);
    found = std::move(s.results);
  } else {
    std::vector<std::unique_ptr<Searcher>> searchers;
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) searchers.push_back(std::make_unique<Searcher>(problem, nodes, options.node_budget));
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          std::vector<Letter> mine;
          for (std::size_t b = t; b < problem.letters; b += threads) mine.push_back(static_cast<Letter>(b));
          searchers[t]->run(mine);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (auto& s : searchers) {
      for (auto& r : s->results) found.push_back(std::move(r));
    }
  }
  if (nodes_out) *nodes_out = nodes.load();

  std::vector<BlockRule> rules;
  rules.reserve(found.size());
  for (const auto& assignment : found) {
    BlockRule rule{tau, rho, radius, {}};
    for (std::size_t w = 0; w < windows.size(); ++w) rule.table.emplace(windows[w], assignment[w]);
    rules.push_back(std::move(rule));
  }
  std::sort(rules.begin(), rules.end(), [](const BlockRule& a, const BlockRule& b) { return a.table < b.table; });
  return rules;
}

namespace {

/// f = σᵏ ∘ g with k maximal: g reads what f reads after dropping the k leading letters it ignores.
std::pair<BlockRule, std::size_t> unshift(const BlockRule& f) {
  std::size_t k = 0;
  std::map<Word, Letter> core = f.table;
  while (k < f.radius) {
    std::map<Word, Letter> next;
    bool ignores = true;
    for (const auto& [w, b] : f.table) {
      auto [it, fresh] = next.try_emplace(w.sub(k + 1, f.radius - k), b);
      if (!fresh && it->second != b) {
        ignores = false;
        break;
      }
    }
    if (!ignores) break;
    core = std::move(next);
    ++k;
  }
  return {BlockRule{f.domain, f.target, f.radius - k, std::move(core)}, k};
}

}  // namespace

MorphismClassSet dedupe_up_to_shift(const std::vector<BlockRule>& rules) {
  // Classes of f = σᵏ ∘ g are the fibres of f ↦ unshifted core of its canonical table.
  std::map<std::pair<std::size_t, std::map<Word, Letter>>, std::vector<std::size_t>> classes;
  for (const BlockRule& r : rules) {
    const BlockRule f = *as_block_rule(canonicalize(from_block_map(r)));
    auto [core, k] = unshift(f);
    auto& shifts = classes[{core.radius, std::move(core.table)}];
    if (std::find(shifts.begin(), shifts.end(), k) == shifts.end()) shifts.push_back(k);
  }
  MorphismClassSet result;
  for (auto& [key, shifts] : classes) {
    std::sort(shifts.begin(), shifts.end());
    const BlockRule& any = rules.front();
    result.classes.push_back({BlockRule{any.domain, any.target, key.first, key.second}, shifts});
  }
  return result;
}

MorphismClassSet enumerate_block_maps(const LanguagePtr& tau, const LanguagePtr& rho, std::size_t radius,
                                      const EnumerationOptions& options) {
  std::size_t nodes = 0;
  const auto rules = search_block_maps(tau, rho, radius, options, &nodes);
  MorphismClassSet set = dedupe_up_to_shift(rules);
  set.radius = radius;
  set.verify_len = options.verify_len ? options.verify_len : default_verify_len(*rho, radius);
  set.nodes = nodes;
  return set;
}

std::size_t period_class(const DillTable& f, const Recognizer& rec) {
  const LanguagePtr& lang = rec.language();
  const Substitution& tau = lang->substitution();
  if (!is_uniform(tau)) fail(ErrorKind::argument, "period_class needs a uniform substitution");
  if (!same_language(f.target(), lang) || !same_language(f.domain(), lang)) {
    fail(ErrorKind::argument, "period_class needs an endomorphism of the recognizer's subshift");
  }
  const std::size_t m = tau.max_image_length();
  const std::size_t span = std::max<std::size_t>(4 * rec.build_length(), 256);
  const Word z = tau.apply(lang->prefix(span / m + 1));
  const Word w = apply_prefix(f, z);
  const std::size_t len = rec.window_length();
  std::optional<std::size_t> residue;
  for (std::size_t j = 0; j + len <= w.size(); ++j) {
    if (!rec.lookup(w.view().subspan(j, len))) continue;
    const std::size_t r = (j + rec.radius()) % m;
    if (residue && *residue != r) fail(ErrorKind::precondition, "inconsistent cut residues: image not admissible");
    residue = r;
  }
  if (!residue) fail(ErrorKind::coverage, "no cuts recognized in the image");
  return (m - *residue) % m;
}

Substitution build_example_family(std::size_t m, std::size_t n, FamilyVariant variant) {
  if (m < 1) fail(ErrorKind::argument, "example family needs m >= 1");
  if (n < 4) fail(ErrorKind::argument, "example family needs n >= 4");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < m; ++i) names.push_back("b" + std::to_string(i));
  const bool split = variant == FamilyVariant::uniform;
  if (split) names.push_back("c");
  auto a = [](std::size_t i) { return static_cast<Letter>(i); };
  auto b = [m](std::size_t i) { return static_cast<Letter>(m + i % m); };
  const Letter c = static_cast<Letter>(2 * m);
  auto repeat = [](Letter x, std::size_t k) {
    Word w;
    for (std::size_t j = 0; j < k; ++j) w.push_back(x);
    return w;
  };

  std::vector<Word> images;
  for (std::size_t i = 0; i < m; ++i) images.push_back(Word{b(i + 1)} + repeat(a(i), n - 1));
  for (std::size_t i = 0; i < m; ++i) {
    if (!split) {
      images.push_back(Word{b(i)} + repeat(a(i), n));
    } else if (i == 0) {
      images.push_back(Word{b(0)} + repeat(c, n - 1));
    } else {
      images.push_back(Word{b(i)} + repeat(a(i), n - 1));
    }
  }
  if (split) images.push_back(images[0]);
  return Substitution(Alphabet(std::move(names)), std::move(images));
}

}  // namespace subdyn
