#include "subdyn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "subdyn/error.hpp"

namespace subdyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

/// Non-empty lines with comments removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) lines.push_back({number, line});
  }
  return lines;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
  fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

std::pair<std::string_view, std::string_view> split_arrow(const Line& line) {
  const auto arrow = line.text.find("->");
  if (arrow == std::string_view::npos) fail_at(line.number, "expected 'lhs -> rhs'");
  return {trim(line.text.substr(0, arrow)), trim(line.text.substr(arrow + 2))};
}

template <typename F>
auto at_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::parse) throw;
    fail_at(line, e.what());
  }
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::argument, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Substitution parse_substitution(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) fail(ErrorKind::parse, "no rules");
  std::vector<std::string> heads;
  for (const Line& line : lines) {
    auto [lhs, rhs] = split_arrow(line);
    if (lhs.empty() || lhs.find_first_of(" \t") != std::string_view::npos) {
      fail_at(line.number, "left-hand side must be a single letter");
    }
    for (const auto& h : heads) {
      if (h == lhs) fail_at(line.number, "second rule for letter '" + std::string(lhs) + "'");
    }
    heads.emplace_back(lhs);
  }
  const Alphabet alphabet = at_line(lines.front().number, [&] { return Alphabet(heads); });
  std::vector<Word> images;
  for (const Line& line : lines) {
    auto [lhs, rhs] = split_arrow(line);
    Word w = at_line(line.number, [&] { return parse_word(rhs, alphabet); });
    if (w.empty()) fail_at(line.number, "erasing rule; images must be non-empty");
    images.push_back(std::move(w));
  }
  return Substitution(alphabet, std::move(images));
}

std::string format_substitution(const Substitution& s) {
  std::string out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    out += s.alphabet().name(Letter(a)) + " -> " + format_word(s.image(Letter(a)), s.alphabet()) + "\n";
  }
  return out;
}

DillTable parse_dill_table(std::string_view text, const LanguagePtr& domain, const LanguagePtr& target) {
  const auto lines = content_lines(text);
  if (lines.empty()) fail(ErrorKind::parse, "missing header");
  const Line& header = lines.front();
  const auto colon = header.text.find(':');
  if (colon == std::string_view::npos) fail_at(header.number, "expected 'in_radius: I' or 'radius: r'");
  const std::string_view key = trim(header.text.substr(0, colon));
  const bool block = key == "radius";
  if (!block && key != "in_radius") fail_at(header.number, "unknown header '" + std::string(key) + "'");
  std::size_t radius = 0;
  try {
    std::size_t used = 0;
    const std::string value(trim(header.text.substr(colon + 1)));
    radius = std::stoul(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::logic_error&) {
    fail_at(header.number, "radius must be a non-negative integer");
  }

  std::map<Word, Word> table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    auto [lhs, rhs] = split_arrow(line);
    Word w = at_line(line.number, [&] { return parse_word(lhs, domain->alphabet()); });
    Word out = at_line(line.number, [&] { return parse_word(rhs, target->alphabet()); });
    if (w.size() != radius + 1) fail_at(line.number, "window length must be " + std::to_string(radius + 1));
    if (block && out.size() != 1) fail_at(line.number, "block rule outputs must be single letters");
    if (!table.emplace(std::move(w), std::move(out)).second) fail_at(line.number, "duplicate window");
  }
  DillTable d(domain, target, radius, std::move(table));
  if (!is_nontrivial(d)) fail(ErrorKind::precondition, "table has a cycle of empty outputs (trivial cocycle)");
  return d;
}

std::string format_dill_table(const DillTable& d) {
  std::string out = "in_radius: " + std::to_string(d.in_radius()) + "\n";
  for (const auto& [w, o] : d.table()) {
    out += format_word(w, d.domain()->alphabet()) + " -> " + format_word(o, d.target()->alphabet()) + "\n";
  }
  return out;
}

std::string format_block_rule(const BlockRule& b) {
  std::string out = "radius: " + std::to_string(b.radius) + "\n";
  for (const auto& [w, a] : b.table) {
    out += format_word(w, b.domain->alphabet()) + " -> " + b.target->alphabet().name(a) + "\n";
  }
  return out;
}

std::string format_recognizer(const Recognizer& r) {
  const Alphabet& alphabet = r.language()->alphabet();
  std::string out = "radius: " + std::to_string(r.radius()) + "\n";
  for (const auto& [w, v] : r.table()) out += format_word(w, alphabet) + " -> " + (v ? alphabet.name(*v) : "#") + "\n";
  return out;
}

std::string format_hash(std::uint32_t h) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", h);
  return buf;
}

std::string format_trajectory(const Trajectory& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const TrajectoryStep& s = t.steps[i];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu  I=%zu O=%zu Z=%.6f D=%.3f hash=%s\n", i, s.table.in_radius(),
                  s.table.out_radius(), s.report.z, s.report.d_observed, format_hash(s.hash).c_str());
    out << buf;
  }
  if (t.cycle) {
    out << "cycle: entry=" << t.cycle->entry << " period=" << t.cycle->period << "\n";
  } else {
    out << "timeout\n";
  }
  return out.str();
}

}  // namespace subdyn
