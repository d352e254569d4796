#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "subdyn/conjugation.hpp"
#include "subdyn/dill.hpp"
#include "subdyn/recognizer.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

std::string read_text(const std::filesystem::path& path);

/// Lines `X -> w`; `#` starts a comment. Letters are ordered by their rule lines.
Substitution parse_substitution(std::string_view text);
std::string format_substitution(const Substitution& s);

/// Header `in_radius: I` (or `radius: r` for block rules, whose outputs must be single
/// letters), then `window -> output` lines with ε written `-`.
DillTable parse_dill_table(std::string_view text, const LanguagePtr& domain, const LanguagePtr& target);
std::string format_dill_table(const DillTable& d);
std::string format_block_rule(const BlockRule& b);

/// Header `radius: L`, then `window -> letter` or `window -> #` in lexicographic order.
std::string format_recognizer(const Recognizer& r);

/// One line per step, then the cycle or `timeout`.
std::string format_trajectory(const Trajectory& t);
std::string format_hash(std::uint32_t h);

}  // namespace subdyn
