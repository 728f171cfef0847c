#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relword/decider.hpp"
#include "relword/engine.hpp"
#include "relword/relational_word.hpp"
#include "relword/universality.hpp"

namespace relword::io {

std::string read_file(const std::filesystem::path& p);

// Matrix rows ("1 0 2" or "102"), a `word: <letters>` line, or eps/ε/_ for the empty word.
RelationalWord parse_word(const std::string& text);
RelationalWord load_word(const std::filesystem::path& p);
// "word:<letters>" or a path.
RelationalWord word_argument(const std::string& arg);
// Letters, @file (relative to base), or eps/ε/_.
RelationalWord parse_literal(const std::string& lit, const std::filesystem::path& base = {});

// Raw digit rows per blank-line separated block, unvalidated; "eps" is an empty block.
std::vector<std::vector<std::string>> parse_matrix_blocks(const std::string& text);

struct Window {
    std::size_t start = 0;  // 1-based
    std::size_t length = 0;
};
std::optional<Window> parse_window(const std::string& text);  // "k:m"

std::string render_matrix(const RelationalWord& w, std::optional<Window> window = std::nullopt);
std::string render_dot(const RelationalWord& w);

System parse_scheme(const std::string& text, const std::filesystem::path& base = {});
System load_scheme(const std::filesystem::path& p);
std::string render_scheme(const System& s);

Script parse_script(const std::string& text);
std::string render_script(const Script& s);

StringInsDelSystem parse_string_system(const std::string& text);
StringInsDelSystem load_string_system(const std::filesystem::path& p);
std::string render_string_system(const StringInsDelSystem& s);

nlohmann::json to_json(const RelationalWord& w);
nlohmann::json to_json(const Trace& t);
Trace trace_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const BoundReport& r);

}  // namespace relword::io
