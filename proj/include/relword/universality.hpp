#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relword/engine.hpp"
#include "relword/relational_word.hpp"

namespace relword {

// Letters are single characters; the i-th alphabet letter is the i-th source symbol.
struct StringInsDelSystem {
    std::string alphabet;
    std::string terminals;
    std::vector<std::string> ins;
    std::vector<std::string> del;
    std::vector<std::string> axioms;
};

std::set<std::string> string_step(const std::string& w, const StringInsDelSystem& sys);
// Strings reachable from the axioms in at most `depth` steps.
std::set<std::string> string_reachable(const StringInsDelSystem& sys, std::size_t depth);

class CodeMorphism {
public:
    // KTooSmall unless K > |alphabet| + 2; EmptyAlphabet for an empty alphabet.
    CodeMorphism(std::string alphabet, std::size_t K);

    const std::string& alphabet() const noexcept { return alphabet_; }
    std::size_t K() const noexcept { return K_; }
    std::size_t index_of(char letter) const;  // 1-based
    std::string codeword(char letter) const;  // over {a,b}
    std::string encode(std::string_view s) const;
    RelationalWord word(std::string_view s) const { return from_string(encode(s)); }

private:
    std::string alphabet_;
    std::size_t K_;
};

struct Encoding {
    System system;
    CodeMorphism morphism;
};
// Rules are named ins1.., del1.. in input order.
Encoding encode(const StringInsDelSystem& sys, std::size_t K);

// Every source string whose codeword blocks fit w (at most `limit`). Blocks must
// be exact codewords; relations between different blocks may be undefined but
// any defined one has to agree with the encoding.
std::vector<std::string> parses(const RelationalWord& w, const CodeMorphism& m, std::size_t limit = 2);
bool is_canonical(const RelationalWord& w, const CodeMorphism& m);
std::optional<std::string> decode(const RelationalWord& w, const CodeMorphism& m, std::string_view terminals);
std::optional<std::string> decode(const RelationalWord& w, const CodeMorphism& m);

struct DepthComparison {
    std::size_t depth = 0;
    std::set<std::string> strings;   // terminal strings reachable in <= depth steps
    std::set<std::string> decoded;   // decodings of canonical terminal relational words
    std::size_t relational_states = 0;
    std::size_t canonical_states = 0;
    std::vector<std::string> stray;  // canonical words decoding outside the string side
    bool equal() const { return strings == decoded && stray.empty(); }
};
struct LanguageComparison {
    std::vector<DepthComparison> per_depth;
    bool equal() const;
};
LanguageComparison compare_languages(const StringInsDelSystem& sys, std::size_t K, std::size_t depth);

// Maximal runs split at undefined adjacent pairs; a run is bad when it is not
// fully defined or not a concatenation of codewords.
std::size_t incorrect_patterns(const RelationalWord& w, const CodeMorphism& m);

struct ProbeBudget {
    std::size_t depth = 4;
    std::size_t max_words = 20'000'000;
};
struct ProbeReport {
    bool already_canonical = false;
    bool repair_found = false;
    bool complete = false;            // search covered every derivation up to the depth
    std::optional<Trace> repair;
    std::size_t insertion_words = 0;  // distinct words after the insertion phase
    std::size_t deletion_words = 0;
    std::size_t pruned = 0;
    std::size_t initial_patterns = 0;
    std::size_t min_patterns = 0;     // over every word visited in the deletion phase
    std::size_t pattern_decreases = 0;
    std::size_t returned = 0;         // deletions landing back on an ancestor (not explored further)
};
// A repair is a canonical descendant different from every ancestor of `broken`.
ProbeReport repair_probe(const Encoding& enc, const RelationalWord& broken, const std::vector<RelationalWord>& ancestors,
                         const ProbeBudget& budget = {});

}  // namespace relword
