#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relword/engine.hpp"
#include "relword/relational_word.hpp"

namespace relword {

enum class Family { I2D3, I3D2 };
std::string_view family_name(Family f) noexcept;

// Rules carry ids "I" and "D".
struct SimpleScheme {
    Rule ins;
    Rule del;
    Family family = Family::I3D2;

    // NotSimple unless the lengths are (2,3) or (3,2); InvalidRule if not fully defined.
    static SimpleScheme make(const RelationalWord& ins_body, const RelationalWord& del_body);
    static SimpleScheme make(std::string_view ins_letters, std::string_view del_letters);
    Scheme as_scheme() const;
    std::string name() const;  // "(aaa,ab)"
};

// All fully defined words of length n (restricted-growth order: aa..a first).
std::vector<RelationalWord> enumerate_fully_defined(std::size_t n);

struct CatalogEntry {
    std::string name;     // "M1^2", ...
    std::string letters;  // "ab", ...
    RelationalWord word;
};
std::vector<CatalogEntry> rule_catalog();
std::vector<SimpleScheme> all_simple_schemes();  // I3D2 first

enum class SchemeCase { AllEqual, NoEqualInD, AllEqualD, MixedD };
std::string_view case_name(SchemeCase c) noexcept;

struct SchemeClass {
    SchemeCase kind = SchemeCase::AllEqual;
    std::optional<std::size_t> bound_k;     // maxFD bound on every derivable word
    std::optional<std::size_t> max_e_bound; // maxE bound on every derivable word
    bool has_inequality() const noexcept { return kind != SchemeCase::AllEqual; }
};
SchemeClass classify(const SimpleScheme& s);

struct Budget {
    std::size_t max_len = 12;
    std::size_t max_depth = 10;
    std::size_t max_states = 2'000'000;
};
// Depth default, overridable through RELWORD_BUDGET_DEPTH.
Budget default_budget();

enum class Membership { Yes, No, Unknown };
std::string_view membership_name(Membership m) noexcept;

struct Verdict {
    Membership member = Membership::Unknown;
    std::optional<Trace> witness;
    std::string reason;
    std::size_t states = 0;
    std::size_t depth_reached = 0;
    bool budget_exhausted = false;
};

Verdict decide_membership(const SimpleScheme& s, const RelationalWord& v, const Budget& budget = {});

struct FdlEntry {
    RelationalWord word;
    Verdict verdict;
};
struct FdlResult {
    bool symbolic_all_equal = false;  // AllEqual schemes: FDL is every all-equal word
    bool complete = false;
    std::vector<FdlEntry> entries;    // every candidate with its verdict
    std::vector<RelationalWord> members() const;
};
FdlResult compute_fdl(const SimpleScheme& s, const Budget& budget = {});

// Deletes the single position of a one-position word (I3D2 only; UnknownCase otherwise).
Script epsilon_script(const SimpleScheme& s);
// Turns ε into a single isolated position (I2D3 only).
Script append_isolated_script(const SimpleScheme& s);
// Removes position p (1-based) leaving the relations among the other positions unchanged.
Script delete_position_script(const SimpleScheme& s, std::size_t p);
Trace delete_word(const SimpleScheme& s, const RelationalWord& w);

// Trace from ε to the all-equal word of length n (AllEqual schemes only).
Trace all_equal_witness(const SimpleScheme& s, std::size_t n);

struct DepthStats {
    std::size_t depth = 0;
    std::size_t states = 0;  // new distinct words at this depth
    std::size_t max_fd = 0;
    std::size_t max_e = 0;
};
struct BoundReport {
    SchemeClass cls;
    std::vector<DepthStats> per_depth;
    std::size_t max_fd = 0;
    std::size_t max_e = 0;
    std::size_t steps_checked = 0;
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};
// BFS from ε; checks the maxFD/maxE bounds and the per-step recurrences.
BoundReport certify_bounds(const SimpleScheme& s, std::size_t depth, std::size_t max_len = 64);

}  // namespace relword
