#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relword/relational_word.hpp"

namespace relword {

enum class StepKind { Insert, Delete };

std::string_view kind_name(StepKind k) noexcept;  // "ins" / "del"

struct Rule {
    std::string id;
    StepKind kind = StepKind::Insert;
    RelationalWord body;
};

// Throws InvalidRule unless body is nonempty and fully defined.
Rule make_rule(std::string id, StepKind kind, RelationalWord body);

class Scheme {
public:
    Scheme() = default;
    Scheme(std::vector<Rule> ins, std::vector<Rule> del);

    void add(Rule r);  // DuplicateRule on id clash
    const std::vector<Rule>& ins() const noexcept { return ins_; }
    const std::vector<Rule>& del() const noexcept { return del_; }
    const Rule* find(std::string_view id) const noexcept;
    const Rule* find(std::string_view id, StepKind kind) const noexcept;

private:
    std::vector<Rule> ins_;
    std::vector<Rule> del_;
};

struct System {
    Scheme scheme;
    std::vector<RelationalWord> axioms;
};

struct DerivationStep {
    StepKind kind = StepKind::Insert;
    std::string rule_id;
    std::size_t site = 0;
    RelationalWord result;
};

struct Trace {
    RelationalWord start;
    std::vector<DerivationStep> steps;

    const RelationalWord& final_word() const noexcept { return steps.empty() ? start : steps.back().result; }
    bool ins_first() const noexcept;
};

struct ScriptStep {
    StepKind kind = StepKind::Insert;
    std::size_t site = 0;
    std::string rule_id;

    friend bool operator==(const ScriptStep&, const ScriptStep&) = default;
};
using Script = std::vector<ScriptStep>;

// Gap k in 0..|w|; all cross relations are left undefined.
RelationalWord insert_at(const RelationalWord& w, const RelationalWord& body, std::size_t k);
RelationalWord insert_at(const RelationalWord& w, const Rule& rule, std::size_t k);

// Window starts at 1-based position k. nullopt when the window contradicts the
// rule or the closure would make a class unequal to itself.
std::optional<RelationalWord> try_delete_at(const RelationalWord& w, const RelationalWord& body, std::size_t k);
RelationalWord delete_at(const RelationalWord& w, const RelationalWord& body, std::size_t k);
RelationalWord delete_at(const RelationalWord& w, const Rule& rule, std::size_t k);

std::vector<std::size_t> deletion_sites(const RelationalWord& w, const RelationalWord& body);
std::vector<std::size_t> deletion_sites(const RelationalWord& w, const Rule& rule);

// Sorted by canonical key of the result, one step per distinct result unless raw.
std::vector<DerivationStep> step_all(const RelationalWord& w, const Scheme& scheme, bool raw = false);

Trace replay(const Script& script, const RelationalWord& start, const Scheme& scheme);
// Appends to an existing trace, continuing from its final word.
void extend(Trace& trace, const Script& script, const Scheme& scheme);
Script script_of(const Trace& trace);
Script shifted(const Script& script, std::ptrdiff_t offset);

Trace normalize_ins_first(const Trace& trace, const Scheme& scheme);

}  // namespace relword
