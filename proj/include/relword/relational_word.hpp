#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relword {

// Digits: NEQ=0, EQ=1, UNDEF=2.
enum class Relation : std::uint8_t { Neq = 0, Eq = 1, Undef = 2 };

char to_digit(Relation r) noexcept;
std::optional<Relation> relation_from_digit(int d) noexcept;

enum class Errc {
    NonSquare,
    BadDigit,
    DiagonalNotEq,
    Asymmetric,
    NotTransitive,
    CongruenceViolation,
    LengthMismatch,
    BadEmbedding,
    OutOfRange,
    EmptyAlphabet,
    CapExceeded,
    SiteOutOfRange,
    SiteNotApplicable,
    InvalidRule,
    DuplicateRule,
    StepNotApplicable,
    UnknownRule,
    NotFullyDefined,
    NotSimple,
    UnknownCase,
    BoundViolated,
    KTooSmall,
    Mismatch,
    Parse,
};

std::string_view errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg, std::size_t row = 0, std::size_t col = 0);

    Errc code() const noexcept { return code_; }
    // 1-based cell pair (or step index in `row` for StepNotApplicable); 0 when not applicable.
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    Errc code_;
    std::size_t row_;
    std::size_t col_;
};

// Class-level view: positions map to EQ classes numbered by first occurrence,
// neq holds sorted pairs (c, d) with c < d. Anything else is UNDEF.
struct EqClassView {
    std::vector<std::uint32_t> class_of;
    std::uint32_t classes = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> neq;

    friend bool operator==(const EqClassView&, const EqClassView&) = default;
};

class RelationalWord {
public:
    RelationalWord() = default;

    // Class ids may be arbitrary; they are renumbered by first occurrence.
    // Throws CongruenceViolation if a NEQ pair names the same class twice.
    static RelationalWord from_classes(const std::vector<std::uint32_t>& class_of,
                                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& neq);

    std::size_t size() const noexcept { return class_of_.size(); }
    bool empty() const noexcept { return class_of_.empty(); }

    // 1-based, bounds checked.
    Relation at(std::size_t i, std::size_t j) const;
    // 0-based, unchecked.
    Relation rel(std::size_t a, std::size_t b) const noexcept {
        std::uint32_t ca = class_of_[a], cb = class_of_[b];
        if (ca == cb) return Relation::Eq;
        return neq_[ca * classes_ + cb] ? Relation::Neq : Relation::Undef;
    }

    std::uint32_t class_count() const noexcept { return classes_; }
    std::uint32_t class_of(std::size_t a) const noexcept { return class_of_[a]; }
    const std::vector<std::uint32_t>& classes() const noexcept { return class_of_; }
    bool classes_neq(std::uint32_t c, std::uint32_t d) const noexcept { return neq_[c * classes_ + d] != 0; }
    std::vector<std::uint32_t> class_sizes() const;

    bool fully_defined() const noexcept;
    EqClassView view() const;
    std::vector<std::vector<Relation>> matrix() const;

    friend bool operator==(const RelationalWord&, const RelationalWord&) = default;

private:
    std::vector<std::uint32_t> class_of_;
    std::uint32_t classes_ = 0;
    std::vector<std::uint8_t> neq_;  // classes_ x classes_
};

RelationalWord from_view(const EqClassView& v);

RelationalWord from_matrix(const std::vector<std::vector<int>>& rows);
RelationalWord from_string(std::string_view s);
// Restriction to the given 1-based, strictly increasing positions.
RelationalWord induced(const RelationalWord& w, const std::vector<std::size_t>& positions);

bool equals(const RelationalWord& w, const RelationalWord& v) noexcept;
bool contradicts(const RelationalWord& w, const RelationalWord& v);

bool is_scattered_subword(const RelationalWord& w, const RelationalWord& v,
                          const std::vector<std::size_t>& embedding);
std::optional<std::vector<std::size_t>> exists_scattered_subword(const RelationalWord& w,
                                                                 const RelationalWord& v);
bool is_subword(const RelationalWord& w, const RelationalWord& v, std::size_t start);

std::set<std::string> enumerate_language(const RelationalWord& w, std::string_view alphabet);

struct CountOptions {
    // Above this many classes no exact count is attempted.
    std::size_t class_cap = 20;
    bool binomial_formula = false;
};
// Exact count via independent-set partitions of the class NEQ graph; the
// binomial C(size, classes) is returned instead when binomial_formula is set.
std::uint64_t count_language(const RelationalWord& w, std::size_t alphabet_size,
                             const CountOptions& opts = {});

std::size_t max_e(const RelationalWord& w);
std::size_t max_fd(const RelationalWord& w);
std::size_t max_n(const RelationalWord& w);

std::string canonical_key(const RelationalWord& w);

// Digit rows, one string per row ("" vector for the empty word).
std::vector<std::string> digit_rows(const RelationalWord& w);

}  // namespace relword
