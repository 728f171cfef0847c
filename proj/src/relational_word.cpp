#include "relword/relational_word.hpp"

#include <algorithm>
#include <functional>

#include "clique.hpp"

namespace relword {

char to_digit(Relation r) noexcept {
    switch (r) {
        case Relation::Neq: return '0';
        case Relation::Eq: return '1';
        default: return '2';
    }
}

std::optional<Relation> relation_from_digit(int d) noexcept {
    switch (d) {
        case 0: return Relation::Neq;
        case 1: return Relation::Eq;
        case 2: return Relation::Undef;
        default: return std::nullopt;
    }
}

std::string_view errc_name(Errc e) noexcept {
    switch (e) {
        case Errc::NonSquare: return "NonSquare";
        case Errc::BadDigit: return "BadDigit";
        case Errc::DiagonalNotEq: return "DiagonalNotEq";
        case Errc::Asymmetric: return "Asymmetric";
        case Errc::NotTransitive: return "NotTransitive";
        case Errc::CongruenceViolation: return "CongruenceViolation";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::BadEmbedding: return "BadEmbedding";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::EmptyAlphabet: return "EmptyAlphabet";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::SiteOutOfRange: return "SiteOutOfRange";
        case Errc::SiteNotApplicable: return "SiteNotApplicable";
        case Errc::InvalidRule: return "InvalidRule";
        case Errc::DuplicateRule: return "DuplicateRule";
        case Errc::StepNotApplicable: return "StepNotApplicable";
        case Errc::UnknownRule: return "UnknownRule";
        case Errc::NotFullyDefined: return "NotFullyDefined";
        case Errc::NotSimple: return "NotSimple";
        case Errc::UnknownCase: return "UnknownCase";
        case Errc::BoundViolated: return "BoundViolated";
        case Errc::KTooSmall: return "KTooSmall";
        case Errc::Mismatch: return "Mismatch";
        case Errc::Parse: return "Parse";
    }
    return "?";
}

namespace {

std::string format_error(Errc code, const std::string& msg, std::size_t row, std::size_t col) {
    std::string s(errc_name(code));
    if (row != 0 || col != 0) {
        s += " at (" + std::to_string(row) + "," + std::to_string(col) + ")";
    }
    if (!msg.empty()) s += ": " + msg;
    return s;
}

}  // namespace

Error::Error(Errc code, const std::string& msg, std::size_t row, std::size_t col)
    : std::runtime_error(format_error(code, msg, row, col)), code_(code), row_(row), col_(col) {}

RelationalWord RelationalWord::from_classes(
    const std::vector<std::uint32_t>& class_of,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& neq) {
    constexpr std::uint32_t none = UINT32_MAX;
    std::uint32_t top = 0;
    for (auto c : class_of) top = std::max(top, c + 1);
    std::vector<std::uint32_t> remap(top, none);
    RelationalWord w;
    w.class_of_.reserve(class_of.size());
    for (auto c : class_of) {
        if (remap[c] == none) remap[c] = w.classes_++;
        w.class_of_.push_back(remap[c]);
    }
    w.neq_.assign(std::size_t(w.classes_) * w.classes_, 0);
    for (auto [c, d] : neq) {
        if (c >= top || d >= top || remap[c] == none || remap[d] == none)
            throw Error(Errc::OutOfRange, "inequality names an unused class");
        std::uint32_t a = remap[c], b = remap[d];
        if (a == b) throw Error(Errc::CongruenceViolation, "class unequal to itself");
        w.neq_[a * w.classes_ + b] = 1;
        w.neq_[b * w.classes_ + a] = 1;
    }
    return w;
}

Relation RelationalWord::at(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > size() || j > size())
        throw Error(Errc::OutOfRange, "position outside word of length " + std::to_string(size()), i, j);
    return rel(i - 1, j - 1);
}

std::vector<std::uint32_t> RelationalWord::class_sizes() const {
    std::vector<std::uint32_t> out(classes_, 0);
    for (auto c : class_of_) ++out[c];
    return out;
}

bool RelationalWord::fully_defined() const noexcept {
    for (std::uint32_t c = 0; c < classes_; ++c)
        for (std::uint32_t d = c + 1; d < classes_; ++d)
            if (!neq_[c * classes_ + d]) return false;
    return true;
}

EqClassView RelationalWord::view() const {
    EqClassView v;
    v.class_of = class_of_;
    v.classes = classes_;
    for (std::uint32_t c = 0; c < classes_; ++c)
        for (std::uint32_t d = c + 1; d < classes_; ++d)
            if (neq_[c * classes_ + d]) v.neq.emplace_back(c, d);
    return v;
}

std::vector<std::vector<Relation>> RelationalWord::matrix() const {
    std::size_t n = size();
    std::vector<std::vector<Relation>> m(n, std::vector<Relation>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = rel(i, j);
    return m;
}

RelationalWord from_view(const EqClassView& v) { return RelationalWord::from_classes(v.class_of, v.neq); }

RelationalWord from_matrix(const std::vector<std::vector<int>>& rows) {
    std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i].size() != n)
            throw Error(Errc::NonSquare,
                        "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(n),
                        i + 1, std::min(rows[i].size(), n) + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!relation_from_digit(rows[i][j]))
                throw Error(Errc::BadDigit, "digit " + std::to_string(rows[i][j]), i + 1, j + 1);
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i][i] != 1) throw Error(Errc::DiagonalNotEq, "", i + 1, i + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rows[i][j] != rows[j][i]) throw Error(Errc::Asymmetric, "", i + 1, j + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (rows[i][k] == 1) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (rows[i][j] == 1 && rows[j][k] == 1)
                    throw Error(Errc::NotTransitive, "via position " + std::to_string(j + 1), i + 1, k + 1);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || rows[i][j] != 1) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (rows[i][k] != rows[j][k])
                    throw Error(Errc::CongruenceViolation,
                                "rows differ at column " + std::to_string(k + 1), i + 1, j + 1);
        }
    std::vector<std::uint32_t> cls(n);
    std::vector<std::size_t> rep;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        while (c < rep.size() && rows[i][rep[c]] != 1) ++c;
        if (c == rep.size()) rep.push_back(i);
        cls[i] = std::uint32_t(c);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> neq;
    for (std::uint32_t c = 0; c < rep.size(); ++c)
        for (std::uint32_t d = c + 1; d < rep.size(); ++d)
            if (rows[rep[c]][rep[d]] == 0) neq.emplace_back(c, d);
    return RelationalWord::from_classes(cls, neq);
}

RelationalWord from_string(std::string_view s) {
    std::vector<std::uint32_t> cls;
    std::string seen;
    for (char ch : s) {
        auto p = seen.find(ch);
        if (p == std::string::npos) {
            p = seen.size();
            seen.push_back(ch);
        }
        cls.push_back(std::uint32_t(p));
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> neq;
    for (std::uint32_t c = 0; c < seen.size(); ++c)
        for (std::uint32_t d = c + 1; d < seen.size(); ++d) neq.emplace_back(c, d);
    return RelationalWord::from_classes(cls, neq);
}

RelationalWord induced(const RelationalWord& w, const std::vector<std::size_t>& positions) {
    std::vector<std::uint32_t> cls;
    cls.reserve(positions.size());
    std::size_t prev = 0;
    for (auto p : positions) {
        if (p <= prev || p > w.size())
            throw Error(Errc::BadEmbedding, "positions must be increasing and within the word");
        prev = p;
        cls.push_back(w.class_of(p - 1));
    }
    std::vector<bool> used(w.class_count(), false);
    for (auto c : cls) used[c] = true;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> neq;
    for (std::uint32_t c = 0; c < w.class_count(); ++c)
        for (std::uint32_t d = c + 1; d < w.class_count(); ++d)
            if (used[c] && used[d] && w.classes_neq(c, d)) neq.emplace_back(c, d);
    return RelationalWord::from_classes(cls, neq);
}

bool equals(const RelationalWord& w, const RelationalWord& v) noexcept { return w == v; }

bool contradicts(const RelationalWord& w, const RelationalWord& v) {
    if (w.size() != v.size())
        throw Error(Errc::LengthMismatch, std::to_string(w.size()) + " vs " + std::to_string(v.size()));
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            Relation a = w.rel(i, j), b = v.rel(i, j);
            if ((a == Relation::Eq && b == Relation::Neq) || (a == Relation::Neq && b == Relation::Eq))
                return true;
        }
    return false;
}

bool is_scattered_subword(const RelationalWord& w, const RelationalWord& v,
                          const std::vector<std::size_t>& embedding) {
    if (embedding.size() != w.size())
        throw Error(Errc::BadEmbedding, "embedding has " + std::to_string(embedding.size()) +
                                            " entries for a word of length " + std::to_string(w.size()));
    std::size_t prev = 0;
    for (auto p : embedding) {
        if (p <= prev || p > v.size())
            throw Error(Errc::BadEmbedding, "embedding must be strictly increasing into the target");
        prev = p;
    }
    for (std::size_t x = 0; x < w.size(); ++x)
        for (std::size_t y = x + 1; y < w.size(); ++y)
            if (w.rel(x, y) != v.rel(embedding[x] - 1, embedding[y] - 1)) return false;
    return true;
}

std::optional<std::vector<std::size_t>> exists_scattered_subword(const RelationalWord& w,
                                                                 const RelationalWord& v) {
    std::size_t m = w.size(), n = v.size();
    if (m > n) return std::nullopt;
    std::vector<std::size_t> emb;  // 0-based while searching
    std::function<bool(std::size_t)> go = [&](std::size_t from) -> bool {
        std::size_t x = emb.size();
        if (x == m) return true;
        for (std::size_t p = from; p + (m - x) <= n; ++p) {
            bool ok = true;
            for (std::size_t y = 0; y < x && ok; ++y) ok = w.rel(y, x) == v.rel(emb[y], p);
            if (!ok) continue;
            emb.push_back(p);
            if (go(p + 1)) return true;
            emb.pop_back();
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    for (auto& p : emb) ++p;
    return emb;
}

bool is_subword(const RelationalWord& w, const RelationalWord& v, std::size_t start) {
    if (w.empty()) return true;
    if (start < 1 || w.size() > v.size() || start > v.size() - w.size() + 1)
        throw Error(Errc::OutOfRange, "start " + std::to_string(start) + " outside 1.." +
                                          std::to_string(v.size() >= w.size() ? v.size() - w.size() + 1 : 0));
    std::vector<std::size_t> emb(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) emb[i] = start + i;
    return is_scattered_subword(w, v, emb);
}

namespace {

// Calls f(colour-of-class) for each assignment of `s` colours where NEQ classes differ.
template <class F>
void for_each_colouring(const RelationalWord& w, std::size_t s, F&& f) {
    std::uint32_t k = w.class_count();
    std::vector<std::size_t> col(k, 0);
    std::function<void(std::uint32_t)> go = [&](std::uint32_t c) {
        if (c == k) {
            f(col);
            return;
        }
        for (std::size_t x = 0; x < s; ++x) {
            bool ok = true;
            for (std::uint32_t d = 0; d < c && ok; ++d) ok = !(w.classes_neq(c, d) && col[d] == x);
            if (!ok) continue;
            col[c] = x;
            go(c + 1);
        }
    };
    go(0);
}

}  // namespace

std::set<std::string> enumerate_language(const RelationalWord& w, std::string_view alphabet) {
    std::string letters;
    for (char ch : alphabet)
        if (letters.find(ch) == std::string::npos) letters.push_back(ch);
    if (letters.empty()) throw Error(Errc::EmptyAlphabet, "");
    std::set<std::string> out;
    for_each_colouring(w, letters.size(), [&](const std::vector<std::size_t>& col) {
        std::string s(w.size(), ' ');
        for (std::size_t i = 0; i < w.size(); ++i) s[i] = letters[col[w.class_of(i)]];
        out.insert(std::move(s));
    });
    return out;
}

std::uint64_t count_language(const RelationalWord& w, std::size_t alphabet_size, const CountOptions& opts) {
    std::uint32_t k = w.class_count();
    if (opts.binomial_formula) {
        if (k > alphabet_size) return 0;
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= k; ++i) r = r * (alphabet_size - k + i) / i;
        return r;
    }
    if (k == 0) return 1;
    if (k > opts.class_cap)
        throw Error(Errc::CapExceeded, std::to_string(k) + " classes exceed the cap of " +
                                           std::to_string(opts.class_cap));
    // Small search spaces are counted directly.
    double space = 1;
    for (std::uint32_t i = 0; i < k; ++i) space *= double(alphabet_size);
    if (space <= double(1 << 20)) {
        std::uint64_t n = 0;
        for_each_colouring(w, alphabet_size, [&](const std::vector<std::size_t>&) { ++n; });
        return n;
    }
    // Otherwise: sum over partitions of the classes into independent blocks of
    // the falling factorial s(s-1)...(s-b+1), b = number of blocks.
    std::vector<std::uint64_t> by_blocks(k + 1, 0);
    std::vector<std::vector<std::uint32_t>> blocks;
    std::function<void(std::uint32_t)> go = [&](std::uint32_t c) {
        if (c == k) {
            ++by_blocks[blocks.size()];
            return;
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (std::any_of(blocks[i].begin(), blocks[i].end(), [&](std::uint32_t d) { return w.classes_neq(c, d); }))
                continue;
            blocks[i].push_back(c);
            go(c + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({c});
        go(c + 1);
        blocks.pop_back();
    };
    go(0);
    std::uint64_t total = 0;
    for (std::size_t b = 1; b <= k; ++b) {
        if (!by_blocks[b] || b > alphabet_size) continue;
        std::uint64_t ff = 1;
        for (std::size_t i = 0; i < b; ++i) ff *= alphabet_size - i;
        total += by_blocks[b] * ff;
    }
    return total;
}

std::size_t max_e(const RelationalWord& w) {
    std::size_t best = 0;
    for (auto s : w.class_sizes()) best = std::max<std::size_t>(best, s);
    return best;
}

namespace {

std::size_t class_clique(const RelationalWord& w, bool weighted) {
    std::uint32_t k = w.class_count();
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    for (std::uint32_t c = 0; c < k; ++c)
        for (std::uint32_t d = 0; d < k; ++d) adj[c][d] = c != d && w.classes_neq(c, d);
    std::vector<std::uint64_t> weight(k, 1);
    if (weighted) {
        auto sz = w.class_sizes();
        weight.assign(sz.begin(), sz.end());
    }
    return std::size_t(detail::max_weight_clique(adj, weight));
}

}  // namespace

// Fully defined subsets are unions of whole classes that are pairwise unequal.
std::size_t max_fd(const RelationalWord& w) { return class_clique(w, true); }

std::size_t max_n(const RelationalWord& w) { return class_clique(w, false); }

std::string canonical_key(const RelationalWord& w) {
    std::string key;
    auto put = [&](std::uint32_t x) {
        key.push_back(char(x & 0xff));
        key.push_back(char((x >> 8) & 0xff));
    };
    put(std::uint32_t(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) put(w.class_of(i));
    for (std::uint32_t c = 0; c < w.class_count(); ++c)
        for (std::uint32_t d = c + 1; d < w.class_count(); ++d)
            if (w.classes_neq(c, d)) {
                put(c);
                put(d);
            }
    return key;
}

std::vector<std::string> digit_rows(const RelationalWord& w) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < w.size(); ++j) row.push_back(to_digit(w.rel(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace relword
