#include "relword/universality.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace relword {

std::set<std::string> string_step(const std::string& w, const StringInsDelSystem& sys) {
    std::set<std::string> out;
    for (const auto& y : sys.ins)
        for (std::size_t i = 0; i <= w.size(); ++i) out.insert(w.substr(0, i) + y + w.substr(i));
    for (const auto& y : sys.del) {
        if (y.size() > w.size()) continue;
        for (std::size_t i = 0; i + y.size() <= w.size(); ++i)
            if (w.compare(i, y.size(), y) == 0) out.insert(w.substr(0, i) + w.substr(i + y.size()));
    }
    return out;
}

std::set<std::string> string_reachable(const StringInsDelSystem& sys, std::size_t depth) {
    std::set<std::string> all(sys.axioms.begin(), sys.axioms.end());
    std::vector<std::string> frontier(all.begin(), all.end());
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (auto& v : string_step(w, sys))
                if (all.insert(v).second) next.push_back(v);
        frontier = std::move(next);
    }
    return all;
}

CodeMorphism::CodeMorphism(std::string alphabet, std::size_t K) : alphabet_(std::move(alphabet)), K_(K) {
    if (alphabet_.empty()) throw Error(Errc::EmptyAlphabet, "code morphism needs at least one letter");
    if (K_ <= alphabet_.size() + 2)
        throw Error(Errc::KTooSmall, "K=" + std::to_string(K_) + " must exceed " + std::to_string(alphabet_.size() + 2));
}

std::size_t CodeMorphism::index_of(char letter) const {
    auto p = alphabet_.find(letter);
    if (p == std::string::npos) throw Error(Errc::OutOfRange, std::string("letter '") + letter + "' not in alphabet");
    return p + 1;
}

std::string CodeMorphism::codeword(char letter) const {
    std::size_t i = index_of(letter);
    std::string s;
    for (std::size_t k = 0; k < K_; ++k) s += "ab";
    s.append(i, 'a');
    for (std::size_t k = 0; k < K_; ++k) s += "ba";
    return s;
}

std::string CodeMorphism::encode(std::string_view s) const {
    std::string out;
    for (char c : s) out += codeword(c);
    return out;
}

Encoding encode(const StringInsDelSystem& sys, std::size_t K) {
    CodeMorphism m(sys.alphabet, K);
    System out;
    for (std::size_t i = 0; i < sys.ins.size(); ++i)
        out.scheme.add(make_rule("ins" + std::to_string(i + 1), StepKind::Insert, m.word(sys.ins[i])));
    for (std::size_t i = 0; i < sys.del.size(); ++i)
        out.scheme.add(make_rule("del" + std::to_string(i + 1), StepKind::Delete, m.word(sys.del[i])));
    for (const auto& a : sys.axioms) out.axioms.push_back(m.word(a));
    return {std::move(out), std::move(m)};
}

std::vector<std::string> parses(const RelationalWord& w, const CodeMorphism& m, std::size_t limit) {
    std::vector<std::string> out;
    const std::string& alpha = m.alphabet();
    std::vector<std::string> cw;
    for (char c : alpha) cw.push_back(m.codeword(c));
    std::vector<int> letter(w.class_count(), -1);
    std::string src;
    const std::size_t n = w.size();

    std::function<void(std::size_t)> go = [&](std::size_t p) {
        if (out.size() >= limit) return;
        if (p == n) {
            for (std::uint32_t c = 0; c < w.class_count(); ++c)
                for (std::uint32_t d = c + 1; d < w.class_count(); ++d)
                    if (w.classes_neq(c, d) && letter[c] == letter[d]) return;
            out.push_back(src);
            return;
        }
        for (std::size_t i = 0; i < cw.size(); ++i) {
            const std::string& c = cw[i];
            if (p + c.size() > n) continue;
            // Codewords start with "ab".
            std::uint32_t A = w.class_of(p), B = w.class_of(p + 1);
            if (A == B || !w.classes_neq(A, B)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < c.size() && ok; ++j) ok = w.class_of(p + j) == (c[j] == 'a' ? A : B);
            if (!ok) continue;
            if ((letter[A] != -1 && letter[A] != 0) || (letter[B] != -1 && letter[B] != 1)) continue;
            int oldA = letter[A], oldB = letter[B];
            letter[A] = 0;
            letter[B] = 1;
            src.push_back(alpha[i]);
            go(p + c.size());
            src.pop_back();
            letter[A] = oldA;
            letter[B] = oldB;
        }
    };
    go(0);
    return out;
}

bool is_canonical(const RelationalWord& w, const CodeMorphism& m) { return !parses(w, m, 1).empty(); }

std::optional<std::string> decode(const RelationalWord& w, const CodeMorphism& m, std::string_view terminals) {
    auto ps = parses(w, m, 1);
    if (ps.empty()) return std::nullopt;
    for (char c : ps.front())
        if (terminals.find(c) == std::string_view::npos) return std::nullopt;
    return ps.front();
}

std::optional<std::string> decode(const RelationalWord& w, const CodeMorphism& m) {
    return decode(w, m, m.alphabet());
}

bool LanguageComparison::equal() const {
    return std::all_of(per_depth.begin(), per_depth.end(), [](const DepthComparison& d) { return d.equal(); });
}

LanguageComparison compare_languages(const StringInsDelSystem& sys, std::size_t K, std::size_t depth) {
    Encoding enc = encode(sys, K);
    LanguageComparison rep;
    std::set<std::string> strings(sys.axioms.begin(), sys.axioms.end());
    std::vector<std::string> sfront(strings.begin(), strings.end());
    std::unordered_set<std::string> seen;
    std::vector<RelationalWord> all, rfront;
    for (const auto& a : enc.system.axioms)
        if (seen.insert(canonical_key(a)).second) {
            all.push_back(a);
            rfront.push_back(a);
        }
    for (std::size_t d = 0;; ++d) {
        DepthComparison dc;
        dc.depth = d;
        for (const auto& s : strings)
            if (std::all_of(s.begin(), s.end(), [&](char c) { return sys.terminals.find(c) != std::string::npos; }))
                dc.strings.insert(s);
        dc.relational_states = all.size();
        for (const auto& w : all) {
            auto p = decode(w, enc.morphism);
            if (!p) continue;
            ++dc.canonical_states;
            if (!strings.count(*p)) dc.stray.push_back(*p);
            if (auto t = decode(w, enc.morphism, sys.terminals)) dc.decoded.insert(*t);
        }
        rep.per_depth.push_back(std::move(dc));
        if (d == depth) break;
        std::vector<std::string> snext;
        for (const auto& s : sfront)
            for (auto& v : string_step(s, sys))
                if (strings.insert(v).second) snext.push_back(v);
        sfront = std::move(snext);
        std::vector<RelationalWord> rnext;
        for (const auto& w : rfront)
            for (auto& st : step_all(w, enc.system.scheme))
                if (seen.insert(canonical_key(st.result)).second) {
                    all.push_back(st.result);
                    rnext.push_back(std::move(st.result));
                }
        rfront = std::move(rnext);
    }
    return rep;
}

namespace {

// Segment [s, e) is good when fully defined with exactly two classes and, read as
// a/b from its first position, a concatenation of codewords.
bool good_segment(const RelationalWord& w, std::size_t s, std::size_t e, const std::vector<std::string>& cw) {
    std::uint32_t A = w.class_of(s), B = UINT32_MAX;
    std::string text;
    text.reserve(e - s);
    for (std::size_t i = s; i < e; ++i) {
        std::uint32_t c = w.class_of(i);
        if (c == A) {
            text.push_back('a');
            continue;
        }
        if (B == UINT32_MAX) B = c;
        if (c != B) return false;
        text.push_back('b');
    }
    if (B == UINT32_MAX || !w.classes_neq(A, B)) return false;
    std::vector<bool> reach(text.size() + 1, false);
    reach[0] = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!reach[i]) continue;
        for (auto& c : cw)
            if (text.compare(i, c.size(), c) == 0) reach[i + c.size()] = true;
    }
    return reach[text.size()];
}

}  // namespace

std::size_t incorrect_patterns(const RelationalWord& w, const CodeMorphism& m) {
    std::vector<std::string> cw;
    for (char c : m.alphabet()) cw.push_back(m.codeword(c));
    std::size_t bad = 0, s = 0, n = w.size();
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && w.rel(i - 1, i) != Relation::Undef) continue;
        if (!good_segment(w, s, i, cw)) ++bad;
        s = i;
    }
    return bad;
}

// ---------------------------------------------------------------- repair probe

namespace {

using Labels = std::vector<std::uint8_t>;  // 0 = present before the probe, j = j-th inserted block

struct ProbeState {
    RelationalWord word;
    Labels labels;
    Script script;
};

// Minimal window length containing one position of every label in `group`.
std::size_t hit_length(const Labels& labels, const std::vector<std::uint8_t>& group) {
    std::size_t best = SIZE_MAX;
    std::vector<std::size_t> last(256, SIZE_MAX);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        last[labels[i]] = i;
        std::size_t lo = i;
        bool ok = true;
        for (auto g : group) {
            if (last[g] == SIZE_MAX) {
                ok = false;
                break;
            }
            lo = std::min(lo, last[g]);
        }
        if (ok) best = std::min(best, i - lo + 1);
    }
    return best;
}

// Can every inserted block be hit by at most `b` windows deleting at most `budget` positions in total?
bool feasible(const Labels& labels, std::uint8_t blocks, std::size_t b, std::size_t budget) {
    if (blocks == 0) return true;
    std::vector<std::uint8_t> ids;
    for (std::uint8_t j = 1; j <= blocks; ++j) ids.push_back(j);
    std::vector<int> group(blocks, 0);
    bool ok = false;
    std::function<void(std::size_t, int)> go = [&](std::size_t i, int used) {
        if (ok) return;
        if (i == ids.size()) {
            std::size_t total = 0;
            for (int g = 0; g < used && total <= budget; ++g) {
                std::vector<std::uint8_t> members;
                for (std::size_t k = 0; k < ids.size(); ++k)
                    if (group[k] == g) members.push_back(ids[k]);
                std::size_t h = hit_length(labels, members);
                total = h == SIZE_MAX ? SIZE_MAX : total + h;
            }
            if (total <= budget) ok = true;
            return;
        }
        for (int g = 0; g <= used && g < int(b); ++g) {
            group[i] = g;
            go(i + 1, std::max(used, g + 1));
        }
    };
    go(0, 0);
    return ok;
}

}  // namespace

ProbeReport repair_probe(const Encoding& enc, const RelationalWord& broken, const std::vector<RelationalWord>& ancestors,
                         const ProbeBudget& budget) {
    const CodeMorphism& m = enc.morphism;
    const Scheme& sc = enc.system.scheme;
    ProbeReport rep;
    rep.initial_patterns = incorrect_patterns(broken, m);
    rep.min_patterns = rep.initial_patterns;
    if (is_canonical(broken, m)) {
        rep.already_canonical = rep.repair_found = rep.complete = true;
        rep.repair = Trace{broken, {}};
        return rep;
    }
    std::size_t max_del = 0;
    for (auto& r : sc.del()) max_del = std::max(max_del, r.body.size());
    const std::size_t D = budget.depth;
    bool stop = false, cut = false;
    std::size_t words = 0;

    // Deletion phase from one post-insertion word.
    auto deletions = [&](const ProbeState& y, std::uint8_t blocks) {
        std::function<void(const RelationalWord&, const Labels&, std::uint32_t, Script&, std::size_t, std::size_t)> go =
            [&](const RelationalWord& w, const Labels& lab, std::uint32_t touched, Script& script, std::size_t left,
                std::size_t parent) {
                if (stop || left == 0) return;
                // On the last deletion the window has to meet every untouched block.
                std::size_t lo_min = 1, hi_max = SIZE_MAX;
                if (left == 1) {
                    std::vector<std::size_t> first(blocks + 1, 0), last(blocks + 1, 0);
                    for (std::size_t i = 0; i < lab.size(); ++i) {
                        std::uint8_t b = lab[i];
                        if (!b || (touched >> b) & 1) continue;
                        if (!first[b]) first[b] = i + 1;
                        last[b] = i + 1;
                    }
                    for (std::uint8_t b = 1; b <= blocks; ++b) {
                        if (!first[b]) continue;
                        lo_min = std::max(lo_min, first[b]);
                        hi_max = std::min(hi_max, last[b]);
                    }
                }
                for (auto& r : sc.del()) {
                    std::size_t L = r.body.size();
                    if (L > w.size()) continue;
                    std::size_t k0 = lo_min > L ? lo_min - L + 1 : 1;
                    for (std::size_t k = k0; k + L <= w.size() + 1 && k <= hi_max && !stop; ++k) {
                        auto v = try_delete_at(w, r.body, k);
                        if (!v) continue;
                        ++rep.deletion_words;
                        if (++words > budget.max_words) {
                            stop = cut = true;
                            return;
                        }
                        Labels nl;
                        nl.reserve(lab.size() - L);
                        std::uint32_t t = touched;
                        for (std::size_t i = 0; i < lab.size(); ++i) {
                            if (i + 1 >= k && i + 1 < k + L) t |= 1u << lab[i];
                            else nl.push_back(lab[i]);
                        }
                        if (std::find(ancestors.begin(), ancestors.end(), *v) != ancestors.end()) {
                            ++rep.returned;
                            continue;
                        }
                        std::size_t pc = incorrect_patterns(*v, m);
                        if (parent == SIZE_MAX) parent = incorrect_patterns(w, m);
                        rep.min_patterns = std::min(rep.min_patterns, pc);
                        script.push_back({StepKind::Delete, k, r.id});
                        std::uint32_t need = ((1u << (blocks + 1)) - 1) & ~1u;
                        if ((t & need) == need && pc == 0 && is_canonical(*v, m)) {
                            rep.repair_found = true;
                            rep.repair = replay(script, broken, sc);
                            stop = true;
                        }
                        if (pc < parent) ++rep.pattern_decreases;
                        go(*v, nl, t, script, left - 1, pc);
                        script.pop_back();
                    }
                }
            };
        Script s = y.script;
        go(y.word, y.labels, 0, s, D - blocks, SIZE_MAX);
    };

    for (std::uint8_t a = 0; a < D && !stop; ++a) {
        std::size_t bmax = D - a;
        std::vector<ProbeState> level{{broken, Labels(broken.size(), 0), {}}};
        // Levels before the last are deduplicated; the last one is streamed.
        for (std::uint8_t j = 1; j < a && !stop; ++j) {
            std::unordered_set<std::string> seen;
            std::vector<ProbeState> next;
            for (auto& st : level)
                for (auto& r : sc.ins())
                    for (std::size_t g = 0; g <= st.word.size(); ++g) {
                        RelationalWord v = insert_at(st.word, r.body, g);
                        Labels lab = st.labels;
                        lab.insert(lab.begin() + std::ptrdiff_t(g), r.body.size(), j);
                        std::string key = canonical_key(v);
                        key.append(lab.begin(), lab.end());
                        if (!seen.insert(std::move(key)).second) continue;
                        Script s = st.script;
                        s.push_back({StepKind::Insert, g, r.id});
                        next.push_back({std::move(v), std::move(lab), std::move(s)});
                    }
            level = std::move(next);
        }
        if (a == 0) {
            ++rep.insertion_words;
            deletions(level.front(), 0);
            continue;
        }
        for (auto& st : level) {
            for (auto& r : sc.ins()) {
                for (std::size_t g = 0; g <= st.word.size() && !stop; ++g) {
                    Labels lab = st.labels;
                    lab.insert(lab.begin() + std::ptrdiff_t(g), r.body.size(), a);
                    ++rep.insertion_words;
                    if (!feasible(lab, a, bmax, bmax * max_del)) {
                        ++rep.pruned;
                        continue;
                    }
                    Script s = st.script;
                    s.push_back({StepKind::Insert, g, r.id});
                    ProbeState y{insert_at(st.word, r.body, g), std::move(lab), std::move(s)};
                    deletions(y, a);
                }
            }
            if (stop) break;
        }
    }
    rep.complete = rep.repair_found || !cut;
    return rep;
}

}  // namespace relword
