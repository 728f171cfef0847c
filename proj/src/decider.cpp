#include "relword/decider.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <unordered_map>

namespace relword {

std::string_view family_name(Family f) noexcept { return f == Family::I2D3 ? "I2D3" : "I3D2"; }

std::string_view case_name(SchemeCase c) noexcept {
    switch (c) {
        case SchemeCase::AllEqual: return "AllEqual";
        case SchemeCase::NoEqualInD: return "NoEqualInD";
        case SchemeCase::AllEqualD: return "AllEqualD";
        case SchemeCase::MixedD: return "MixedD";
    }
    return "?";
}

std::string_view membership_name(Membership m) noexcept {
    switch (m) {
        case Membership::Yes: return "YES";
        case Membership::No: return "NO";
        default: return "UNKNOWN";
    }
}

namespace {

std::string letters_of(const RelationalWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s.push_back(char('a' + w.class_of(i)));
    return s;
}

bool all_eq(const RelationalWord& w) { return w.class_count() <= 1; }

}  // namespace

SimpleScheme SimpleScheme::make(const RelationalWord& ins_body, const RelationalWord& del_body) {
    Family f;
    if (ins_body.size() == 3 && del_body.size() == 2) f = Family::I3D2;
    else if (ins_body.size() == 2 && del_body.size() == 3) f = Family::I2D3;
    else
        throw Error(Errc::NotSimple, "rule lengths " + std::to_string(ins_body.size()) + "/" +
                                         std::to_string(del_body.size()) + " are not 3/2 or 2/3");
    return SimpleScheme{make_rule("I", StepKind::Insert, ins_body), make_rule("D", StepKind::Delete, del_body), f};
}

SimpleScheme SimpleScheme::make(std::string_view ins_letters, std::string_view del_letters) {
    return make(from_string(ins_letters), from_string(del_letters));
}

Scheme SimpleScheme::as_scheme() const { return Scheme({ins}, {del}); }

std::string SimpleScheme::name() const {
    return "(" + letters_of(ins.body) + "," + letters_of(del.body) + ")";
}

std::vector<RelationalWord> enumerate_fully_defined(std::size_t n) {
    std::vector<RelationalWord> out;
    std::string s;
    std::function<void(char)> go = [&](char top) {
        if (s.size() == n) {
            out.push_back(from_string(s));
            return;
        }
        for (char c = 'a'; c <= top + 1 && c <= 'z'; ++c) {
            s.push_back(c);
            go(std::max(top, c));
            s.pop_back();
        }
    };
    go('a' - 1);
    return out;
}

std::vector<CatalogEntry> rule_catalog() {
    const std::pair<const char*, const char*> names[] = {
        {"M1^2", "ab"},  {"M2^2", "aa"},  {"M1^3", "aaa"}, {"M2^3", "aab"},
        {"M3^3", "abb"}, {"M4^3", "aba"}, {"M5^3", "abc"},
    };
    std::vector<CatalogEntry> out;
    for (auto [n, l] : names) out.push_back({n, l, from_string(l)});
    return out;
}

std::vector<SimpleScheme> all_simple_schemes() {
    std::vector<SimpleScheme> out;
    auto two = enumerate_fully_defined(2), three = enumerate_fully_defined(3);
    for (auto& i : three)
        for (auto& d : two) out.push_back(SimpleScheme::make(i, d));
    for (auto& i : two)
        for (auto& d : three) out.push_back(SimpleScheme::make(i, d));
    return out;
}

SchemeClass classify(const SimpleScheme& s) {
    const auto& I = s.ins.body;
    const auto& D = s.del.body;
    SchemeClass c;
    if (all_eq(I) && all_eq(D)) {
        c.kind = SchemeCase::AllEqual;
        return c;
    }
    if (max_e(D) == 1) {
        c.kind = SchemeCase::NoEqualInD;
        c.bound_k = std::max(I.size(), D.size() * (max_e(I) - 1));
        c.max_e_bound = max_e(I);
    } else if (all_eq(D)) {
        c.kind = SchemeCase::AllEqualD;
        c.bound_k = I.size();
        c.max_e_bound = D.size() == 2 ? 2 : 1;
    } else {
        c.kind = SchemeCase::MixedD;
        c.bound_k = 3;
        c.max_e_bound = 2;
    }
    return c;
}

Budget default_budget() {
    Budget b;
    if (const char* env = std::getenv("RELWORD_BUDGET_DEPTH")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') b.max_depth = v;
    }
    return b;
}

// ---------------------------------------------------------------- scripts

namespace {

Script parse_compact(std::string_view text) {
    // "i1 d3 d1": i = insert I at gap, d = delete D at start.
    Script s;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos >= text.size()) break;
        char kind = text[pos++];
        std::size_t v = 0;
        while (pos < text.size() && text[pos] != ' ') v = v * 10 + std::size_t(text[pos++] - '0');
        if (kind == 'i') s.push_back({StepKind::Insert, v, "I"});
        else s.push_back({StepKind::Delete, v, "D"});
    }
    return s;
}

const std::map<std::pair<std::string, std::string>, std::string>& epsilon_table() {
    static const std::map<std::pair<std::string, std::string>, std::string> t = {
        {{"aaa", "aa"}, "i1 d3 d1"},
        {{"aaa", "ab"}, "i0 i1 i1 d9 d7 d4 d3 d1"},
        {{"abc", "aa"}, "i0 i2 i2 d8 d2 d5 d3 d1"},
        {{"abc", "ab"}, "i0 d3 d1"},
        {{"aab", "aa"}, "i0 d3 d1"},
        {{"aab", "ab"}, "i0 d2 d1"},
        {{"abb", "aa"}, "i0 d2 d1"},
        {{"abb", "ab"}, "i0 d3 d1"},
        {{"aba", "aa"}, "i0 i0 i2 d9 d6 d5 d2 d1"},
        {{"aba", "ab"}, "i0 d1 d1"},
    };
    return t;
}

}  // namespace

Script epsilon_script(const SimpleScheme& s) {
    if (s.family != Family::I3D2) throw Error(Errc::UnknownCase, "no direct script for " + s.name());
    auto it = epsilon_table().find({letters_of(s.ins.body), letters_of(s.del.body)});
    if (it == epsilon_table().end()) throw Error(Errc::UnknownCase, "no script for " + s.name());
    return parse_compact(it->second);
}

Script append_isolated_script(const SimpleScheme& s) {
    if (s.family != Family::I2D3) throw Error(Errc::UnknownCase, "append script is built for I2D3 only");
    SimpleScheme swapped = SimpleScheme::make(s.del.body, s.ins.body);
    Script fwd = epsilon_script(swapped);
    Script out;
    for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
        if (it->kind == StepKind::Insert) out.push_back({StepKind::Delete, it->site + 1, "D"});
        else out.push_back({StepKind::Insert, it->site - 1, "I"});
    }
    Trace t = replay(out, RelationalWord{}, s.as_scheme());
    if (t.final_word().size() != 1) throw Error(Errc::Mismatch, "reversed script does not produce one position");
    return out;
}

Script delete_position_script(const SimpleScheme& s, std::size_t p) {
    if (p == 0) throw Error(Errc::OutOfRange, "positions are 1-based");
    if (s.family == Family::I3D2) return shifted(epsilon_script(s), std::ptrdiff_t(p) - 1);
    Script app = shifted(append_isolated_script(s), std::ptrdiff_t(p));
    Script out = app;
    out.insert(out.end(), app.begin(), app.end());
    out.push_back({StepKind::Delete, p, "D"});
    return out;
}

Trace delete_word(const SimpleScheme& s, const RelationalWord& w) {
    Trace t{w, {}};
    Scheme sc = s.as_scheme();
    for (std::size_t p = w.size(); p >= 1; --p) extend(t, delete_position_script(s, p), sc);
    return t;
}

Trace all_equal_witness(const SimpleScheme& s, std::size_t n) {
    if (classify(s).kind != SchemeCase::AllEqual)
        throw Error(Errc::UnknownCase, s.name() + " is not an all-equal scheme");
    Script sc;
    if (n >= 1) {
        if (s.family == Family::I3D2) {
            sc = {{StepKind::Insert, 0, "I"}, {StepKind::Delete, 1, "D"}};
            for (std::size_t m = 1; m < n; ++m) {
                sc.push_back({StepKind::Insert, m, "I"});
                sc.push_back({StepKind::Delete, m, "D"});
            }
        } else {
            sc = {{StepKind::Insert, 0, "I"}, {StepKind::Insert, 1, "I"}, {StepKind::Delete, 1, "D"}};
            for (std::size_t m = 1; m < n; ++m) {
                sc.push_back({StepKind::Insert, m, "I"});
                sc.push_back({StepKind::Insert, m + 1, "I"});
                sc.push_back({StepKind::Delete, m, "D"});
            }
        }
    }
    return replay(sc, RelationalWord{}, s.as_scheme());
}

// ---------------------------------------------------------------- search

namespace {

struct Node {
    RelationalWord word;
    std::size_t parent = 0;
    ScriptStep step;
    std::size_t depth = 0;
};

struct Search {
    std::vector<Node> nodes;
    bool truncated = false;
    std::size_t depth_reached = 0;
};

// on_new(index) returns true to stop the search.
Search bfs(const SimpleScheme& s, const Budget& b, const std::function<bool(const Search&, std::size_t)>& on_new) {
    Search sr;
    Scheme sc = s.as_scheme();
    std::unordered_map<std::string, std::size_t> seen;
    sr.nodes.push_back({RelationalWord{}, 0, {}, 0});
    seen.emplace(canonical_key(RelationalWord{}), 0);
    if (on_new(sr, 0)) return sr;
    std::size_t lo = 0, hi = 1;
    for (std::size_t d = 1; lo < hi; ++d) {
        if (d > b.max_depth) {
            sr.truncated = true;
            break;
        }
        for (std::size_t x = lo; x < hi; ++x) {
            for (auto& st : step_all(sr.nodes[x].word, sc)) {
                if (st.result.size() > b.max_len) {
                    sr.truncated = true;
                    continue;
                }
                auto key = canonical_key(st.result);
                if (seen.count(key)) continue;
                if (sr.nodes.size() >= b.max_states) {
                    sr.truncated = true;
                    return sr;
                }
                seen.emplace(std::move(key), sr.nodes.size());
                sr.nodes.push_back({std::move(st.result), x, {st.kind, st.site, st.rule_id}, d});
                sr.depth_reached = d;
                if (on_new(sr, sr.nodes.size() - 1)) return sr;
            }
        }
        lo = hi;
        hi = sr.nodes.size();
    }
    return sr;
}

Trace path_to(const Search& sr, std::size_t idx, const Scheme& sc) {
    Script steps;
    for (std::size_t x = idx; x != 0; x = sr.nodes[x].parent) steps.push_back(sr.nodes[x].step);
    std::reverse(steps.begin(), steps.end());
    return replay(steps, RelationalWord{}, sc);
}

// Reached word plus embedding: delete everything outside the embedding.
Trace witness_from(const SimpleScheme& s, const Search& sr, std::size_t idx, const std::vector<std::size_t>& emb,
                   const RelationalWord& target) {
    Scheme sc = s.as_scheme();
    Trace t = path_to(sr, idx, sc);
    std::size_t n = sr.nodes[idx].word.size();
    for (std::size_t p = n; p >= 1; --p)
        if (!std::binary_search(emb.begin(), emb.end(), p)) extend(t, delete_position_script(s, p), sc);
    if (!equals(t.final_word(), target)) throw Error(Errc::Mismatch, "witness does not end at the query word");
    return t;
}

std::optional<std::string> bound_rejects(const SchemeClass& c, const RelationalWord& v) {
    if (c.bound_k && v.size() > *c.bound_k)
        return "length " + std::to_string(v.size()) + " exceeds the maxFD bound " + std::to_string(*c.bound_k);
    if (c.max_e_bound && max_e(v) > *c.max_e_bound)
        return "maxE " + std::to_string(max_e(v)) + " exceeds the bound " + std::to_string(*c.max_e_bound);
    return std::nullopt;
}

}  // namespace

Verdict decide_membership(const SimpleScheme& s, const RelationalWord& v, const Budget& budget) {
    if (!v.fully_defined()) throw Error(Errc::NotFullyDefined, "query word has undefined pairs");
    SchemeClass c = classify(s);
    Verdict out;
    if (!c.has_inequality()) {
        if (v.class_count() <= 1) {
            out.member = Membership::Yes;
            out.witness = all_equal_witness(s, v.size());
            out.reason = "all positions equal";
        } else {
            out.member = Membership::No;
            out.reason = "contains an unequal pair; only all-equal words are derivable";
        }
        return out;
    }
    if (auto why = bound_rejects(c, v)) {
        out.member = Membership::No;
        out.reason = *why;
        return out;
    }
    std::optional<std::pair<std::size_t, std::vector<std::size_t>>> hit;
    Search sr = bfs(s, budget, [&](const Search& st, std::size_t idx) {
        const auto& w = st.nodes[idx].word;
        if (w.size() < v.size()) return false;
        if (auto emb = exists_scattered_subword(v, w)) {
            hit.emplace(idx, *emb);
            return true;
        }
        return false;
    });
    out.states = sr.nodes.size();
    out.depth_reached = sr.depth_reached;
    if (hit) {
        out.member = Membership::Yes;
        out.witness = witness_from(s, sr, hit->first, hit->second, v);
        out.reason = "found as a scattered subword of a reachable word";
    } else if (sr.truncated) {
        out.member = Membership::Unknown;
        out.budget_exhausted = true;
        out.reason = "search budget exhausted";
    } else {
        out.member = Membership::No;
        out.reason = "reachable set exhausted";
    }
    return out;
}

std::vector<RelationalWord> FdlResult::members() const {
    std::vector<RelationalWord> out;
    for (auto& e : entries)
        if (e.verdict.member == Membership::Yes) out.push_back(e.word);
    return out;
}

FdlResult compute_fdl(const SimpleScheme& s, const Budget& budget) {
    SchemeClass c = classify(s);
    FdlResult r;
    std::size_t top = c.bound_k.value_or(4);
    std::vector<RelationalWord> cand;
    for (std::size_t n = 0; n <= top; ++n)
        for (auto& w : enumerate_fully_defined(n)) cand.push_back(w);
    if (!c.has_inequality()) {
        r.symbolic_all_equal = true;
        for (auto& w : cand) r.entries.push_back({w, decide_membership(s, w, budget)});
        r.complete = true;
        return r;
    }
    std::vector<std::size_t> open;
    r.entries.resize(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
        r.entries[i].word = cand[i];
        if (auto why = bound_rejects(c, cand[i])) {
            r.entries[i].verdict.member = Membership::No;
            r.entries[i].verdict.reason = *why;
        } else {
            open.push_back(i);
        }
    }
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> hit(cand.size());
    std::vector<bool> found(cand.size(), false);
    std::size_t remaining = open.size();
    Search sr = bfs(s, budget, [&](const Search& st, std::size_t idx) {
        const auto& w = st.nodes[idx].word;
        for (auto i : open) {
            if (found[i] || w.size() < cand[i].size()) continue;
            if (auto emb = exists_scattered_subword(cand[i], w)) {
                found[i] = true;
                hit[i] = {idx, *emb};
                --remaining;
            }
        }
        return remaining == 0;
    });
    bool all = true;
    for (auto i : open) {
        auto& v = r.entries[i].verdict;
        v.states = sr.nodes.size();
        v.depth_reached = sr.depth_reached;
        if (found[i]) {
            v.member = Membership::Yes;
            v.witness = witness_from(s, sr, hit[i].first, hit[i].second, cand[i]);
            v.reason = "found as a scattered subword of a reachable word";
        } else if (sr.truncated) {
            v.member = Membership::Unknown;
            v.budget_exhausted = true;
            v.reason = "search budget exhausted";
            all = false;
        } else {
            v.member = Membership::No;
            v.reason = "reachable set exhausted";
        }
    }
    r.complete = all;
    return r;
}

// ---------------------------------------------------------------- bounds

namespace {

std::size_t sat(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

}  // namespace

BoundReport certify_bounds(const SimpleScheme& s, std::size_t depth, std::size_t max_len) {
    BoundReport rep;
    rep.cls = classify(s);
    const auto& I = s.ins.body;
    const auto& D = s.del.body;
    const std::size_t eI = max_e(I), fdI = max_fd(I), m = D.size();
    enum { AllNeq, AllEq, Mixed } dcase = max_e(D) == 1 ? AllNeq : (all_eq(D) ? AllEq : Mixed);
    Scheme sc = s.as_scheme();

    struct Info {
        RelationalWord w;
        std::size_t e, fd;
    };
    std::unordered_map<std::string, bool> seen;
    std::vector<Info> frontier{{RelationalWord{}, 0, 0}};
    seen.emplace(canonical_key(RelationalWord{}), true);
    rep.per_depth.push_back({0, 1, 0, 0});

    auto violation = [&](const Info& x, const DerivationStep& st, std::size_t e, std::size_t fd,
                         const std::string& what) {
        if (rep.violations.size() >= 20) return;
        std::string rows;
        for (auto& r : digit_rows(x.w)) rows += (rows.empty() ? "" : "/") + r;
        rep.violations.push_back(what + ": " + std::string(kind_name(st.kind)) + " " + std::to_string(st.site) +
                                 " on [" + rows + "] gives maxE " + std::to_string(e) + ", maxFD " +
                                 std::to_string(fd) + " from maxE " + std::to_string(x.e) + ", maxFD " +
                                 std::to_string(x.fd));
    };

    for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
        std::vector<Info> next;
        DepthStats ds{d, 0, 0, 0};
        for (auto& x : frontier) {
            for (auto& st : step_all(x.w, sc)) {
                std::size_t e = max_e(st.result), fd = max_fd(st.result);
                ++rep.steps_checked;
                if (st.kind == StepKind::Insert) {
                    if (e != std::max(x.e, eI)) violation(x, st, e, fd, "insertion maxE equality");
                    if (fd != std::max(x.fd, fdI)) violation(x, st, e, fd, "insertion maxFD equality");
                } else if (dcase == AllNeq) {
                    if (e > x.e) violation(x, st, e, fd, "all-unequal deletion maxE");
                    if (fd > std::max(x.fd, m * sat(x.e, 1))) violation(x, st, e, fd, "all-unequal deletion maxFD");
                } else if (dcase == AllEq) {
                    if (e > std::max(x.e, m * sat(x.e, 1))) violation(x, st, e, fd, "all-equal deletion maxE");
                    if (fd > std::max(x.fd, sat(x.fd + (m - 1) * x.e, m)))
                        violation(x, st, e, fd, "all-equal deletion maxFD");
                } else {
                    if (e > std::max(x.e, 2 * sat(x.e, 1))) violation(x, st, e, fd, "mixed deletion maxE");
                    if (fd > std::max({x.fd, sat(x.fd + x.e, 2), 3 * sat(x.e, 1)}))
                        violation(x, st, e, fd, "mixed deletion maxFD");
                }
                if (rep.cls.bound_k && fd > *rep.cls.bound_k) violation(x, st, e, fd, "maxFD bound");
                if (rep.cls.max_e_bound && e > *rep.cls.max_e_bound) violation(x, st, e, fd, "maxE bound");
                if (st.result.size() > max_len) continue;
                if (!seen.emplace(canonical_key(st.result), true).second) continue;
                ds.states++;
                ds.max_fd = std::max(ds.max_fd, fd);
                ds.max_e = std::max(ds.max_e, e);
                next.push_back({std::move(st.result), e, fd});
            }
        }
        rep.max_fd = std::max(rep.max_fd, ds.max_fd);
        rep.max_e = std::max(rep.max_e, ds.max_e);
        rep.per_depth.push_back(ds);
        frontier = std::move(next);
    }
    return rep;
}

}  // namespace relword
