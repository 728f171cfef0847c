#include "relword/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace relword {

std::string_view kind_name(StepKind k) noexcept { return k == StepKind::Insert ? "ins" : "del"; }

Rule make_rule(std::string id, StepKind kind, RelationalWord body) {
    if (body.empty()) throw Error(Errc::InvalidRule, "rule " + id + " is empty");
    if (!body.fully_defined()) throw Error(Errc::InvalidRule, "rule " + id + " is not fully defined");
    return Rule{std::move(id), kind, std::move(body)};
}

Scheme::Scheme(std::vector<Rule> ins, std::vector<Rule> del) {
    for (auto& r : ins) {
        r.kind = StepKind::Insert;
        add(std::move(r));
    }
    for (auto& r : del) {
        r.kind = StepKind::Delete;
        add(std::move(r));
    }
}

void Scheme::add(Rule r) {
    if (find(r.id)) throw Error(Errc::DuplicateRule, "rule id " + r.id + " already defined");
    if (r.body.empty() || !r.body.fully_defined())
        throw Error(Errc::InvalidRule, "rule " + r.id + " must be nonempty and fully defined");
    (r.kind == StepKind::Insert ? ins_ : del_).push_back(std::move(r));
}

const Rule* Scheme::find(std::string_view id) const noexcept {
    for (auto& r : ins_)
        if (r.id == id) return &r;
    for (auto& r : del_)
        if (r.id == id) return &r;
    return nullptr;
}

const Rule* Scheme::find(std::string_view id, StepKind kind) const noexcept {
    const Rule* r = find(id);
    return r && r->kind == kind ? r : nullptr;
}

bool Trace::ins_first() const noexcept {
    bool seen_del = false;
    for (auto& s : steps) {
        if (s.kind == StepKind::Delete) seen_del = true;
        else if (seen_del) return false;
    }
    return true;
}

RelationalWord insert_at(const RelationalWord& w, const RelationalWord& body, std::size_t k) {
    if (k > w.size())
        throw Error(Errc::SiteOutOfRange, "gap " + std::to_string(k) + " outside 0.." + std::to_string(w.size()));
    std::uint32_t off = w.class_count();
    std::vector<std::uint32_t> cls;
    cls.reserve(w.size() + body.size());
    for (std::size_t i = 0; i < k; ++i) cls.push_back(w.class_of(i));
    for (std::size_t i = 0; i < body.size(); ++i) cls.push_back(off + body.class_of(i));
    for (std::size_t i = k; i < w.size(); ++i) cls.push_back(w.class_of(i));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> neq;
    for (std::uint32_t c = 0; c < w.class_count(); ++c)
        for (std::uint32_t d = c + 1; d < w.class_count(); ++d)
            if (w.classes_neq(c, d)) neq.emplace_back(c, d);
    for (std::uint32_t c = 0; c < body.class_count(); ++c)
        for (std::uint32_t d = c + 1; d < body.class_count(); ++d)
            if (body.classes_neq(c, d)) neq.emplace_back(off + c, off + d);
    return RelationalWord::from_classes(cls, neq);
}

RelationalWord insert_at(const RelationalWord& w, const Rule& rule, std::size_t k) {
    return insert_at(w, rule.body, k);
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::optional<RelationalWord> try_delete_at(const RelationalWord& w, const RelationalWord& body, std::size_t k) {
    std::size_t m = body.size(), n = w.size();
    if (m == 0 || m > n || k < 1 || k > n - m + 1) return std::nullopt;
    std::size_t base = k - 1;
    const std::uint32_t kc = w.class_count(), bc = body.class_count();
    // Word class -> rule class; a word class meeting two rule classes, or two unequal
    // word classes meeting one rule class, contradicts the window.
    std::vector<std::uint32_t> to_body(kc, UINT32_MAX);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (word class, rule class), distinct
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t c = w.class_of(base + i), b = body.class_of(i);
        if (to_body[c] == UINT32_MAX) {
            to_body[c] = b;
            pairs.emplace_back(c, b);
        } else if (to_body[c] != b) {
            return std::nullopt;
        }
    }
    for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y) {
            if (!w.classes_neq(pairs[x].first, pairs[y].first)) continue;
            if (pairs[x].second == pairs[y].second || !body.classes_neq(pairs[x].second, pairs[y].second))
                return std::nullopt;
        }
    UnionFind uf(kc);
    std::vector<std::uint32_t> rep(bc, UINT32_MAX);
    for (auto [c, b] : pairs) {
        if (rep[b] == UINT32_MAX) rep[b] = c;
        else uf.unite(rep[b], c);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> neq;
    auto add = [&](std::uint32_t c, std::uint32_t d) -> bool {
        c = uf.find(c);
        d = uf.find(d);
        if (c == d) return false;
        neq.emplace_back(c, d);
        return true;
    };
    for (std::uint32_t c = 0; c < kc; ++c)
        for (std::uint32_t d = c + 1; d < kc; ++d)
            if (w.classes_neq(c, d) && !add(c, d)) return std::nullopt;
    for (std::uint32_t a = 0; a < bc; ++a)
        for (std::uint32_t b = a + 1; b < bc; ++b)
            if (rep[a] != UINT32_MAX && rep[b] != UINT32_MAX && body.classes_neq(a, b) && !add(rep[a], rep[b]))
                return std::nullopt;
    std::vector<std::uint32_t> cls;
    cls.reserve(n - m);
    std::vector<bool> used(kc, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= base && i < base + m) continue;
        std::uint32_t r = uf.find(w.class_of(i));
        used[r] = true;
        cls.push_back(r);
    }
    std::erase_if(neq, [&](auto& p) { return !used[p.first] || !used[p.second]; });
    return RelationalWord::from_classes(cls, neq);
}

RelationalWord delete_at(const RelationalWord& w, const RelationalWord& body, std::size_t k) {
    if (body.size() > w.size() || k < 1 || k > w.size() - body.size() + 1)
        throw Error(Errc::SiteOutOfRange, "window at " + std::to_string(k) + " of length " +
                                              std::to_string(body.size()) + " does not fit a word of length " +
                                              std::to_string(w.size()));
    auto r = try_delete_at(w, body, k);
    if (!r) throw Error(Errc::SiteNotApplicable, "window at " + std::to_string(k) + " cannot be matched");
    return *std::move(r);
}

RelationalWord delete_at(const RelationalWord& w, const Rule& rule, std::size_t k) {
    return delete_at(w, rule.body, k);
}

std::vector<std::size_t> deletion_sites(const RelationalWord& w, const RelationalWord& body) {
    std::vector<std::size_t> out;
    if (body.empty() || body.size() > w.size()) return out;
    for (std::size_t k = 1; k + body.size() <= w.size() + 1; ++k)
        if (try_delete_at(w, body, k)) out.push_back(k);
    return out;
}

std::vector<std::size_t> deletion_sites(const RelationalWord& w, const Rule& rule) {
    return deletion_sites(w, rule.body);
}

std::vector<DerivationStep> step_all(const RelationalWord& w, const Scheme& scheme, bool raw) {
    std::vector<DerivationStep> all;
    for (auto& r : scheme.ins())
        for (std::size_t k = 0; k <= w.size(); ++k)
            all.push_back({StepKind::Insert, r.id, k, insert_at(w, r.body, k)});
    for (auto& r : scheme.del()) {
        if (r.body.size() > w.size()) continue;
        for (std::size_t k = 1; k + r.body.size() <= w.size() + 1; ++k)
            if (auto v = try_delete_at(w, r.body, k)) all.push_back({StepKind::Delete, r.id, k, *std::move(v)});
    }
    if (raw) return all;
    std::map<std::string, DerivationStep> uniq;
    for (auto& s : all) uniq.try_emplace(canonical_key(s.result), std::move(s));
    std::vector<DerivationStep> out;
    out.reserve(uniq.size());
    for (auto& [key, s] : uniq) out.push_back(std::move(s));
    return out;
}

void extend(Trace& trace, const Script& script, const Scheme& scheme) {
    std::size_t index = trace.steps.size();
    for (auto& st : script) {
        ++index;
        const Rule* r = scheme.find(st.rule_id, st.kind);
        if (!r)
            throw Error(Errc::UnknownRule,
                        "no " + std::string(kind_name(st.kind)) + " rule named '" + st.rule_id + "'", index);
        const RelationalWord& cur = trace.final_word();
        std::optional<RelationalWord> next;
        if (st.kind == StepKind::Insert) {
            if (st.site <= cur.size()) next = insert_at(cur, r->body, st.site);
        } else {
            next = try_delete_at(cur, r->body, st.site);
        }
        if (!next)
            throw Error(Errc::StepNotApplicable,
                        "step " + std::to_string(index) + " (" + std::string(kind_name(st.kind)) + " " +
                            std::to_string(st.site) + " " + st.rule_id + ") on a word of length " +
                            std::to_string(cur.size()),
                        index);
        trace.steps.push_back({st.kind, st.rule_id, st.site, *std::move(next)});
    }
}

Trace replay(const Script& script, const RelationalWord& start, const Scheme& scheme) {
    Trace t{start, {}};
    extend(t, script, scheme);
    return t;
}

Script script_of(const Trace& trace) {
    Script s;
    for (auto& st : trace.steps) s.push_back({st.kind, st.site, st.rule_id});
    return s;
}

Script shifted(const Script& script, std::ptrdiff_t offset) {
    Script s = script;
    for (auto& st : s) st.site = std::size_t(std::ptrdiff_t(st.site) + offset);
    return s;
}

Trace normalize_ins_first(const Trace& trace, const Scheme& scheme) {
    Script s = script_of(trace);
    auto len = [&](const ScriptStep& st) {
        const Rule* r = scheme.find(st.rule_id, st.kind);
        if (!r) throw Error(Errc::UnknownRule, "no rule named '" + st.rule_id + "'");
        return r->body.size();
    };
    // Bubble each insertion leftwards past preceding deletions.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t x = 0; x + 1 < s.size(); ++x) {
            if (s[x].kind != StepKind::Delete || s[x + 1].kind != StepKind::Insert) continue;
            ScriptStep del = s[x], ins = s[x + 1];
            std::size_t m = len(del), t = len(ins);
            if (ins.site + 1 < del.site) {
                del.site += t;
            } else {
                ins.site += m;
            }
            s[x] = ins;
            s[x + 1] = del;
            changed = true;
        }
    }
    return replay(s, trace.start, scheme);
}

}  // namespace relword
