#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "relword/decider.hpp"

using namespace relword;

namespace {

Script parse(std::initializer_list<std::pair<char, std::size_t>> steps) {
    Script s;
    for (auto [k, site] : steps)
        s.push_back(k == 'i' ? ScriptStep{StepKind::Insert, site, "I"} : ScriptStep{StepKind::Delete, site, "D"});
    return s;
}

}  // namespace

TEST_CASE("rule catalog") {
    CHECK(enumerate_fully_defined(2).size() == 2);
    CHECK(enumerate_fully_defined(3).size() == 5);
    CHECK(enumerate_fully_defined(4).size() == 15);
    auto cat = rule_catalog();
    REQUIRE(cat.size() == 7);
    CHECK(digit_rows(cat[0].word) == std::vector<std::string>{"10", "01"});
    CHECK(digit_rows(cat[1].word) == std::vector<std::string>{"11", "11"});
    CHECK(digit_rows(cat[2].word) == std::vector<std::string>{"111", "111", "111"});
    CHECK(digit_rows(cat[3].word) == std::vector<std::string>{"110", "110", "001"});
    CHECK(digit_rows(cat[4].word) == std::vector<std::string>{"100", "011", "011"});
    CHECK(digit_rows(cat[5].word) == std::vector<std::string>{"101", "010", "101"});
    CHECK(digit_rows(cat[6].word) == std::vector<std::string>{"100", "010", "001"});
    auto all = all_simple_schemes();
    CHECK(all.size() == 20);
    std::set<std::string> names;
    for (auto& s : all) names.insert(s.name());
    CHECK(names.size() == 20);
    CHECK_THROWS_AS(SimpleScheme::make("aa", "aa"), Error);
}

TEST_CASE("classification") {
    auto c1 = classify(SimpleScheme::make("aaa", "aa"));
    CHECK(c1.kind == SchemeCase::AllEqual);
    CHECK_FALSE(c1.bound_k);
    auto c2 = classify(SimpleScheme::make("aaa", "ab"));
    CHECK(c2.kind == SchemeCase::NoEqualInD);
    CHECK(c2.bound_k == 4);
    auto c3 = classify(SimpleScheme::make("aa", "aab"));
    CHECK(c3.kind == SchemeCase::MixedD);
    CHECK(c3.bound_k == 3);
    auto c4 = classify(SimpleScheme::make("ab", "aaa"));
    CHECK(c4.kind == SchemeCase::AllEqualD);
    CHECK(c4.bound_k == 2);
    std::size_t all_equal = 0;
    for (auto& s : all_simple_schemes()) {
        auto c = classify(s);
        all_equal += c.kind == SchemeCase::AllEqual;
        if (c.has_inequality()) CHECK(*c.bound_k <= 4);
    }
    CHECK(all_equal == 2);
}

TEST_CASE("single-symbol scripts") {
    CHECK(epsilon_script(SimpleScheme::make("aaa", "aa")) == parse({{'i', 1}, {'d', 3}, {'d', 1}}));
    CHECK(epsilon_script(SimpleScheme::make("aba", "ab")) == parse({{'i', 0}, {'d', 1}, {'d', 1}}));
    CHECK(epsilon_script(SimpleScheme::make("abc", "aa")) ==
          parse({{'i', 0}, {'i', 2}, {'i', 2}, {'d', 8}, {'d', 2}, {'d', 5}, {'d', 3}, {'d', 1}}));
    CHECK_THROWS_AS(epsilon_script(SimpleScheme::make("aa", "aaa")), Error);
    for (auto& s : all_simple_schemes()) {
        Scheme sc = s.as_scheme();
        if (s.family == Family::I3D2) {
            CHECK(replay(epsilon_script(s), from_string("a"), sc).final_word().empty());
        } else {
            Trace t = replay(append_isolated_script(s), RelationalWord{}, sc);
            CHECK(t.final_word().size() == 1);
        }
    }
}

TEST_CASE("delete_word reaches the empty word") {
    std::mt19937 rng(41);
    for (auto& s : all_simple_schemes()) {
        CHECK(delete_word(s, RelationalWord{}).steps.empty());
        for (int t = 0; t < 10; ++t) {
            RelationalWord w = oracle::random_word(rng, 4);
            Trace tr = delete_word(s, w);
            CHECK(tr.final_word().empty());
            Trace again = replay(script_of(tr), w, s.as_scheme());
            CHECK(again.final_word().empty());
        }
    }
}

TEST_CASE("deleting one position leaves the others untouched") {
    std::mt19937 rng(43);
    for (auto& s : all_simple_schemes()) {
        for (int t = 0; t < 10; ++t) {
            RelationalWord w = oracle::random_word(rng, 5);
            if (w.empty()) continue;
            std::size_t p = std::uniform_int_distribution<std::size_t>(1, w.size())(rng);
            Trace tr = replay(delete_position_script(s, p), w, s.as_scheme());
            std::vector<std::size_t> keep;
            for (std::size_t i = 1; i <= w.size(); ++i)
                if (i != p) keep.push_back(i);
            CHECK(tr.final_word() == induced(w, keep));
        }
    }
}

TEST_CASE("all-equal schemes") {
    for (auto& s : all_simple_schemes()) {
        if (classify(s).kind != SchemeCase::AllEqual) continue;
        for (std::size_t n = 0; n <= 5; ++n) {
            Trace t = all_equal_witness(s, n);
            CHECK(t.start.empty());
            CHECK(t.final_word() == from_string(std::string(n, 'a')));
        }
        Verdict yes = decide_membership(s, from_string("aaaa"));
        CHECK(yes.member == Membership::Yes);
        REQUIRE(yes.witness);
        CHECK(replay(script_of(*yes.witness), RelationalWord{}, s.as_scheme()).final_word() == from_string("aaaa"));
        Verdict no = decide_membership(s, from_string("ab"));
        CHECK(no.member == Membership::No);
        CHECK(no.states == 0);
        FdlResult f = compute_fdl(s);
        CHECK(f.symbolic_all_equal);
        for (auto& e : f.entries) CHECK((e.verdict.member == Membership::Yes) == (e.word.class_count() <= 1));
    }
}

TEST_CASE("membership with inequalities") {
    SimpleScheme s = SimpleScheme::make("aaa", "ab");
    Verdict five = decide_membership(s, from_string("abcde"));
    CHECK(five.member == Membership::No);
    CHECK(five.states == 0);
    CHECK_THROWS_AS(decide_membership(s, from_matrix({{1, 2}, {2, 1}})), Error);
    Verdict a = decide_membership(s, from_string("a"));
    CHECK(a.member == Membership::Yes);
    REQUIRE(a.witness);
    CHECK(a.witness->final_word() == from_string("a"));
    Verdict again = decide_membership(s, from_string("a"));
    CHECK(script_of(*again.witness) == script_of(*a.witness));
}

TEST_CASE("fully defined languages") {
    SimpleScheme s = SimpleScheme::make("aaa", "ab");
    Budget b;
    b.max_depth = 6;
    FdlResult f = compute_fdl(s, b);
    CHECK(f.entries.size() == 24);
    CHECK(f.entries.front().word.empty());
    CHECK(f.entries.front().verdict.member == Membership::Yes);
    for (auto& e : f.entries)
        if (e.verdict.member == Membership::Yes) {
            REQUIRE(e.verdict.witness);
            CHECK(e.verdict.witness->start.empty());
            CHECK(e.verdict.witness->final_word() == e.word);
        }
    for (auto& sc : all_simple_schemes()) {
        Budget small;
        small.max_depth = 2;
        CHECK(decide_membership(sc, RelationalWord{}, small).member == Membership::Yes);
    }
    CHECK(decide_membership(SimpleScheme::make("aaa", "aa"), from_string("ab")).member == Membership::No);
}

TEST_CASE("scattered subwords of reachable words are members") {
    for (auto& s : all_simple_schemes()) {
        auto c = classify(s);
        if (!c.has_inequality()) continue;
        Scheme sc = s.as_scheme();
        std::vector<RelationalWord> level{RelationalWord{}};
        std::set<std::string> checked;
        for (int d = 0; d < 2; ++d) {
            std::vector<RelationalWord> next;
            for (auto& w : level)
                for (auto& st : step_all(w, sc)) next.push_back(st.result);
            level = next;
        }
        Budget b;
        b.max_depth = 4;
        for (auto& w : level) {
            for (std::size_t n = 1; n <= std::min<std::size_t>(*c.bound_k, w.size()); ++n)
                for (auto& v : enumerate_fully_defined(n)) {
                    if (checked.count(canonical_key(v)) || !exists_scattered_subword(v, w)) continue;
                    checked.insert(canonical_key(v));
                    Verdict r = decide_membership(s, v, b);
                    CHECK(r.member == Membership::Yes);
                }
        }
    }
}

TEST_CASE("bound certification") {
    BoundReport zero = certify_bounds(SimpleScheme::make("aaa", "ab"), 0);
    CHECK(zero.per_depth.size() == 1);
    CHECK(zero.max_fd == 0);
    CHECK(zero.ok());
    BoundReport r = certify_bounds(SimpleScheme::make("aaa", "ab"), 3);
    CHECK(r.ok());
    CHECK(r.max_fd <= 4);
    CHECK(r.steps_checked > 0);
}
