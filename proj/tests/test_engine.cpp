#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "relword/decider.hpp"
#include "relword/engine.hpp"
#include "relword/io.hpp"

using namespace relword;

namespace {

const std::string data_dir = RELWORD_DATA_DIR;

std::vector<std::string> rows(const RelationalWord& w) { return digit_rows(w); }

Rule ins_rule(const std::string& letters) { return make_rule("Y", StepKind::Insert, from_string(letters)); }
Rule del_rule(const std::string& letters) { return make_rule("Y", StepKind::Delete, from_string(letters)); }

}  // namespace

TEST_CASE("rules must be nonempty and fully defined") {
    CHECK_THROWS_AS(make_rule("x", StepKind::Insert, RelationalWord{}), Error);
    CHECK_THROWS_AS(make_rule("x", StepKind::Insert, from_matrix({{1, 2}, {2, 1}})), Error);
    Scheme s;
    s.add(ins_rule("aa"));
    CHECK_THROWS_AS(s.add(del_rule("ab")), Error);
}

TEST_CASE("insertion into the four-position example") {
    RelationalWord w = io::load_word(data_dir + "/words/four.rw");
    RelationalWord v = insert_at(w, ins_rule("aa"), 3);
    CHECK(rows(v) == std::vector<std::string>{"101222", "010222", "101222", "222112", "222112", "222221"});
    CHECK(insert_at(RelationalWord{}, ins_rule("abc"), 0) == from_string("abc"));
    CHECK_THROWS_AS(insert_at(w, ins_rule("a"), 5), Error);
}

TEST_CASE("insertion agrees with the matrix oracle and keeps maxima") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> len(1, 3);
    for (int t = 0; t < 1000; ++t) {
        RelationalWord w = oracle::random_word(rng, 6);
        RelationalWord y = oracle::random_fully_defined(rng, std::size_t(len(rng)));
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, w.size())(rng);
        RelationalWord v = insert_at(w, y, k);
        CHECK(oracle::matrix_of(v) == oracle::insert(oracle::matrix_of(w), oracle::matrix_of(y), k));
        CHECK(max_e(v) == std::max(max_e(w), max_e(y)));
        CHECK(max_fd(v) == std::max(max_fd(w), max_fd(y)));
    }
}

TEST_CASE("deletion sites") {
    CHECK(deletion_sites(from_string("aa"), del_rule("ab")).empty());
    CHECK(deletion_sites(from_string("aba"), del_rule("aba")) == std::vector<std::size_t>{1});
    CHECK(deletion_sites(from_string("a"), del_rule("ab")).empty());
    // Two equal positions unequal to the middle one: merging them with a window would
    // make a class unequal to itself.
    RelationalWord w = from_matrix({{1, 2, 0}, {2, 1, 2}, {0, 2, 1}});
    CHECK(deletion_sites(w, del_rule("aa")) == std::vector<std::size_t>{1, 2});
    RelationalWord x = from_matrix({{1, 2, 2, 0}, {2, 1, 2, 2}, {2, 2, 1, 2}, {0, 2, 2, 1}});
    CHECK(deletion_sites(x, del_rule("aa")) == std::vector<std::size_t>{1, 2, 3});
    RelationalWord y = from_matrix({{1, 2, 0}, {2, 1, 2}, {0, 2, 1}});
    CHECK_THROWS_AS(delete_at(y, del_rule("aaa"), 1), Error);
}

TEST_CASE("deletion agrees with the fixpoint closure oracle") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> len(1, 3);
    std::size_t applied = 0;
    for (int t = 0; t < 1000; ++t) {
        RelationalWord w = oracle::random_word(rng, 7, 0.3);
        RelationalWord d = oracle::random_fully_defined(rng, std::size_t(len(rng)));
        auto sites = deletion_sites(w, d);
        std::vector<std::size_t> expect;
        for (std::size_t k = 1; k + d.size() <= w.size() + 1; ++k) {
            auto r = oracle::remove(oracle::matrix_of(w), oracle::matrix_of(d), k);
            if (!r) continue;
            expect.push_back(k);
            RelationalWord v = delete_at(w, d, k);
            CHECK(oracle::matrix_of(v) == *r);
            CHECK(oracle::valid(*r));
            ++applied;
        }
        CHECK(sites == expect);
    }
    CHECK(applied > 500);
}

TEST_CASE("deletion with expansion on the six-position example") {
    RelationalWord in = io::load_word(data_dir + "/words/six.rw");
    RelationalWord out = delete_at(in, del_rule("aa"), 3);
    CHECK(rows(out) == std::vector<std::string>{"1011", "0100", "1011", "1011"});
    // The printed result of this example is not a valid relational word.
    CHECK_THROWS_AS(from_matrix({{1, 0, 0, 1}, {0, 1, 2, 0}, {0, 2, 1, 1}, {1, 0, 1, 1}}), Error);
    // Survivors keep their defined relations.
    CHECK(out.at(1, 2) == Relation::Neq);
    CHECK(out.at(3, 4) == Relation::Eq);
}

TEST_CASE("delete undoes insert") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> len(1, 3);
    for (int t = 0; t < 2000; ++t) {
        RelationalWord w = oracle::random_word(rng, 6);
        RelationalWord y = oracle::random_fully_defined(rng, std::size_t(len(rng)));
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, w.size())(rng);
        CHECK(delete_at(insert_at(w, y, k), y, k + 1) == w);
    }
}

TEST_CASE("single-position derivation for (aaa,aa) step by step") {
    SimpleScheme s = SimpleScheme::make("aaa", "aa");
    RelationalWord v1 = insert_at(from_string("a"), s.ins, 1);
    CHECK(rows(v1) == std::vector<std::string>{"1222", "2111", "2111", "2111"});
    RelationalWord v2 = delete_at(v1, s.del, 3);
    CHECK(rows(v2) == std::vector<std::string>{"12", "21"});
    CHECK(delete_at(v2, s.del, 1).empty());
}

TEST_CASE("step_all") {
    Scheme one({ins_rule("abc")}, {});
    auto s0 = step_all(RelationalWord{}, one);
    REQUIRE(s0.size() == 1);
    CHECK(s0[0].result == from_string("abc"));
    Scheme m13({make_rule("I", StepKind::Insert, from_string("aaa"))}, {});
    CHECK(step_all(from_string("a"), m13).size() == 2);
    CHECK(step_all(from_string("a"), m13, true).size() == 2);
    // Inserting "aa" next to a fully defined "ab": both end gaps and the middle gap differ.
    Scheme aa({make_rule("I", StepKind::Insert, from_string("aa"))}, {});
    CHECK(step_all(from_string("aa"), aa, true).size() == 3);
    CHECK(step_all(from_string("aa"), aa).size() == 2);

    std::mt19937 rng(37);
    auto schemes = all_simple_schemes();
    for (int t = 0; t < 1000; ++t) {
        const SimpleScheme& s = schemes[std::uniform_int_distribution<std::size_t>(0, schemes.size() - 1)(rng)];
        RelationalWord w = oracle::random_word(rng, 5);
        auto steps = step_all(w, s.as_scheme());
        for (std::size_t i = 0; i < steps.size(); ++i) {
            CHECK(oracle::valid(oracle::matrix_of(steps[i].result)));
            if (i) CHECK(canonical_key(steps[i - 1].result) < canonical_key(steps[i].result));
        }
    }
}

TEST_CASE("replay") {
    SimpleScheme s = SimpleScheme::make("aaa", "aa");
    Trace t = replay({}, from_string("a"), s.as_scheme());
    CHECK(t.steps.empty());
    CHECK(t.final_word() == from_string("a"));
    try {
        replay({{StepKind::Insert, 0, "I"}, {StepKind::Delete, 9, "D"}}, from_string("a"), s.as_scheme());
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::StepNotApplicable);
        CHECK(e.row() == 2);
    }
    CHECK_THROWS_AS(replay({{StepKind::Insert, 0, "Q"}}, from_string("a"), s.as_scheme()), Error);
    CHECK_THROWS_AS(replay({{StepKind::Insert, 0, "D"}}, from_string("a"), s.as_scheme()), Error);
}

TEST_CASE("normal form with insertions first") {
    SimpleScheme s = SimpleScheme::make("aab", "ab");
    Scheme sc = s.as_scheme();
    Trace already = replay({{StepKind::Insert, 0, "I"}, {StepKind::Delete, 2, "D"}}, from_string("a"), sc);
    Trace same = normalize_ins_first(already, sc);
    CHECK(script_of(same) == script_of(already));

    // Delete then insert on five positions, both orders of the swap.
    RelationalWord w = from_string("abcab");
    for (std::size_t g = 0; g <= 3; ++g) {
        Trace t = replay({{StepKind::Delete, 2, "D"}, {StepKind::Insert, g, "I"}}, w, sc);
        Trace n = normalize_ins_first(t, sc);
        CHECK(n.ins_first());
        CHECK(n.steps.size() == 2);
        CHECK(n.final_word() == t.final_word());
    }
}
