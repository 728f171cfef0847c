#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>

#include "../oracles.hpp"
#include "relword/decider.hpp"
#include "relword/engine.hpp"
#include "relword/io.hpp"
#include "relword/universality.hpp"

using namespace relword;

namespace {

const std::string data_dir = RELWORD_DATA_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
    if (!ok) ++failures;
}

template <class F>
bool guarded(const std::string& id, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
        return false;
    }
}

bool valid_word(const RelationalWord& w) { return oracle::valid(oracle::matrix_of(w)); }

// 1. Ten single-position derivations against the printed matrices.
void ac1() {
    constexpr double limit_s = 1.0;
    guarded("AC1", [&] {
        auto t0 = Clock::now();
        std::size_t matched = 0;
        std::string bad;
        for (int c = 1; c <= 10; ++c) {
            char name[16];
            std::snprintf(name, sizeof name, "case%02d", c);
            std::string base = data_dir + "/appendix/" + name;
            System sys = io::load_scheme(base + ".scheme");
            Script script = io::parse_script(io::read_file(base + ".script"));
            auto expected = io::parse_matrix_blocks(io::read_file(base + ".expected"));
            Trace t = replay(script, from_string("a"), sys.scheme);
            std::vector<std::vector<std::string>> got{digit_rows(t.start)};
            for (auto& s : t.steps) got.push_back(digit_rows(s.result));
            bool ok = t.final_word().empty() && got.size() == expected.size();
            std::size_t first_diff = 0;
            for (std::size_t i = 0; ok && i < got.size(); ++i)
                if (got[i] != expected[i]) {
                    ok = false;
                    first_diff = i;
                }
            if (ok) {
                ++matched;
            } else {
                bad += std::string(bad.empty() ? "" : ", ") + name;
                if (first_diff) bad += " (matrix " + std::to_string(first_diff) + ")";
                if (!t.final_word().empty()) bad += " (no ε)";
            }
        }
        double s = seconds_since(t0);
        report("AC1", matched == 10 && s < limit_s,
               std::to_string(matched) + "/10 cases match cell-for-cell" + (bad.empty() ? "" : "; mismatched: " + bad) +
                   "; " + std::to_string(s) + " s (limit 1 s)");
        return true;
    });
}

// 2. Language of the four-position example.
void ac2() {
    guarded("AC2", [&] {
        RelationalWord w = io::load_word(data_dir + "/words/four.rw");
        std::set<std::string> three = {"abaa", "abab", "abac", "baba", "babb", "babc", "acaa", "acab", "acac",
                                       "caca", "cacb", "cacc", "bcba", "bcbb", "bcbc", "cbca", "cbcb", "cbcc"};
        auto m = oracle::matrix_of(w);
        bool one = enumerate_language(w, "a").empty() && oracle::language(m, "a").empty();
        auto l2 = enumerate_language(w, "ab");
        bool two = l2 == oracle::language(m, "ab") && l2.size() == 4;
        bool thr = enumerate_language(w, "abc") == three && oracle::language(m, "abc") == three;
        report("AC2", one && two && thr,
               std::string("1 letter ") + (one ? "empty" : "nonempty") + ", 2 letters " + std::to_string(l2.size()) +
                   " strings, 3 letters " + (thr ? "equal to the printed 18" : "differs from the printed 18"));
        return true;
    });
}

std::size_t brute_fully_defined(std::size_t n) {
    // Valid all-defined digit matrices by exhaustive generation.
    std::size_t pairs = n * (n - 1) / 2, count = 0;
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
        oracle::Matrix m(n, std::vector<int>(n, 1));
        std::size_t b = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++b) m[i][j] = m[j][i] = (mask >> b) & 1;
        count += oracle::valid(m);
    }
    return count;
}

// 3. Catalog sizes.
void ac3() {
    guarded("AC3", [&] {
        std::size_t c2 = enumerate_fully_defined(2).size(), c3 = enumerate_fully_defined(3).size(),
                    c4 = enumerate_fully_defined(4).size();
        bool oracle_ok = brute_fully_defined(2) == c2 && brute_fully_defined(3) == c3 && brute_fully_defined(4) == c4;
        auto schemes = all_simple_schemes();
        std::set<std::string> names;
        std::size_t i3 = 0;
        for (auto& s : schemes) {
            names.insert(s.name());
            i3 += s.family == Family::I3D2;
        }
        bool ok = c2 == 2 && c3 == 5 && c4 == 15 && oracle_ok && schemes.size() == 20 && names.size() == 20 && i3 == 10;
        report("AC3", ok,
               "fully defined counts " + std::to_string(c2) + "/" + std::to_string(c3) + "/" + std::to_string(c4) +
                   (oracle_ok ? " (oracle agrees)" : " (oracle disagrees)") + ", " + std::to_string(names.size()) +
                   " distinct simple schemes");
        return true;
    });
}

Trace random_trace(std::mt19937& rng, const SimpleScheme& s, std::size_t max_steps) {
    Scheme sc = s.as_scheme();
    Trace t{oracle::random_word(rng, 4), {}};
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_steps)(rng);
    for (std::size_t i = 0; i < n; ++i) {
        auto succ = step_all(t.final_word(), sc, true);
        if (succ.empty()) break;
        t.steps.push_back(succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)]);
    }
    return t;
}

// 4. Insertions-first normal form.
void ac4() {
    constexpr double limit_s = 30.0;
    guarded("AC4", [&] {
        auto t0 = Clock::now();
        std::mt19937 rng(2024);
        auto schemes = all_simple_schemes();
        std::size_t pass = 0, with_swap = 0;
        for (int t = 0; t < 1000; ++t) {
            const SimpleScheme& s = schemes[std::uniform_int_distribution<std::size_t>(0, schemes.size() - 1)(rng)];
            Trace tr = random_trace(rng, s, 6);
            with_swap += !tr.ins_first();
            Trace n = normalize_ins_first(tr, s.as_scheme());
            Trace again = replay(script_of(n), tr.start, s.as_scheme());
            pass += n.ins_first() && n.final_word() == tr.final_word() && again.final_word() == tr.final_word() &&
                    n.start == tr.start;
        }
        double sec = seconds_since(t0);
        report("AC4", pass == 1000 && sec < limit_s,
               std::to_string(pass) + "/1000 traces normalized (" + std::to_string(with_swap) +
                   " needed reordering); " + std::to_string(sec) + " s (limit 30 s)");
        return true;
    });
}

// 5. Every word deletes to ε.
void ac5() {
    constexpr double limit_s = 30.0;
    guarded("AC5", [&] {
        auto t0 = Clock::now();
        std::mt19937 rng(77);
        std::size_t pass = 0, total = 0;
        for (auto& s : all_simple_schemes()) {
            Scheme sc = s.as_scheme();
            for (int i = 0; i < 50; ++i, ++total) {
                RelationalWord w = oracle::random_word(rng, 4);
                Trace t = delete_word(s, w);
                Trace again = replay(script_of(t), w, sc);
                bool ok = t.final_word().empty() && again.final_word().empty() && valid_word(t.start);
                for (auto& st : again.steps) ok = ok && valid_word(st.result);
                pass += ok;
            }
        }
        double sec = seconds_since(t0);
        report("AC5", pass == total && sec < limit_s,
               std::to_string(pass) + "/" + std::to_string(total) + " words reach ε; " + std::to_string(sec) +
                   " s (limit 30 s)");
        return true;
    });
}

// 6. All-equal schemes.
void ac6() {
    guarded("AC6", [&] {
        constexpr std::size_t depth = 8;
        bool ok = true;
        std::string detail;
        for (auto& s : all_simple_schemes()) {
            if (classify(s).kind != SchemeCase::AllEqual) continue;
            Scheme sc = s.as_scheme();
            bool wit = true;
            for (std::size_t n = 1; n <= 5; ++n) {
                Trace t = all_equal_witness(s, n);
                Trace again = replay(script_of(t), RelationalWord{}, sc);
                wit = wit && again.final_word() == from_string(std::string(n, 'a'));
            }
            std::set<std::string> seen{canonical_key(RelationalWord{})};
            std::vector<RelationalWord> frontier{RelationalWord{}};
            std::size_t bad = 0;
            for (std::size_t d = 0; d < depth; ++d) {
                std::vector<RelationalWord> next;
                for (auto& w : frontier)
                    for (auto& st : step_all(w, sc))
                        if (seen.insert(canonical_key(st.result)).second) {
                            bad += st.result.fully_defined() && st.result.class_count() > 1;
                            next.push_back(std::move(st.result));
                        }
                frontier = std::move(next);
            }
            ok = ok && wit && bad == 0;
            detail += (detail.empty() ? "" : "; ") + s.name() + ": witnesses " + (wit ? "ok" : "FAILED") + ", " +
                      std::to_string(seen.size()) + " words to depth 8, " + std::to_string(bad) +
                      " fully defined with an inequality";
        }
        report("AC6", ok, detail);
        return true;
    });
}

// 7. maxFD bounds and per-step recurrences.
void ac7() {
    constexpr double limit_s = 60.0;
    guarded("AC7", [&] {
        auto t0 = Clock::now();
        bool ok = true;
        std::size_t checked = 0, schemes = 0;
        std::string bad;
        for (auto& s : all_simple_schemes()) {
            SchemeClass c = classify(s);
            if (!c.has_inequality()) continue;
            ++schemes;
            BoundReport r = certify_bounds(s, 6);
            std::size_t limit = c.kind == SchemeCase::NoEqualInD ? 4 : 3;
            bool good = r.ok() && r.max_fd <= limit;
            checked += r.steps_checked;
            if (!good) {
                bad += (bad.empty() ? "" : "; ") + s.name() + " maxFD " + std::to_string(r.max_fd) + " limit " +
                       std::to_string(limit) + (r.violations.empty() ? "" : ", first violation: " + r.violations.front());
            }
            ok = ok && good;
        }
        double sec = seconds_since(t0);
        report("AC7", ok && sec < limit_s,
               std::to_string(schemes) + " schemes, " + std::to_string(checked) + " steps checked" +
                   (bad.empty() ? "" : "; " + bad) + "; " + std::to_string(sec) + " s (limit 60 s)");
        return true;
    });
}

// 8. Deleting what was just inserted.
void ac8() {
    guarded("AC8", [&] {
        std::mt19937 rng(88);
        std::size_t pass = 0;
        for (int t = 0; t < 10000; ++t) {
            RelationalWord w = oracle::random_word(rng, 8);
            RelationalWord y =
                oracle::random_fully_defined(rng, std::uniform_int_distribution<std::size_t>(1, 4)(rng), 4);
            std::size_t k = std::uniform_int_distribution<std::size_t>(0, w.size())(rng);
            pass += delete_at(insert_at(w, y, k), y, k + 1) == w;
        }
        report("AC8", pass == 10000, std::to_string(pass) + "/10000 round trips");
        return true;
    });
}

// 9. Encoding of the toy string system.
void ac9() {
    constexpr double limit_s = 60.0;
    guarded("AC9", [&] {
        auto t0 = Clock::now();
        StringInsDelSystem sys = io::load_string_system(data_dir + "/systems/toy.sys");
        constexpr std::size_t K = 4;
        LanguageComparison cmp = compare_languages(sys, K, 2);
        CodeMorphism m(sys.alphabet, K);
        std::mt19937 rng(99);
        std::size_t rt = 0;
        for (int t = 0; t < 1000; ++t) {
            std::size_t n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
            std::string s;
            for (std::size_t i = 0; i < n; ++i)
                s.push_back(sys.alphabet[std::uniform_int_distribution<std::size_t>(0, sys.alphabet.size() - 1)(rng)]);
            rt += decode(m.word(s), m) == s;
        }
        Encoding enc = encode(sys, K);
        const RelationalWord& ax = enc.system.axioms.front();
        RelationalWord broken = insert_at(ax, enc.system.scheme.ins().front(), ax.size() / 2);
        ProbeReport p = repair_probe(enc, broken, {ax}, ProbeBudget{4});
        double sec = seconds_since(t0);
        std::string per;
        for (auto& d : cmp.per_depth)
            per += " d" + std::to_string(d.depth) + ":" + std::to_string(d.strings.size()) + "/" +
                   std::to_string(d.decoded.size()) + (d.equal() ? "" : "!");
        bool probe_ok = !p.already_canonical && !p.repair_found && p.complete;
        report("AC9", cmp.equal() && rt == 1000 && probe_ok && sec < limit_s,
               "languages" + per + (cmp.equal() ? " equal" : " DIFFER") + "; " + std::to_string(rt) +
                   "/1000 decode round trips; probe: " + (p.repair_found ? "repair FOUND" : "no repair") +
                   (p.complete ? ", search complete" : ", search cut by budget") + " (" +
                   std::to_string(p.insertion_words) + " insertion words, " + std::to_string(p.deletion_words) +
 " deletion words, " +
                   std::to_string(p.returned) + " returns to the axiom); " + std::to_string(sec) + " s (limit 60 s)");
        return true;
    });
}

}  // namespace

int main() {
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
