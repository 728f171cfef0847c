#include "relword/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "relword/decider.hpp"
#include "relword/io.hpp"
#include "relword/universality.hpp"

namespace relword::cli {

namespace {

constexpr int kUsage = 64;

using nlohmann::json;

struct SchemeOpts {
    std::string scheme_file, ins, del;

    void add(CLI::App* sub) {
        sub->add_option("--scheme", scheme_file, "scheme file");
        sub->add_option("--ins", ins, "insertion rule letters");
        sub->add_option("--del", del, "deletion rule letters");
    }

    System system() const {
        if (!scheme_file.empty()) return io::load_scheme(scheme_file);
        if (ins.empty() && del.empty()) throw CLI::ValidationError("a scheme is required (--scheme or --ins/--del)");
        System s;
        if (!ins.empty()) s.scheme.add(make_rule("I", StepKind::Insert, io::parse_literal(ins)));
        if (!del.empty()) s.scheme.add(make_rule("D", StepKind::Delete, io::parse_literal(del)));
        return s;
    }

    SimpleScheme simple() const {
        System s = system();
        if (s.scheme.ins().size() != 1 || s.scheme.del().size() != 1)
            throw Error(Errc::NotSimple, "exactly one insertion and one deletion rule are required");
        return SimpleScheme::make(s.scheme.ins()[0].body, s.scheme.del()[0].body);
    }
};

struct BudgetOpts {
    Budget b = default_budget();
    void add(CLI::App* sub) {
        sub->add_option("--max-depth", b.max_depth, "search depth bound")->capture_default_str();
        sub->add_option("--max-len", b.max_len, "intermediate word length bound")->capture_default_str();
    }
};

std::string letters_or_matrix(const RelationalWord& w) {
    if (w.empty()) return "ε";
    if (!w.fully_defined()) return "";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s.push_back(char('a' + w.class_of(i)));
    return s;
}

void print_trace(std::ostream& out, const Trace& t, const Scheme& sc, bool highlight) {
    auto window_for = [&](std::size_t i) -> std::optional<io::Window> {
        if (!highlight || i >= t.steps.size() || t.steps[i].kind != StepKind::Delete) return std::nullopt;
        const Rule* r = sc.find(t.steps[i].rule_id);
        return io::Window{t.steps[i].site, r ? r->body.size() : 0};
    };
    out << io::render_matrix(t.start, window_for(0));
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        out << "=> " << kind_name(s.kind) << "@" << s.site << " " << s.rule_id << "\n";
        out << io::render_matrix(s.result, window_for(i + 1));
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"relational word toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON reports");

    std::string word_arg, file_arg, alphabet, rule_lit, window_arg, start_arg = "word:a", system_file, source;
    std::size_t site = 0, size = 0, K = 0, depth = 2, gap = 0;
    bool dot = false, count = false, binomial_formula = false, raw = false, highlight = false;
    SchemeOpts so;
    BudgetOpts bo;

    auto* validate = app.add_subcommand("validate", "validate a word file and echo its matrix");
    validate->add_option("word", word_arg)->required();

    auto* show = app.add_subcommand("show", "print a word as a matrix or DOT graph");
    show->add_option("word", word_arg)->required();
    show->add_flag("--dot", dot);
    show->add_option("--window", window_arg, "k:m separators");

    auto* lang = app.add_subcommand("lang", "language of a word over a finite alphabet");
    lang->add_option("word", word_arg)->required();
    lang->add_option("--alphabet", alphabet);
    lang->add_option("--size", size, "alphabet size for --count");
    lang->add_flag("--count", count);
    lang->add_flag("--binomial-formula", binomial_formula, "binomial class count instead of the exact one");

    auto* stats = app.add_subcommand("stats", "numerical characteristics");
    stats->add_option("word", word_arg)->required();

    auto* ins = app.add_subcommand("insert", "single insertion");
    ins->add_option("word", word_arg)->required();
    ins->add_option("--rule", rule_lit)->required();
    ins->add_option("--at", site, "gap 0..|W|")->required();

    auto* del = app.add_subcommand("delete", "single deletion (lists sites without --at)");
    del->add_option("word", word_arg)->required();
    del->add_option("--rule", rule_lit)->required();
    auto* del_at = del->add_option("--at", site, "1-based window start");
    del->add_option("--window", window_arg);

    auto* step = app.add_subcommand("step", "all single-step successors");
    step->add_option("word", word_arg)->required();
    step->add_flag("--raw", raw, "keep every (rule, site) pair");
    so.add(step);

    auto* replay_cmd = app.add_subcommand("replay", "replay a script");
    replay_cmd->add_option("script", file_arg)->required();
    replay_cmd->add_option("--start", start_arg)->capture_default_str();
    replay_cmd->add_flag("--highlight", highlight, "frame each deletion window");
    so.add(replay_cmd);

    auto* norm = app.add_subcommand("normalize", "reorder a script so insertions come first");
    norm->add_option("script", file_arg)->required();
    norm->add_option("--start", start_arg)->capture_default_str();
    so.add(norm);

    auto* decide = app.add_subcommand("decide", "membership for a simple scheme");
    decide->add_option("word", word_arg)->required();
    so.add(decide);
    bo.add(decide);

    auto* fdl = app.add_subcommand("fdl", "fully defined language of a simple scheme");
    so.add(fdl);
    bo.add(fdl);

    std::size_t cert_depth = 6;
    auto* certify = app.add_subcommand("certify", "check maxFD bounds and step recurrences by search");
    so.add(certify);
    certify->add_option("--depth", cert_depth)->capture_default_str();

    auto* dte = app.add_subcommand("delete-to-empty", "derivation from a word to the empty word");
    dte->add_option("word", word_arg)->required();
    so.add(dte);

    auto* enc = app.add_subcommand("encode", "encode a string system or a string");
    enc->add_option("system", system_file)->required();
    enc->add_option("--K", K, "padding parameter (default |alphabet|+3)");
    enc->add_option("--string", source);

    auto* dec = app.add_subcommand("decode", "decode a canonical word");
    dec->add_option("word", word_arg)->required();
    dec->add_option("--system", system_file)->required();
    dec->add_option("--K", K);

    auto* cmp = app.add_subcommand("compare", "compare string and encoded languages by depth");
    cmp->add_option("system", system_file)->required();
    cmp->add_option("--K", K);
    cmp->add_option("--depth", depth)->capture_default_str();

    std::size_t probe_depth = 4;
    auto* probe = app.add_subcommand("probe", "search for a canonical repair of a broken encoding");
    probe->add_option("system", system_file)->required();
    probe->add_option("--K", K);
    probe->add_option("--depth", probe_depth)->capture_default_str();
    auto* probe_gap = probe->add_option("--gap", gap, "gap in the first axiom for the first insertion rule");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    }

    auto default_K = [&](const StringInsDelSystem& s) { return K ? K : s.alphabet.size() + 3; };

    try {
        if (validate->parsed()) {
            RelationalWord w;
            try {
                w = io::word_argument(word_arg);
            } catch (const Error& e) {
                if (as_json) out << json{{"valid", false}, {"error", e.what()}}.dump() << "\n";
                else out << "invalid: " << e.what() << "\n";
                return 1;
            }
            if (as_json) out << json{{"valid", true}, {"length", w.size()}, {"rows", io::to_json(w)}}.dump() << "\n";
            else out << io::render_matrix(w);
            return 0;
        }
        if (show->parsed()) {
            RelationalWord w = io::word_argument(word_arg);
            if (dot) out << io::render_dot(w);
            else if (as_json) out << io::to_json(w).dump() << "\n";
            else out << io::render_matrix(w, window_arg.empty() ? std::nullopt : io::parse_window(window_arg));
            return 0;
        }
        if (lang->parsed()) {
            RelationalWord w = io::word_argument(word_arg);
            if (count || binomial_formula) {
                std::size_t s = size ? size : alphabet.size();
                std::uint64_t c = count_language(w, s, CountOptions{20, binomial_formula});
                if (as_json) out << json{{"alphabet_size", s}, {"count", c}, {"binomial_formula", binomial_formula}}.dump() << "\n";
                else out << c << "\n";
                return 0;
            }
            auto l = enumerate_language(w, alphabet);
            if (as_json) out << json(l).dump() << "\n";
            else
                for (auto& s : l) out << (s.empty() ? "ε" : s) << "\n";
            return 0;
        }
        if (stats->parsed()) {
            RelationalWord w = io::word_argument(word_arg);
            json j = {{"length", w.size()},        {"classes", w.class_count()}, {"fully_defined", w.fully_defined()},
                      {"maxE", max_e(w)},          {"maxFD", max_fd(w)},         {"maxN", max_n(w)}};
            if (as_json) out << j.dump() << "\n";
            else
                for (auto& [k, v] : j.items()) out << k << ": " << v.dump() << "\n";
            return 0;
        }
        if (ins->parsed()) {
            RelationalWord w = io::word_argument(word_arg);
            RelationalWord r = insert_at(w, make_rule("Y", StepKind::Insert, io::parse_literal(rule_lit)), site);
            out << (as_json ? io::to_json(r).dump() + "\n" : io::render_matrix(r));
            return 0;
        }
        if (del->parsed()) {
            RelationalWord w = io::word_argument(word_arg);
            Rule r = make_rule("Y", StepKind::Delete, io::parse_literal(rule_lit));
            if (del_at->count() == 0) {
                auto sites = deletion_sites(w, r);
                if (as_json) out << json(sites).dump() << "\n";
                else
                    for (auto k : sites) out << k << "\n";
                return sites.empty() ? 1 : 0;
            }
            RelationalWord v = delete_at(w, r, site);
            out << (as_json ? io::to_json(v).dump() + "\n" : io::render_matrix(v));
            return 0;
        }
        if (step->parsed()) {
            RelationalWord w = io::word_argument(word_arg);
            System sys = so.system();
            auto steps = step_all(w, sys.scheme, raw);
            if (as_json) {
                json arr = json::array();
                for (auto& s : steps)
                    arr.push_back({{"kind", kind_name(s.kind)}, {"rule_id", s.rule_id}, {"site", s.site},
                                   {"result", io::to_json(s.result)}});
                out << arr.dump() << "\n";
            } else {
                for (auto& s : steps)
                    out << kind_name(s.kind) << "@" << s.site << " " << s.rule_id << "\n" << io::render_matrix(s.result) << "\n";
            }
            return 0;
        }
        if (replay_cmd->parsed() || norm->parsed()) {
            System sys = so.system();
            Script script = io::parse_script(io::read_file(file_arg));
            Trace t = replay(script, io::word_argument(start_arg), sys.scheme);
            if (norm->parsed()) {
                t = normalize_ins_first(t, sys.scheme);
                if (as_json) {
                    out << io::to_json(t).dump() << "\n";
                } else {
                    out << io::render_script(script_of(t));
                    out << "final:\n" << io::render_matrix(t.final_word());
                }
                return 0;
            }
            if (as_json) out << io::to_json(t).dump() << "\n";
            else print_trace(out, t, sys.scheme, highlight);
            return 0;
        }
        if (decide->parsed()) {
            SimpleScheme s = so.simple();
            Verdict v = decide_membership(s, io::word_argument(word_arg), bo.b);
            if (as_json) {
                json j = io::to_json(v);
                j["scheme"] = s.name();
                j["case"] = case_name(classify(s).kind);
                out << j.dump() << "\n";
            } else {
                out << membership_name(v.member) << ": " << v.reason << "\n";
                if (v.witness) out << io::render_script(script_of(*v.witness));
            }
            return v.member == Membership::Yes ? 0 : v.member == Membership::No ? 1 : 2;
        }
        if (fdl->parsed()) {
            SimpleScheme s = so.simple();
            FdlResult r = compute_fdl(s, bo.b);
            if (as_json) {
                json entries = json::array();
                for (auto& e : r.entries)
                    entries.push_back({{"word", letters_or_matrix(e.word)},
                                       {"member", membership_name(e.verdict.member)},
                                       {"reason", e.verdict.reason}});
                out << json{{"scheme", s.name()},
                            {"case", case_name(classify(s).kind)},
                            {"all_equal_words", r.symbolic_all_equal},
                            {"complete", r.complete},
                            {"candidates", entries}}
                           .dump()
                    << "\n";
            } else {
                if (r.symbolic_all_equal) out << "all-equal words of every length\n";
                for (auto& e : r.entries)
                    out << letters_or_matrix(e.word) << " " << membership_name(e.verdict.member) << "\n";
                out << (r.complete ? "complete" : "incomplete") << "\n";
            }
            return r.complete ? 0 : 2;
        }
        if (certify->parsed()) {
            SimpleScheme s = so.simple();
            BoundReport r = certify_bounds(s, cert_depth);
            if (as_json) {
                json j = io::to_json(r);
                j["scheme"] = s.name();
                out << j.dump() << "\n";
            } else {
                out << s.name() << " " << case_name(r.cls.kind);
                if (r.cls.bound_k) out << " bound " << *r.cls.bound_k;
                out << "\n";
                for (auto& d : r.per_depth)
                    out << "depth " << d.depth << ": " << d.states << " new, maxFD " << d.max_fd << ", maxE " << d.max_e << "\n";
                out << "steps checked: " << r.steps_checked << "\n";
                for (auto& v : r.violations) out << "violation: " << v << "\n";
                out << (r.ok() ? "ok" : "violated") << "\n";
            }
            return r.ok() ? 0 : 1;
        }
        if (dte->parsed()) {
            SimpleScheme s = so.simple();
            Trace t = delete_word(s, io::word_argument(word_arg));
            if (as_json) out << io::to_json(t).dump() << "\n";
            else out << io::render_script(script_of(t)) << "final: " << (t.final_word().empty() ? "ε" : "nonempty") << "\n";
            return t.final_word().empty() ? 0 : 1;
        }
        if (enc->parsed()) {
            StringInsDelSystem s = io::load_string_system(system_file);
            CodeMorphism m(s.alphabet, default_K(s));
            if (!source.empty() || enc->count("--string")) {
                std::string e = m.encode(source == "_" ? "" : source);
                if (as_json) out << json{{"K", m.K()}, {"source", source}, {"encoded", e}}.dump() << "\n";
                else out << (e.empty() ? "ε" : e) << "\n";
                return 0;
            }
            Encoding en = encode(s, m.K());
            if (as_json) {
                json rules = json::array();
                for (auto* v : {&en.system.scheme.ins(), &en.system.scheme.del()})
                    for (auto& r : *v) rules.push_back({{"id", r.id}, {"kind", kind_name(r.kind)}, {"length", r.body.size()}});
                out << json{{"K", m.K()}, {"rules", rules}, {"axioms", en.system.axioms.size()}}.dump() << "\n";
            } else {
                out << io::render_scheme(en.system);
            }
            return 0;
        }
        if (dec->parsed()) {
            StringInsDelSystem s = io::load_string_system(system_file);
            CodeMorphism m(s.alphabet, default_K(s));
            auto d = decode(io::word_argument(word_arg), m, s.terminals);
            if (as_json) out << json{{"canonical", d.has_value()}, {"decoded", d ? json(*d) : json(nullptr)}}.dump() << "\n";
            else out << (d ? (d->empty() ? "ε" : *d) : "not canonical over terminals") << "\n";
            return d ? 0 : 1;
        }
        if (cmp->parsed()) {
            StringInsDelSystem s = io::load_string_system(system_file);
            LanguageComparison r = compare_languages(s, default_K(s), depth);
            json arr = json::array();
            for (auto& d : r.per_depth) {
                arr.push_back({{"depth", d.depth}, {"strings", d.strings}, {"decoded", d.decoded},
                               {"relational_states", d.relational_states}, {"canonical_states", d.canonical_states},
                               {"stray", d.stray}, {"equal", d.equal()}});
                if (!as_json)
                    out << "depth " << d.depth << ": strings " << d.strings.size() << ", decoded " << d.decoded.size()
                        << ", relational " << d.relational_states << ", canonical " << d.canonical_states << " -> "
                        << (d.equal() ? "equal" : "MISMATCH") << "\n";
            }
            if (as_json) out << json{{"per_depth", arr}, {"equal", r.equal()}}.dump() << "\n";
            return r.equal() ? 0 : 1;
        }
        if (probe->parsed()) {
            StringInsDelSystem s = io::load_string_system(system_file);
            Encoding en = encode(s, default_K(s));
            if (en.system.axioms.empty() || en.system.scheme.ins().empty())
                throw Error(Errc::Parse, "probe needs an axiom and an insertion rule");
            const RelationalWord& ax = en.system.axioms.front();
            std::size_t g = probe_gap->count() ? gap : ax.size() / 2;
            RelationalWord broken = insert_at(ax, en.system.scheme.ins().front(), g);
            ProbeReport r = repair_probe(en, broken, {ax}, ProbeBudget{probe_depth});
            json j = {{"gap", g},
                      {"already_canonical", r.already_canonical},
                      {"repair_found", r.repair_found},
                      {"complete", r.complete},
                      {"insertion_words", r.insertion_words},
                      {"deletion_words", r.deletion_words},
                      {"pruned", r.pruned},
                      {"initial_patterns", r.initial_patterns},
                      {"min_patterns", r.min_patterns},
                      {"pattern_decreases", r.pattern_decreases},
                      {"returned_to_ancestor", r.returned}};
            if (r.repair) j["repair"] = io::render_script(script_of(*r.repair));
            if (as_json) out << j.dump() << "\n";
            else
                for (auto& [k, v] : j.items()) out << k << ": " << v.dump() << "\n";
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}

}  // namespace relword::cli
