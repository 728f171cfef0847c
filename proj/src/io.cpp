#include "relword/io.hpp"

#include <fstream>
#include <sstream>

namespace relword::io {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

bool is_eps(const std::string& s) { return s == "eps" || s == "ε" || s == "_"; }

std::vector<int> digit_row(const std::string& line, std::size_t lineno) {
    std::vector<int> row;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        if (c < '0' || c > '9') throw Error(Errc::Parse, std::string("unexpected '") + c + "'", lineno);
        row.push_back(c - '0');
    }
    return row;
}

std::size_t parse_size(const std::string& s, std::size_t lineno) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::Parse, "expected a number, got '" + s + "'", lineno);
    return std::stoul(s);
}

}  // namespace

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(Errc::Parse, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RelationalWord parse_word(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::vector<int>> rows;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("word:", 0) == 0) {
            if (!rows.empty()) throw Error(Errc::Parse, "mixed matrix and word lines", lineno);
            std::string lit = trim(t.substr(5));
            return is_eps(lit) || lit.empty() ? RelationalWord{} : from_string(lit);
        }
        if (is_eps(t)) {
            if (!rows.empty()) throw Error(Errc::Parse, "eps inside a matrix", lineno);
            return RelationalWord{};
        }
        rows.push_back(digit_row(t, lineno));
    }
    return from_matrix(rows);
}

RelationalWord load_word(const std::filesystem::path& p) { return parse_word(read_file(p)); }

RelationalWord word_argument(const std::string& arg) {
    if (arg.rfind("word:", 0) == 0) return parse_word(arg);
    if (is_eps(arg)) return RelationalWord{};
    return load_word(arg);
}

RelationalWord parse_literal(const std::string& lit, const std::filesystem::path& base) {
    if (is_eps(lit)) return RelationalWord{};
    if (!lit.empty() && lit[0] == '@') return load_word(base / lit.substr(1));
    return from_string(lit);
}

std::vector<std::vector<std::string>> parse_matrix_blocks(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    bool open = false;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::string t = trim(line);
        if (t.empty()) {
            if (open) out.push_back(std::move(cur));
            cur.clear();
            open = false;
            continue;
        }
        if (t[0] == '#') continue;
        open = true;
        if (is_eps(t)) continue;
        std::string row;
        for (char c : t)
            if (c != ' ' && c != '\t') row.push_back(c);
        cur.push_back(row);
    }
    if (open) out.push_back(std::move(cur));
    return out;
}

std::optional<Window> parse_window(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) return std::nullopt;
    try {
        Window w{std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
        if (w.start == 0 || w.length == 0) return std::nullopt;
        return w;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string render_matrix(const RelationalWord& w, std::optional<Window> window) {
    if (w.empty()) return "ε\n";
    std::size_t n = w.size();
    std::size_t lo = 0, hi = 0;  // window columns [lo, hi), 0-based
    if (window && window->start <= n) {
        lo = window->start - 1;
        hi = std::min(n, lo + window->length);
    }
    auto rule = [&] {
        std::string r;
        for (std::size_t j = 0; j < n; ++j) {
            if (hi > lo && (j == lo || j == hi)) r += "+-";
            r += j + 1 < n ? "--" : "-";
        }
        if (hi == n && hi > lo) r += "-+";
        return r + "\n";
    };
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (hi > lo && i == lo) out += rule();
        for (std::size_t j = 0; j < n; ++j) {
            if (hi > lo && (j == lo || j == hi)) out += "| ";
            out.push_back(to_digit(w.rel(i, j)));
            if (j + 1 < n) out.push_back(' ');
        }
        if (hi == n && hi > lo) out += " |";
        out.push_back('\n');
        if (hi > lo && i + 1 == hi) out += rule();
    }
    return out;
}

std::string render_dot(const RelationalWord& w) {
    std::string out = "graph W {\n  node [shape=circle];\n";
    if (!w.empty()) {
        out += "  { rank=same;";
        for (std::size_t i = 1; i <= w.size(); ++i) out += " " + std::to_string(i) + ";";
        out += " }\n";
        if (w.size() > 1) {
            out += "  ";
            for (std::size_t i = 1; i <= w.size(); ++i) out += (i > 1 ? " -- " : "") + std::to_string(i);
            out += " [style=invis];\n";
        }
    }
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            Relation r = w.rel(i, j);
            if (r == Relation::Undef) continue;
            std::string port = r == Relation::Neq ? "n" : "s";
            out += "  " + std::to_string(i + 1) + " -- " + std::to_string(j + 1) + " [label=\"" + to_digit(r) +
                   "\", tailport=" + port + ", headport=" + port + "];\n";
        }
    return out + "}\n";
}

System parse_scheme(const std::string& text, const std::filesystem::path& base) {
    System sys;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tok = tokens(t);
        if (tok[0] == "axiom" && tok.size() == 2) {
            sys.axioms.push_back(parse_literal(tok[1], base));
        } else if ((tok[0] == "ins" || tok[0] == "del") && tok.size() == 3) {
            StepKind k = tok[0] == "ins" ? StepKind::Insert : StepKind::Delete;
            sys.scheme.add(make_rule(tok[1], k, parse_literal(tok[2], base)));
        } else {
            throw Error(Errc::Parse, "expected 'ins|del <id> <word>' or 'axiom <word>'", lineno);
        }
    }
    return sys;
}

System load_scheme(const std::filesystem::path& p) { return parse_scheme(read_file(p), p.parent_path()); }

namespace {

std::string letters(const RelationalWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s.push_back(char('a' + w.class_of(i)));
    return s.empty() ? "eps" : s;
}

}  // namespace

std::string render_scheme(const System& s) {
    std::string out;
    for (auto& r : s.scheme.ins()) out += "ins " + r.id + " " + letters(r.body) + "\n";
    for (auto& r : s.scheme.del()) out += "del " + r.id + " " + letters(r.body) + "\n";
    for (auto& a : s.axioms) {
        if (!a.fully_defined()) throw Error(Errc::NotFullyDefined, "axiom cannot be written as letters");
        out += "axiom " + letters(a) + "\n";
    }
    return out;
}

Script parse_script(const std::string& text) {
    Script s;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto hash = line.find('#');
        std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (t.empty()) continue;
        auto tok = tokens(t);
        if (tok.size() != 3 || (tok[0] != "ins" && tok[0] != "del"))
            throw Error(Errc::Parse, "expected 'ins|del <site> <rule-id>'", lineno);
        s.push_back({tok[0] == "ins" ? StepKind::Insert : StepKind::Delete, parse_size(tok[1], lineno), tok[2]});
    }
    return s;
}

std::string render_script(const Script& s) {
    std::string out;
    for (auto& st : s) out += std::string(kind_name(st.kind)) + " " + std::to_string(st.site) + " " + st.rule_id + "\n";
    return out;
}

StringInsDelSystem parse_string_system(const std::string& text) {
    StringInsDelSystem sys;
    std::istringstream in(text);
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos) throw Error(Errc::Parse, "expected '<field>: ...'", lineno);
        std::string field = trim(t.substr(0, colon));
        auto tok = tokens(t.substr(colon + 1));
        for (auto& w : tok)
            if (w == "_") w.clear();
        if (field == "alpha" || field == "term") {
            std::string& dst = field == "alpha" ? sys.alphabet : sys.terminals;
            for (auto& w : tok)
                for (char c : w)
                    if (dst.find(c) == std::string::npos) dst.push_back(c);
        } else if (field == "ins") {
            sys.ins.insert(sys.ins.end(), tok.begin(), tok.end());
        } else if (field == "del") {
            sys.del.insert(sys.del.end(), tok.begin(), tok.end());
        } else if (field == "axiom") {
            sys.axioms.insert(sys.axioms.end(), tok.begin(), tok.end());
        } else {
            throw Error(Errc::Parse, "unknown field '" + field + "'", lineno);
        }
    }
    auto check = [&](const std::string& w) {
        for (char c : w)
            if (sys.alphabet.find(c) == std::string::npos)
                throw Error(Errc::Parse, std::string("letter '") + c + "' is not in the alphabet");
    };
    check(sys.terminals);
    for (auto* v : {&sys.ins, &sys.del, &sys.axioms})
        for (auto& w : *v) check(w);
    return sys;
}

StringInsDelSystem load_string_system(const std::filesystem::path& p) { return parse_string_system(read_file(p)); }

std::string render_string_system(const StringInsDelSystem& s) {
    auto join = [](const std::vector<std::string>& v) {
        std::string out;
        for (auto& w : v) out += " " + (w.empty() ? std::string("_") : w);
        return out;
    };
    std::string alpha, term;
    for (char c : s.alphabet) alpha += std::string(" ") + c;
    for (char c : s.terminals) term += std::string(" ") + c;
    return "alpha:" + alpha + "\nterm:" + term + "\nins:" + join(s.ins) + "\ndel:" + join(s.del) +
           "\naxiom:" + join(s.axioms) + "\n";
}

nlohmann::json to_json(const RelationalWord& w) { return digit_rows(w); }

nlohmann::json to_json(const Trace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (auto& s : t.steps)
        steps.push_back({{"kind", kind_name(s.kind)}, {"rule_id", s.rule_id}, {"site", s.site}, {"result", to_json(s.result)}});
    return {{"start", to_json(t.start)}, {"steps", steps}};
}

namespace {

RelationalWord word_from_rows(const nlohmann::json& j) {
    std::vector<std::vector<int>> rows;
    for (auto& r : j) rows.push_back(digit_row(r.get<std::string>(), 0));
    return from_matrix(rows);
}

}  // namespace

Trace trace_from_json(const nlohmann::json& j) {
    Trace t;
    t.start = word_from_rows(j.at("start"));
    for (auto& s : j.at("steps")) {
        std::string k = s.at("kind");
        if (k != "ins" && k != "del") throw Error(Errc::Parse, "step kind must be ins or del");
        t.steps.push_back({k == "ins" ? StepKind::Insert : StepKind::Delete, s.at("rule_id"), s.at("site"),
                           word_from_rows(s.at("result"))});
    }
    return t;
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j = {{"member", membership_name(v.member)},
                        {"reason", v.reason},
                        {"states", v.states},
                        {"depth_reached", v.depth_reached},
                        {"budget_exhausted", v.budget_exhausted}};
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json depths = nlohmann::json::array();
    for (auto& d : r.per_depth)
        depths.push_back({{"depth", d.depth}, {"states", d.states}, {"max_fd", d.max_fd}, {"max_e", d.max_e}});
    nlohmann::json j = {{"case", case_name(r.cls.kind)},
                        {"per_depth", depths},
                        {"max_fd", r.max_fd},
                        {"max_e", r.max_e},
                        {"steps_checked", r.steps_checked},
                        {"violations", r.violations},
                        {"ok", r.ok()}};
    j["bound_k"] = r.cls.bound_k ? nlohmann::json(*r.cls.bound_k) : nlohmann::json(nullptr);
    j["max_e_bound"] = r.cls.max_e_bound ? nlohmann::json(*r.cls.max_e_bound) : nlohmann::json(nullptr);
    return j;
}

}  // namespace relword::io
