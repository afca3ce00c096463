#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rasq/generate.hpp"
#include "rasq/graph.hpp"
#include "rasq/harness.hpp"
#include "rasq/oracle.hpp"
#include "rasq/resolver.hpp"
#include "rasq/table.hpp"
#include "rasq/wfs.hpp"

using namespace rasq;

namespace {

struct QueryLit {
    std::string name;
    bool negated = false;
    std::optional<AtomId> atom;   // nullopt: outside the atom universe
};

// Parse "a, not b(c)" into literals resolved against prog's atom universe.
std::vector<QueryLit> parse_query_literals(const Program& prog, const std::string& text) {
    RawProgram raw = parse_text(":- " + text + (text.find('.') == std::string::npos ? "." : ""));
    std::vector<QueryLit> out;
    for (const auto& l : raw.clauses.at(0).body) {
        for (const auto& t : l.atom.args)
            if (t.kind == Term::Variable)
                throw ParseError(1, 1, "queries must be ground (variable " + t.text + ")");
        std::string nm = l.atom.pred;
        if (!l.atom.args.empty()) {
            nm += '(';
            for (size_t i = 0; i < l.atom.args.size(); ++i) {
                if (i) nm += ',';
                nm += l.atom.args[i].text;
            }
            nm += ')';
        }
        QueryLit q;
        q.name = nm;
        q.negated = l.negated;
        q.atom = prog.find(nm);
        out.push_back(std::move(q));
    }
    return out;
}

std::string model_line(const std::vector<std::string>& names) {
    std::string s = "{";
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) s += ", ";
        s += names[i];
    }
    return s + "}";
}

int print_models(const Program& prog, const std::string& which, bool json, uint64_t max_candidates) {
    OracleLimits lim;
    lim.max_candidates = max_candidates;
    try {
        if (which == "wfs") {
            WellFoundedModel m = wfs(prog);
            std::vector<std::string> tr, fa, un;
            for (AtomId a = 0; a < prog.atom_count(); ++a) {
                if (m.w_plus.test(a)) tr.push_back(prog.name(a));
                else if (m.w_minus.test(a)) fa.push_back(prog.name(a));
                else un.push_back(prog.name(a));
            }
            std::sort(tr.begin(), tr.end());
            std::sort(fa.begin(), fa.end());
            std::sort(un.begin(), un.end());
            if (json) {
                nlohmann::json j;
                j["true"] = tr;
                j["false"] = fa;
                j["undefined"] = un;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "W+: " << model_line(tr) << "\n";
                std::cout << "W-: " << model_line(fa) << "\n";
                std::cout << "undefined: " << model_line(un) << "\n";
            }
            return 0;
        }
        std::vector<Interp> models =
            which == "as" ? answer_sets(prog, Exec::Parallel, lim) : ras_sets(prog, Exec::Parallel, lim);
        auto names = to_sorted_names(prog, models);
        if (json) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& m : names) j.push_back(m);
            std::cout << j.dump() << "\n";
        } else if (names.empty()) {
            std::cout << (which == "as" ? "no answer sets" : "no models") << "\n";
        } else {
            for (const auto& m : names) std::cout << model_line(m) << "\n";
        }
        return 0;
    } catch (const SizeGuardError& e) {
        std::cout << "size guard: " << e.what() << "\n";
        return 2;
    }
}

struct SessionState {
    Program program;
    ProgramTable table;
    std::unique_ptr<Resolver> resolver;
    std::vector<std::pair<std::string, bool>> history;
    std::optional<AtomId> last_success;

    void load(Program p) {
        program = std::move(p);
        table = ProgramTable::init(program);
        resolver = std::make_unique<Resolver>(program, table);
        history.clear();
        last_success.reset();
    }
};

// One contextual query over a (possibly conjunctive) literal list; true iff
// every literal succeeds in sequence.
bool run_query_literals(SessionState& st, const std::vector<QueryLit>& lits, bool show_trace,
                        std::ostream& os) {
    bool all = true;
    for (const auto& q : lits) {
        bool ok;
        if (!q.atom) {
            ok = q.negated;   // outside S_Pi: positive fails, negative succeeds
        } else {
            Outcome o = st.resolver->solve(Literal{*q.atom, q.negated});
            ok = o.success;
            if (show_trace) os << render_trace(o);
            if (ok && !q.negated) st.last_success = *q.atom;
        }
        std::string shown = (q.negated ? "not " : "") + q.name;
        st.history.push_back({shown, ok});
        all = all && ok;
    }
    return all;
}

void print_check(SessionState& st, std::ostream& os) {
    if (st.program.constraints.empty()) {
        os << "admissible (no constraints)\n";
        return;
    }
    AtomId q = st.last_success.value_or(kNoAtom);
    Resolver::ConstraintReport rep;
    if (q == kNoAtom) {
        // No query context: probe every constraint.
        rep.admissible = true;
        for (int ci = 0; ci < int(st.program.constraints.size()); ++ci) {
            ProgramTable save = st.table;
            Outcome o = st.resolver->solve(Literal{st.program.constraints[size_t(ci)].guard, true});
            st.table = save;
            rep.verdicts.push_back({ci, o.success});
            rep.admissible = rep.admissible && o.success;
        }
    } else {
        rep = st.resolver->check_constraints(q);
    }
    for (auto [ci, ok] : rep.verdicts)
        os << "constraint " << (ci + 1) << " (guard " << st.program.name(st.program.constraints[size_t(ci)].guard)
           << "): " << (ok ? "satisfied" : "violated") << "\n";
    os << (rep.admissible ? "admissible" : "not admissible") << "\n";
}

int repl(SessionState& st, bool show_trace, std::istream& in, std::ostream& os) {
    std::string line;
    os << "rasq repl; :quit to exit\n";
    while (true) {
        os << "> " << std::flush;
        if (!std::getline(in, line)) break;
        // trim
        auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\n");
        line = line.substr(b, e - b + 1);
        if (line.empty()) continue;
        try {
            if (line == ":quit" || line == ":q") break;
            if (line == ":reset") {
                st.table.reset(st.program);
                st.history.clear();
                st.last_success.reset();
                os << "context reset\n";
            } else if (line == ":table") {
                os << st.table.render(st.program);
            } else if (line.rfind(":models", 0) == 0) {
                std::string which = line.size() > 8 ? line.substr(8) : "ras";
                if (which != "ras" && which != "as" && which != "wfs") {
                    os << "usage: :models ras|as|wfs\n";
                } else {
                    print_models(st.program, which, false, uint64_t{1} << 20);
                }
            } else if (line == ":check") {
                print_check(st, os);
            } else if (line == ":next") {
                Outcome o = st.resolver->next();
                os << (o.success ? "yes (alternative context)" : "no further contexts") << "\n";
            } else if (line.rfind(":load ", 0) == 0) {
                std::string path = line.substr(6);
                std::ifstream f(path);
                if (!f) {
                    os << "cannot open " << path << "\n";
                    continue;
                }
                std::stringstream ss;
                ss << f.rdbuf();
                st.load(parse_program(ss.str()));
                os << "loaded " << path << "\n";
            } else if (line.rfind("?-", 0) == 0) {
                std::string q = line.substr(2);
                if (!q.empty() && q.back() == '.') q.pop_back();
                auto lits = parse_query_literals(st.program, q);
                bool ok = run_query_literals(st, lits, show_trace, os);
                os << (ok ? "yes" : "no") << "\n";
            } else {
                os << "commands: ?- lit[, lit...].  :reset :table :models ras|as|wfs :check :next :load FILE :quit\n";
            }
        } catch (const std::exception& ex) {
            os << "error: " << ex.what() << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rasq - query answering for ground programs under resource-based answer set semantics"};

    std::string file;
    std::string query;
    std::string models;
    bool check = false, show_trace = false, json = false, dump = false, interactive = false;
    uint64_t max_atoms_guard = 20;
    int fuzz_count = 0;
    GenConfig gen;
    bool seed_given = false;

    app.add_option("file", file, "program file (.lp)");
    app.add_option("--query", query, "one-shot query literal(s), e.g. 'f' or 'a, not b'");
    app.add_option("--models", models, "print model family: ras|as|wfs")
        ->check(CLI::IsMember({"ras", "as", "wfs"}));
    app.add_flag("--check", check, "check constraints after the query");
    app.add_flag("--trace", show_trace, "print the derivation trace");
    app.add_flag("--json", json, "JSON output for --models / --fuzz");
    app.add_flag("--dump-graph", dump, "print the signed dependency graph");
    app.add_flag("-i,--repl", interactive, "interactive session");
    app.add_option("--max-atoms", max_atoms_guard, "oracle guard: max head atoms for enumeration");
    app.add_option("--fuzz", fuzz_count, "differential-test N seeded random programs");
    auto* seed_opt = app.add_option("--seed", gen.seed, "fuzz base seed");
    app.add_option("--gen-atoms", gen.max_atoms, "fuzz: max atoms");
    app.add_option("--gen-rules", gen.max_rules, "fuzz: max rules");
    app.add_option("--gen-body", gen.max_body, "fuzz: max body length");
    app.add_option("--gen-negp", gen.negation_probability, "fuzz: negation probability");

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    try {
        if (fuzz_count > 0) {
            if (!seed_given)
                if (const char* s = std::getenv("RASQ_SEED")) gen.seed = std::strtoull(s, nullptr, 10);
            FuzzReport rep = fuzz(fuzz_count, gen);
            std::cout << to_json(rep) << "\n";
            return rep.ok() ? 0 : 1;
        }

        SessionState st;
        if (!file.empty()) {
            std::ifstream f(file);
            if (!f) {
                std::cerr << "error: cannot open " << file << "\n";
                return 2;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            st.load(parse_program(ss.str()));
        } else {
            st.load(Program{});
        }

        if (dump) std::cout << dump_graph(st.program);

        if (!models.empty()) {
            int rc = print_models(st.program, models, json, uint64_t{1} << std::min<uint64_t>(max_atoms_guard, 62));
            if (rc != 0) return rc;
        }

        if (!query.empty()) {
            auto lits = parse_query_literals(st.program, query);
            bool ok = run_query_literals(st, lits, show_trace, std::cout);
            std::cout << (ok ? "yes" : "no") << "\n";
            if (check) print_check(st, std::cout);
            return ok ? 0 : 1;
        }

        if (interactive || (models.empty() && !dump)) return repl(st, show_trace, std::cin, std::cout);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
