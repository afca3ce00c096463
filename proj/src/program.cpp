#include "rasq/program.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace rasq {

AtomId Program::intern(std::string name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    AtomId id = AtomId(names_.size());
    ids_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
}

std::optional<AtomId> Program::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

void Program::rebuild_index() {
    heads_ = AtomSet(atom_count());
    rules_by_head_.assign(size_t(atom_count()), {});
    for (int i = 0; i < int(rules.size()); ++i) {
        heads_.set(rules[size_t(i)].head);
        rules_by_head_[size_t(rules[size_t(i)].head)].push_back(i);
    }
}

const std::vector<int>& Program::rules_for(AtomId a) const {
    static const std::vector<int> empty;
    if (a < 0 || a >= atom_count()) return empty;
    return rules_by_head_[size_t(a)];
}

bool Program::operator==(const Program& o) const {
    return names_ == o.names_ && rules == o.rules && constraints == o.constraints;
}

// ---------------------------------------------------------------------------
// Scanner / parser

namespace {

struct Token {
    enum Kind { Ident, Var, Int, Implies, Comma, Dot, LParen, RParen, Not, End } kind;
    std::string text;
    int line, col;
};

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Token::End, "", line, col};
        char c = src_[pos_];
        if (c == ':') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
                advance(); advance();
                return {Token::Implies, ":-", line, col};
            }
            fail(line, col, "expected ':-'");
        }
        if (c == ',') { advance(); return {Token::Comma, ",", line, col}; }
        if (c == '.') { advance(); return {Token::Dot, ".", line, col}; }
        if (c == '(') { advance(); return {Token::LParen, "(", line, col}; }
        if (c == ')') { advance(); return {Token::RParen, ")", line, col}; }
        if (c >= '0' && c <= '9') {
            std::string t;
            while (pos_ < src_.size() && isdigit(src_[pos_])) { t += src_[pos_]; advance(); }
            return {Token::Int, t, line, col};
        }
        if (isalpha(c)) {
            std::string t;
            while (pos_ < src_.size() && (isalnum(src_[pos_]) || src_[pos_] == '_')) {
                t += src_[pos_];
                advance();
            }
            if (t == "not") return {Token::Not, t, line, col};
            if (c >= 'A' && c <= 'Z') return {Token::Var, t, line, col};
            return {Token::Ident, t, line, col};
        }
        fail(line, col, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] static void fail(int line, int col, const std::string& msg) {
        throw ParseError(line, col, msg);
    }

private:
    static bool isdigit(char c) { return c >= '0' && c <= '9'; }
    static bool isalpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
    static bool isalnum(char c) { return isalpha(c) || isdigit(c); }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : sc_(src) { shift(); }

    RawProgram parse() {
        RawProgram out;
        while (tok_.kind != Token::End) {
            RawClause cl = clause();
            cl.origin_index = int(out.clauses.size());
            out.clauses.push_back(std::move(cl));
        }
        check_arities(out);
        return out;
    }

private:
    void shift() { tok_ = sc_.next(); }

    void expect(Token::Kind k, const char* what) {
        if (tok_.kind != k) Scanner::fail(tok_.line, tok_.col, std::string("expected ") + what);
        shift();
    }

    RawClause clause() {
        RawClause cl;
        if (tok_.kind == Token::Implies) {   // constraint
            shift();
            cl.body = body();
            expect(Token::Dot, "'.'");
            return cl;
        }
        cl.head = atom();
        if (tok_.kind == Token::Implies) {
            shift();
            cl.body = body();
        }
        expect(Token::Dot, "'.'");
        return cl;
    }

    std::vector<RawLiteral> body() {
        std::vector<RawLiteral> out;
        out.push_back(literal());
        while (tok_.kind == Token::Comma) {
            shift();
            out.push_back(literal());
        }
        return out;
    }

    RawLiteral literal() {
        RawLiteral l;
        if (tok_.kind == Token::Not) {
            l.negated = true;
            shift();
        }
        l.atom = atom();
        return l;
    }

    RawAtom atom() {
        if (tok_.kind != Token::Ident)
            Scanner::fail(tok_.line, tok_.col, "expected atom (lowercase identifier)");
        RawAtom a;
        a.pred = tok_.text;
        shift();
        if (tok_.kind == Token::LParen) {
            shift();
            a.args.push_back(term());
            while (tok_.kind == Token::Comma) {
                shift();
                a.args.push_back(term());
            }
            expect(Token::RParen, "')'");
        }
        return a;
    }

    Term term() {
        Term t;
        if (tok_.kind == Token::Ident) t = {Term::Constant, tok_.text};
        else if (tok_.kind == Token::Int) t = {Term::Integer, tok_.text};
        else if (tok_.kind == Token::Var) t = {Term::Variable, tok_.text};
        else if (tok_.kind == Token::LParen || tok_.kind == Token::Not)
            Scanner::fail(tok_.line, tok_.col, "function symbols are not supported");
        else
            Scanner::fail(tok_.line, tok_.col, "expected term");
        shift();
        return t;
    }

    void check_arities(const RawProgram& p) {
        std::map<std::string, size_t> arity;
        auto see = [&](const RawAtom& a) {
            auto [it, fresh] = arity.emplace(a.pred, a.args.size());
            if (!fresh && it->second != a.args.size())
                throw ParseError(1, 1, "arity clash for '" + a.pred + "': used with " +
                                           std::to_string(it->second) + " and " +
                                           std::to_string(a.args.size()) + " arguments");
        };
        for (const auto& cl : p.clauses) {
            if (cl.head) see(*cl.head);
            for (const auto& l : cl.body) see(l.atom);
        }
    }

    Scanner sc_;
    Token tok_;
};

std::string ground_name(const RawAtom& a) {
    std::string s = a.pred;
    if (!a.args.empty()) {
        s += '(';
        for (size_t i = 0; i < a.args.size(); ++i) {
            if (i) s += ',';
            s += a.args[i].text;
        }
        s += ')';
    }
    return s;
}

} // namespace

RawProgram parse_text(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Grounder

namespace {

void collect_vars(const RawAtom& a, std::set<std::string>& out) {
    for (const auto& t : a.args)
        if (t.kind == Term::Variable) out.insert(t.text);
}

RawAtom substitute(const RawAtom& a, const std::map<std::string, Term>& env) {
    RawAtom out = a;
    for (auto& t : out.args)
        if (t.kind == Term::Variable) t = env.at(t.text);
    return out;
}

} // namespace

RawProgram ground_raw(const RawProgram& raw) {
    // Constant universe: every non-variable term occurring anywhere.
    std::vector<Term> universe;
    std::set<std::string> seen;
    auto collect_consts = [&](const RawAtom& a) {
        for (const auto& t : a.args)
            if (t.kind != Term::Variable && seen.insert(t.text).second) universe.push_back(t);
    };
    for (const auto& cl : raw.clauses) {
        if (cl.head) collect_consts(*cl.head);
        for (const auto& l : cl.body) collect_consts(l.atom);
    }

    RawProgram out;
    for (const auto& cl : raw.clauses) {
        std::set<std::string> vars, posvars;
        if (cl.head) collect_vars(*cl.head, vars);
        for (const auto& l : cl.body) {
            collect_vars(l.atom, vars);
            if (!l.negated) collect_vars(l.atom, posvars);
        }
        if (cl.head) {
            std::set<std::string> headvars;
            collect_vars(*cl.head, headvars);
            for (const auto& v : headvars)
                if (!posvars.count(v))
                    throw ParseError(1, 1, "unsafe rule (origin " +
                                               std::to_string(cl.origin_index) + "): head variable " +
                                               v + " does not occur in the positive body");
        }
        if (vars.empty()) {
            RawClause g = cl;
            g.origin_index = int(out.clauses.size());
            out.clauses.push_back(std::move(g));
            continue;
        }
        // Cartesian instantiation over the universe; vacuous when it is empty.
        std::vector<std::string> vlist(vars.begin(), vars.end());
        std::vector<size_t> idx(vlist.size(), 0);
        if (universe.empty()) continue;
        for (;;) {
            std::map<std::string, Term> env;
            for (size_t i = 0; i < vlist.size(); ++i) env[vlist[i]] = universe[idx[i]];
            RawClause g;
            if (cl.head) g.head = substitute(*cl.head, env);
            for (const auto& l : cl.body) g.body.push_back({substitute(l.atom, env), l.negated});
            g.origin_index = int(out.clauses.size());
            out.clauses.push_back(std::move(g));
            size_t k = 0;
            while (k < idx.size() && ++idx[k] == universe.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Program construction

Program build_program(const RawProgram& ground) {
    Program p;
    std::vector<const RawClause*> constraints;
    for (const auto& cl : ground.clauses) {
        if (!cl.head) {
            if (cl.body.empty()) throw ParseError(1, 1, "empty constraint");
            constraints.push_back(&cl);
            continue;
        }
        Rule r;
        r.head = p.intern(ground_name(*cl.head));
        for (const auto& l : cl.body) r.body.push_back({p.intern(ground_name(l.atom)), l.negated});
        r.origin_index = int(p.rules.size());
        p.rules.push_back(std::move(r));
    }
    p.rebuild_index();
    for (const auto* cl : constraints) {
        std::vector<Literal> body;
        for (const auto& l : cl->body) body.push_back({p.intern(ground_name(l.atom)), l.negated});
        normalize_constraint(body, p);
    }
    return p;
}

Program parse_program(std::string_view text) {
    return build_program(ground_raw(parse_text(text)));
}

Constraint normalize_constraint(const std::vector<Literal>& body, Program& prog) {
    if (body.empty()) throw std::invalid_argument("constraint body must be nonempty");
    int n = int(prog.constraints.size()) + 1;
    std::string gname = "_c" + std::to_string(n);
    while (prog.find(gname)) gname += "_";
    AtomId guard = prog.intern(gname);
    Rule r;
    r.head = guard;
    r.body = body;
    r.origin_index = int(prog.rules.size());
    prog.rules.push_back(std::move(r));
    prog.rebuild_index();
    prog.constraints.push_back(Constraint{guard, body});
    return prog.constraints.back();
}

bool is_guard_rule(const Program& prog, const Rule& r) {
    for (const auto& c : prog.constraints)
        if (c.guard == r.head) return true;
    return false;
}

std::string to_string(const Program& prog, const Literal& l) {
    return (l.negated ? "not " : "") + prog.name(l.atom);
}

std::string to_string(const Program& prog, const Rule& r) {
    std::string s = prog.name(r.head);
    if (!r.body.empty()) {
        s += " :- ";
        for (size_t i = 0; i < r.body.size(); ++i) {
            if (i) s += ", ";
            s += to_string(prog, r.body[i]);
        }
    }
    return s + ".";
}

std::string to_text(const Program& prog) {
    std::ostringstream os;
    for (const auto& r : prog.rules)
        if (!is_guard_rule(prog, r)) os << to_string(prog, r) << "\n";
    for (const auto& c : prog.constraints) {
        os << ":- ";
        for (size_t i = 0; i < c.original_body.size(); ++i) {
            if (i) os << ", ";
            os << to_string(prog, c.original_body[i]);
        }
        os << ".\n";
    }
    return os.str();
}

} // namespace rasq
