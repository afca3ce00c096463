#ifndef RASQ_PROGRAM_HPP
#define RASQ_PROGRAM_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rasq/bitset.hpp"

namespace rasq {

using AtomId = int32_t;
constexpr AtomId kNoAtom = -1;

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& what_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + what_),
          line(line_), col(col_) {}
};

struct Literal {
    AtomId atom = kNoAtom;
    bool negated = false;
    bool operator==(const Literal&) const = default;
};

struct Rule {
    AtomId head = kNoAtom;
    std::vector<Literal> body;   // order preserved exactly as written
    int origin_index = 0;        // position in source, 0-based
    bool operator==(const Rule&) const = default;
};

struct Constraint {
    AtomId guard = kNoAtom;              // fresh head H of the generated guard rule
    std::vector<Literal> original_body;
    bool operator==(const Constraint&) const = default;
};

// Ground program: interned atom universe, rules in source order, constraints
// held separately (their guard rules live in `rules`). Immutable once built.
class Program {
public:
    AtomId intern(std::string name);
    std::optional<AtomId> find(std::string_view name) const;
    const std::string& name(AtomId a) const { return names_.at(size_t(a)); }
    int atom_count() const { return int(names_.size()); }

    std::vector<Rule> rules;
    std::vector<Constraint> constraints;

    // Recompute heads / per-head rule index. Call after mutating `rules`.
    void rebuild_index();

    bool is_head(AtomId a) const { return heads_.test(a); }
    const AtomSet& heads() const { return heads_; }
    const std::vector<int>& rules_for(AtomId a) const;
    AtomSet empty_set() const { return AtomSet(atom_count()); }

    bool operator==(const Program& o) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> ids_;
    AtomSet heads_;
    std::vector<std::vector<int>> rules_by_head_;
};

// ---------------------------------------------------------------------------
// Non-ground surface form (parser output, grounder input).

struct Term {
    enum Kind { Constant, Integer, Variable } kind;
    std::string text;
    bool operator==(const Term&) const = default;
};

struct RawAtom {
    std::string pred;
    std::vector<Term> args;
    bool operator==(const RawAtom&) const = default;
};

struct RawLiteral {
    RawAtom atom;
    bool negated = false;
};

struct RawClause {
    std::optional<RawAtom> head;   // nullopt => constraint
    std::vector<RawLiteral> body;
    int origin_index = 0;
};

struct RawProgram {
    std::vector<RawClause> clauses;
};

// Parse surface text. Grammar per the CLI manual; '%' comments.
// Throws ParseError (with line/column) on bad syntax or arity clashes.
RawProgram parse_text(std::string_view text);

// Instantiate over the constant universe. Rejects function symbols (never
// produced by the parser) and rules whose head variables miss the positive
// body. Grounding an already-ground program yields an equal program.
RawProgram ground_raw(const RawProgram& raw);

// Build the interned ground Program; constraints get fresh guard atoms.
Program build_program(const RawProgram& ground);

// parse + ground + build in one step.
Program parse_program(std::string_view text);

// Append a constraint with a fresh guard atom; returns it. `body` uses atoms
// of `prog`. Guard names use the reserved "_c" prefix.
Constraint normalize_constraint(const std::vector<Literal>& body, Program& prog);

// A guard rule is one generated by normalize_constraint.
bool is_guard_rule(const Program& prog, const Rule& r);

std::string to_string(const Program& prog, const Literal& l);
std::string to_string(const Program& prog, const Rule& r);
// Print as re-parsable text: guard rules are folded back into ":- body."
// constraint statements so that parse(to_text(p)) == p structurally.
std::string to_text(const Program& prog);

} // namespace rasq

#endif
