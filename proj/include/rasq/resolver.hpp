#ifndef RASQ_RESOLVER_HPP
#define RASQ_RESOLVER_HPP

#include <string>
#include <vector>

#include "rasq/graph.hpp"
#include "rasq/program.hpp"
#include "rasq/table.hpp"
#include "rasq/wfs.hpp"

namespace rasq {

struct ResourceGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LoopClass { Direct, ThroughNegation };

// Negative context: the chain of negated atoms on the current derivation
// path. No duplicates; re-encounters classify instead of pushing.
struct NegativeContext {
    std::vector<AtomId> stack;
    bool contains(AtomId a) const;
    int position(AtomId a) const;   // -1 when absent
};

// Direct when the re-encounter is reached through positive edges only (no
// negative literal pushed after `a`), ThroughNegation otherwise.
LoopClass classify_loop(const NegativeContext& ctx, AtomId a);

struct TraceEvent {
    int depth;
    std::string text;
};

struct TableDelta {
    std::vector<std::pair<AtomId, TableEntry>> added;
    std::vector<AtomId> removed_yes;
};

struct Outcome {
    bool success = false;
    std::vector<TraceEvent> trace;   // final exploration only
    TableDelta delta;
    int runs = 1;                    // driver restarts used
};

std::string render_trace(const Outcome& o);

struct ResolverOptions {
    long max_steps_per_run = 2'000'000;
    int max_runs = 50'000;
};

// RAS-XSB resolution session over one program and its table.
class Resolver {
public:
    Resolver(const Program& prog, ProgramTable& table, ResolverOptions opt = {});

    // Evaluate one literal query against the current table state; table
    // effects are committed (promoted) on success, rolled back to the entry
    // snapshot (permanent lemmas aside) on failure.
    Outcome solve(Literal lit);
    Outcome query(AtomId a) { return solve(Literal{a, false}); }
    std::vector<Outcome> query_sequence(const std::vector<Literal>& lits);

    // Re-run the last query with the latest committed choice point flipped;
    // success commits the alternative context. Best effort.
    Outcome next();

    struct ConstraintReport {
        std::vector<std::pair<int, bool>> verdicts;   // constraint index, probe success
        bool admissible = true;
    };
    // Probe "?- not H" for every constraint relevant to q, in context;
    // probe table effects are rolled back afterwards.
    ConstraintReport check_constraints(AtomId q);

    const ProgramTable& table() const { return *table_; }

private:
    struct Choice {
        int chosen;
        int max;
        bool flippable;
    };
    struct Env;

    // guard: the negations the derivation consumed, accumulated Γ̂-style
    // (through positive support and the rule's own negative literals).
    // taint: every hypothesis the verdict rests on; empty means the verdict
    // is context-free.
    struct Res {
        bool success;
        AtomSet guard;
        AtomSet taint;
    };

    Res eval_lit(Env& env, Literal l);
    Res solve_atom(Env& env, AtomId a, int neg_pos);
    bool run_commits(const Env& env) const;
    bool validate_stability();
    void harvest(Env& env, int rule_index);
    int take_cp(Env& env);
    bool advance_ledger();
    Outcome drive(Literal lit, bool promote_on_success);

    void trace(Env& env, const std::string& s);
    std::string lit_str(Literal l) const;

    const Program* prog_;
    ProgramTable* table_;
    WfsCache wfs_;
    ResolverOptions opt_;
    std::vector<Choice> ledger_;
    std::vector<TraceEvent> trace_buf_;

    // For next(): pre-query table copy and query.
    ProgramTable pre_query_table_;
    Literal last_query_{kNoAtom, false};
    bool has_last_ = false;
};

// Definition-level entry points.
Outcome solve(const Program& prog, ProgramTable& tab, Literal lit);
Outcome query(const Program& prog, ProgramTable& tab, AtomId a);
std::vector<Outcome> query_sequence(const Program& prog, const std::vector<AtomId>& atoms);

} // namespace rasq

#endif
