#include "rasq/resolver.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace rasq {

bool NegativeContext::contains(AtomId a) const { return position(a) >= 0; }

int NegativeContext::position(AtomId a) const {
    for (int i = 0; i < int(stack.size()); ++i)
        if (stack[size_t(i)] == a) return i;
    return -1;
}

LoopClass classify_loop(const NegativeContext& ctx, AtomId a) {
    int pos = ctx.position(a);
    assert(pos >= 0);
    return pos + 1 < int(ctx.stack.size()) ? LoopClass::ThroughNegation : LoopClass::Direct;
}

std::string render_trace(const Outcome& o) {
    std::ostringstream os;
    for (const auto& ev : o.trace) {
        for (int i = 0; i < ev.depth; ++i) os << "  ";
        os << ev.text << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Thrown when a negative literal is re-encountered: evaluation resolves the
// initiating occurrence, so everything between it and the re-encounter is
// abandoned without conclusions.
struct LoopUnwind {
    AtomId atom;
};

// The lemma replay after a loop hypothesis is purely opportunistic; any
// fresh re-encounter abandons it wholesale.
struct HarvestAbort {};

} // namespace

struct Resolver::Env {
    NegativeContext N;
    struct NegCall {
        AtomId atom;
        bool reenc = false;
        bool through = false;
    };
    std::vector<NegCall> neg_calls;              // parallel to N.stack
    struct PosCall {
        AtomId atom;
        size_t n_size;
        bool reenc = false;
        bool through = false;
    };
    std::vector<PosCall> pos_stack;
    AtomSet assumed_not_false;                   // atoms whose re-encounter was flipped
    size_t cp_pos = 0;
    long steps = 0;
    int depth = 0;
    bool in_harvest = false;
    bool validation = false;
    // A bypassed rule success that cascades into an atom failure, or an atom
    // failing after its re-encounter was flipped, fabricates a verdict; such
    // explorations may not commit, and choice points opened afterwards
    // cannot repair them.
    bool poisoned = false;
    size_t prune_to = SIZE_MAX;
};

Resolver::Resolver(const Program& prog, ProgramTable& table, ResolverOptions opt)
    : prog_(&prog), table_(&table), wfs_(prog), opt_(opt) {}

void Resolver::trace(Env& env, const std::string& s) {
    if (!env.validation) trace_buf_.push_back({env.depth, s});
}

std::string Resolver::lit_str(Literal l) const {
    return (l.negated ? "not " : "") + prog_->name(l.atom);
}

int Resolver::take_cp(Env& env) {
    if (env.in_harvest || env.validation) return 0;   // no alternatives recorded
    if (env.cp_pos < ledger_.size()) return ledger_[env.cp_pos++].chosen;
    ledger_.push_back({0, 2, true});
    ++env.cp_pos;
    return 0;
}

bool Resolver::advance_ledger() {
    while (!ledger_.empty()) {
        Choice& c = ledger_.back();
        if (c.flippable && c.chosen + 1 < c.max) {
            ++c.chosen;
            return true;
        }
        ledger_.pop_back();
    }
    return false;
}

Resolver::Res Resolver::eval_lit(Env& env, Literal l) {
    const AtomId a = l.atom;
    const int n = prog_->atom_count();
    if (!l.negated) {
        trace(env, "?- " + lit_str(l) + ".");
        return solve_atom(env, a, -1);
    }

    trace(env, "?- " + lit_str(l) + ".");
    AtomSet self(n);
    self.set(a);
    // Table lookup: cases 3.a and 4.
    if (const TableEntry* e = table_->lookup(a)) {
        if (e->status == EntryStatus::ProvenTrue) {
            trace(env, "not " + prog_->name(a) + " fails by case 4 (table)");
            return {false, AtomSet(n), e->deps};
        }
        AtomSet t(n);
        if (!e->permanent) {
            t = e->deps;
            t.set(a);
        }
        trace(env, "not " + prog_->name(a) + " succeeds by case 3.a (table)");
        return {true, self, t};
    }

    int pos = env.N.position(a);
    if (pos >= 0) {
        // Re-encounter. Classify it, mark the initiating call, then either
        // resolve that call's occurrence (unwind) or refuse the hypothesis
        // and keep searching for the opposite context.
        bool through = classify_loop(env.N, a) == LoopClass::ThroughNegation;
        env.neg_calls[size_t(pos)].reenc = true;
        env.neg_calls[size_t(pos)].through |= through;
        for (auto& pc : env.pos_stack)
            if (pc.atom == a) {
                pc.reenc = true;
                pc.through |= through;
            }
        if (env.in_harvest) throw HarvestAbort{};
        if (env.assumed_not_false.test(a)) {
            trace(env, "not " + prog_->name(a) + " re-encountered after flip: fails");
            return {false, AtomSet(n), self};
        }
        if (take_cp(env) == 0) {
            trace(env, "not " + prog_->name(a) + " re-encountered (" +
                           (through ? "through negation" : "directly") + ")");
            throw LoopUnwind{a};
        }
        env.assumed_not_false.set(a);
        trace(env, "not " + prog_->name(a) + " re-encounter flipped: fails");
        return {false, AtomSet(n), self};
    }

    env.N.stack.push_back(a);
    env.neg_calls.push_back({a});
    ++env.depth;
    Res r;
    try {
        r = solve_atom(env, a, int(env.N.stack.size()) - 1);
    } catch (...) {
        --env.depth;
        env.neg_calls.pop_back();
        env.N.stack.pop_back();
        throw;
    }
    --env.depth;
    Env::NegCall info = env.neg_calls.back();
    env.neg_calls.pop_back();
    env.N.stack.pop_back();

    if (r.success) {
        trace(env, "not " + prog_->name(a) + " fails by case 4");
        return {false, AtomSet(n), r.taint};
    }
    const TableEntry* e = table_->lookup(a);
    std::string label = "3.b";
    if (info.reenc) label = info.through ? "3.c" : "3.d";
    trace(env, "not " + prog_->name(a) + " succeeds by case " + label);
    AtomSet t(n);
    if (e && !e->permanent) {
        t = e->deps;
        t.set(a);
    }
    return {true, self, t};
}

Resolver::Res Resolver::solve_atom(Env& env, AtomId a, int neg_pos) {
    if (++env.steps > opt_.max_steps_per_run)
        throw ResourceGuardError("resolver step limit exceeded");
    const int n = prog_->atom_count();

    // Lookup precedence (cases 1.a / 2.a on the table).
    if (const TableEntry* e = table_->lookup(a)) {
        if (e->status == EntryStatus::ProvenTrue) {
            trace(env, prog_->name(a) + " succeeds by case 1.a (table)");
            return {true, e->guard, e->deps};
        }
        AtomSet t(n);
        if (!e->permanent) {
            t = e->deps;
            t.set(a);
        }
        trace(env, prog_->name(a) + " fails by case 2.a (table)");
        return {false, AtomSet(n), t};
    }

    // Atoms heading no rule: yes_A was never available.
    if (prog_->rules_for(a).empty()) {
        table_->on_failure(a, table_->current_frame(), AtomSet(n));
        trace(env, prog_->name(a) + " fails by case 2.a (no rules)");
        return {false, AtomSet(n), AtomSet(n)};
    }

    // Definite verdicts (cases 1.a / 2.b) via the well-founded model.
    switch (wfs_.status(a)) {
        case Truth::True:
            table_->on_success(a, table_->current_frame(), AtomSet(n), AtomSet(n));
            trace(env, prog_->name(a) + " succeeds by case 1.a (definite)");
            return {true, AtomSet(n), AtomSet(n)};
        case Truth::False:
            table_->on_failure(a, table_->current_frame(), AtomSet(n));
            trace(env, prog_->name(a) + " fails by case 2.b (definite)");
            return {false, AtomSet(n), AtomSet(n)};
        case Truth::Undefined: break;
    }

    // Positive re-entry through an unchanged negative context is a dead
    // branch; through new negation layers the re-entry is allowed.
    for (auto it = env.pos_stack.rbegin(); it != env.pos_stack.rend(); ++it)
        if (it->atom == a) {
            if (it->n_size == env.N.stack.size()) {
                AtomSet t(n);
                t.set(a);
                trace(env, prog_->name(a) + " hits a positive loop: branch fails");
                return {false, AtomSet(n), t};
            }
            break;
        }

    env.pos_stack.push_back({a, env.N.stack.size()});
    AtomSet collected(n);
    bool any_veto = false, any_cut = false, bypassed = false;
    int harvest_rule = -1;

    std::vector<int> eligible;
    for (int ri : prog_->rules_for(a)) {
        bool self_in_body = false;
        for (const Literal& l : prog_->rules[size_t(ri)].body)
            if (l.atom == a) { self_in_body = true; break; }
        if (!self_in_body) eligible.push_back(ri);   // case 1.b precondition
    }

    for (size_t ei = 0; ei < eligible.size(); ++ei) {
        int ri = eligible[ei];
        const Rule& rule = prog_->rules[size_t(ri)];
        int frame = table_->open_frame();
        size_t mark = table_->mark();
        size_t cp_start = ledger_.size();
        trace(env, "try r" + std::to_string(rule.origin_index + 1) + " for " + prog_->name(a));
        ++env.depth;

        AtomSet body_guard(n), body_taint(n);
        bool failed = false, fail_definite = false, cut = false;
        try {
            for (const Literal& l : rule.body) {
                Res res = eval_lit(env, l);
                if (!res.success) {
                    failed = true;
                    fail_definite = res.taint.none();
                    collected |= res.taint;
                    break;
                }
                body_guard |= res.guard;
                body_taint |= res.taint;
            }
        } catch (const LoopUnwind& u) {
            --env.depth;
            table_->rewind(mark);
            table_->close_frame(frame);
            if (u.atom != a || neg_pos < 0) {   // not the initiating call
                env.pos_stack.pop_back();
                throw;
            }
            // The re-encounter resolves this call: the current rule is cut,
            // the evaluation in between concluded nothing.
            trace(env, "r" + std::to_string(rule.origin_index + 1) +
                           " cut: its derivation re-encountered not " + prog_->name(a));
            any_cut = true;
            if (harvest_rule < 0) harvest_rule = ri;
            cut = true;
        }
        if (cut) continue;
        --env.depth;

        if (!failed) {
            if (body_guard.test(a) || body_taint.test(a)) {
                // The derivation consumed not A (through tabled lemmas) or
                // rests on the assumption of A's absence: blocked, same as a
                // direct re-encounter.
                trace(env, "r" + std::to_string(rule.origin_index + 1) +
                               " consumed not " + prog_->name(a) + ": forced to failure");
                any_veto = true;
                if (harvest_rule < 0) harvest_rule = ri;
                collected |= body_taint;
                table_->rewind(mark);
                table_->close_frame(frame);
                continue;
            }
            // Committing this rule is a choice point only when a later rule
            // could yield a different context.
            if (body_taint.any() && ei + 1 < eligible.size() && take_cp(env) == 1) {
                trace(env, "r" + std::to_string(rule.origin_index + 1) +
                               " success bypassed (alternative search)");
                bypassed = true;
                collected |= body_taint;
                table_->rewind(mark);
                table_->close_frame(frame);
                continue;
            }
            table_->on_success(a, frame, body_taint, body_guard);
            table_->close_frame(frame);
            trace(env, prog_->name(a) + " succeeds by case 1.b via r" +
                           std::to_string(rule.origin_index + 1));
            env.pos_stack.pop_back();
            return {true, body_guard, body_taint};
        }

        trace(env, "r" + std::to_string(rule.origin_index + 1) + " fails; retract its frame");
        table_->rewind(mark);
        table_->close_frame(frame);
        if (fail_definite)
            for (size_t k = cp_start; k < ledger_.size(); ++k) ledger_[k].flippable = false;
    }

    // Every rule failed, was cut by a re-encounter, or consumed not A.
    if (bypassed || env.assumed_not_false.test(a)) {
        env.poisoned = true;
        env.prune_to = std::min(env.prune_to, ledger_.size());
    }
    Env::PosCall self = env.pos_stack.back();
    env.pos_stack.pop_back();
    bool own_loop = any_cut || any_veto || self.reenc;
    bool through = self.through;
    if (neg_pos >= 0) {
        const auto& nc = env.neg_calls[size_t(neg_pos)];
        own_loop = own_loop || nc.reenc;
        through = through || nc.through;
    }

    AtomSet rec_deps = collected;
    rec_deps.reset(a);
    if (own_loop) {
        table_->on_neg_success(a,
                               through ? NegSuccessKind::Hypothesis3c
                                       : NegSuccessKind::Hypothesis3d,
                               table_->current_frame(), rec_deps);
        trace(env, prog_->name(a) + " fails via its negative loop (hypothesis not " +
                       prog_->name(a) + " recorded)");
        if (harvest_rule >= 0) harvest(env, harvest_rule);
    } else {
        table_->on_failure(a, table_->current_frame(), rec_deps);
        trace(env, prog_->name(a) + " fails by case 2.c");
    }

    const TableEntry* e = table_->lookup(a);
    AtomSet t(n);
    if (e && !e->permanent) {
        t = e->deps;
        t.set(a);
    }
    return {false, AtomSet(n), t};
}

// Stability of the committed context: no rule whose head stands refuted may
// fire in it, unless its body's support itself rests on that head being
// absent (the consumed-resource license). Body literals are materialized by
// ordinary evaluation, so justifications become part of the context.
bool Resolver::validate_stability() {
    const int n = prog_->atom_count();
    for (int pass = 0; pass < n + 2; ++pass) {
        size_t before = table_->mark();
        for (AtomId x = 0; x < n; ++x) {
            const TableEntry* e = table_->lookup(x);
            if (!e || e->permanent || e->status == EntryStatus::ProvenTrue) continue;
            for (int ri : prog_->rules_for(x)) {
                const Rule& rule = prog_->rules[size_t(ri)];
                bool self = false;
                for (const Literal& l : rule.body)
                    if (l.atom == x) self = true;
                if (self) continue;
                bool disabled = false;
                Env venv;
                venv.validation = true;
                venv.assumed_not_false = AtomSet(n);
                for (const Literal& l : rule.body) {
                    Res r{};
                    try {
                        r = eval_lit(venv, l);
                    } catch (const LoopUnwind&) {
                        disabled = true;   // unresolved loop: no firing shown
                        break;
                    }
                    if (!r.success || r.taint.test(x)) {
                        disabled = true;
                        break;
                    }
                }
                if (!disabled) return false;
            }
        }
        if (table_->mark() == before) return true;   // no new lemmas: stable
    }
    return true;
}

bool Resolver::run_commits(const Env& env) const {
    if (env.poisoned) return false;
    bool ok = true;
    // Every flipped re-encounter explored an "A holds" context; the
    // committed table must have proven each such atom.
    env.assumed_not_false.for_each([&](int a) {
        const TableEntry* e = table_->lookup(AtomId(a));
        if (!e || e->status != EntryStatus::ProvenTrue) ok = false;
    });
    if (!ok) return false;
    // Hypothesis dependencies must still stand in the committed context.
    for (const auto& [atom, e] : table_->snapshot()) {
        if (e.permanent || e.status == EntryStatus::YesAvailable) continue;
        e.deps.for_each([&](int d) {
            const TableEntry* de = table_->lookup(AtomId(d));
            if (!de || de->status == EntryStatus::ProvenTrue) ok = false;
        });
        if (!ok) break;
    }
    return ok;
}

void Resolver::harvest(Env& env, int rule_index) {
    const Rule& rule = prog_->rules[size_t(rule_index)];
    trace(env, "replay r" + std::to_string(rule.origin_index + 1) +
                   " lemmas under the standing hypothesis");
    bool saved = env.in_harvest;
    env.in_harvest = true;
    int guard_frame = table_->open_frame();
    size_t all = table_->mark();
    size_t n_size = env.N.stack.size();
    size_t pos_size = env.pos_stack.size();
    int depth0 = env.depth;
    ++env.depth;
    try {
        for (const Literal& l : rule.body) {
            size_t mark = table_->mark();
            Res res = eval_lit(env, l);
            if (!res.success) {
                table_->rewind(mark);
                break;
            }
        }
    } catch (const HarvestAbort&) {
        table_->rewind(all);
        env.N.stack.resize(n_size);
        env.neg_calls.resize(n_size);
        env.pos_stack.resize(pos_size);
        env.depth = depth0;
        trace(env, "replay abandoned");
    }
    table_->close_frame(guard_frame);
    env.depth = depth0;
    env.in_harvest = saved;
}

// ---------------------------------------------------------------------------

namespace {

TableDelta diff(const std::vector<std::pair<AtomId, TableEntry>>& pre,
                const std::vector<std::pair<AtomId, TableEntry>>& post) {
    TableDelta d;
    auto find = [](const std::vector<std::pair<AtomId, TableEntry>>& v, AtomId a) {
        for (const auto& [atom, e] : v)
            if (atom == a) return std::optional<TableEntry>(e);
        return std::optional<TableEntry>();
    };
    for (const auto& [a, e] : post) {
        auto old = find(pre, a);
        if (e.status == EntryStatus::YesAvailable) continue;
        if (!old || !(*old == e)) d.added.push_back({a, e});
        if (old && old->status == EntryStatus::YesAvailable) d.removed_yes.push_back(a);
    }
    return d;
}

} // namespace

Outcome Resolver::drive(Literal lit, bool promote_on_success) {
    auto pre = table_->snapshot();
    size_t snap = table_->mark();
    ledger_.clear();
    Outcome out;
    for (int run = 0;; ++run) {
        if (run >= opt_.max_runs) throw ResourceGuardError("resolver run limit exceeded");
        out.runs = run + 1;
        trace_buf_.clear();
        Env env;
        env.assumed_not_false = AtomSet(prog_->atom_count());
        Res r{};
        try {
            r = eval_lit(env, lit);
        } catch (const LoopUnwind&) {
            // A top-level negative literal's own re-encounter: the query
            // literal is allowed to succeed as a hypothesis.
            table_->on_neg_success(lit.atom, NegSuccessKind::Hypothesis3c,
                                   table_->current_frame(), AtomSet(prog_->atom_count()));
            r = {true, AtomSet(prog_->atom_count()), AtomSet(prog_->atom_count())};
        }
        if (r.success && run_commits(env) && validate_stability()) {
            out.success = true;
            if (promote_on_success) table_->promote_all();
            break;
        }
        // Restore the exact entry state so a replay of the forced choice
        // prefix revisits the very same choice points.
        table_->rewind_exact(snap);
        if (env.prune_to < ledger_.size()) ledger_.resize(env.prune_to);
        if (!advance_ledger()) {
            out.success = false;
            break;
        }
    }
    out.trace = trace_buf_;
    out.delta = diff(pre, table_->snapshot());
    return out;
}

Outcome Resolver::solve(Literal lit) {
    pre_query_table_ = *table_;
    last_query_ = lit;
    has_last_ = true;
    return drive(lit, true);
}

std::vector<Outcome> Resolver::query_sequence(const std::vector<Literal>& lits) {
    std::vector<Outcome> out;
    for (Literal l : lits) out.push_back(solve(l));
    return out;
}

Outcome Resolver::next() {
    if (!has_last_) throw std::logic_error("next() requires a previous query");
    *table_ = pre_query_table_;
    Outcome out;
    if (!advance_ledger()) {
        out.success = false;
        return out;
    }
    // Continue the depth-first search from the last committed exploration.
    size_t snap = table_->mark();
    for (int run = 0;; ++run) {
        if (run >= opt_.max_runs) throw ResourceGuardError("resolver run limit exceeded");
        out.runs = run + 1;
        trace_buf_.clear();
        Env env;
        env.assumed_not_false = AtomSet(prog_->atom_count());
        Res r{};
        try {
            r = eval_lit(env, last_query_);
        } catch (const LoopUnwind&) {
            table_->on_neg_success(last_query_.atom, NegSuccessKind::Hypothesis3c,
                                   table_->current_frame(), AtomSet(prog_->atom_count()));
            r = {true, AtomSet(prog_->atom_count()), AtomSet(prog_->atom_count())};
        }
        if (r.success && run_commits(env) && validate_stability()) {
            out.success = true;
            table_->promote_all();
            break;
        }
        table_->rewind_exact(snap);
        if (env.prune_to < ledger_.size()) ledger_.resize(env.prune_to);
        if (!advance_ledger()) {
            out.success = false;
            break;
        }
    }
    out.trace = trace_buf_;
    return out;
}

Resolver::ConstraintReport Resolver::check_constraints(AtomId q) {
    ConstraintReport rep;
    std::vector<int> relevant = relevant_constraints(*prog_, q);
    auto saved_ledger = ledger_;
    for (int ci : relevant) {
        ProgramTable probe_save = *table_;
        Outcome o = drive(Literal{prog_->constraints[size_t(ci)].guard, true}, false);
        *table_ = probe_save;   // probes leave the context untouched
        rep.verdicts.push_back({ci, o.success});
        rep.admissible = rep.admissible && o.success;
    }
    ledger_ = saved_ledger;
    return rep;
}

Outcome solve(const Program& prog, ProgramTable& tab, Literal lit) {
    Resolver r(prog, tab);
    return r.solve(lit);
}

Outcome query(const Program& prog, ProgramTable& tab, AtomId a) {
    Resolver r(prog, tab);
    return r.query(a);
}

std::vector<Outcome> query_sequence(const Program& prog, const std::vector<AtomId>& atoms) {
    ProgramTable tab = ProgramTable::init(prog);
    Resolver r(prog, tab);
    std::vector<Literal> lits;
    for (AtomId a : atoms) lits.push_back({a, false});
    return r.query_sequence(lits);
}

} // namespace rasq
