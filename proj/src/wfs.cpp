#include "rasq/wfs.hpp"

namespace rasq {

namespace {

// Least fixpoint of the immediate-consequence step where a negative literal
// not B holds iff either (mode == AgainstFalse) B ∈ ref, or
// (mode == UnlessTrue) B ∉ ref.
enum class NegMode { AgainstFalse, UnlessTrue };

AtomSet closure(const Program& prog, const RuleSet& rules, const AtomSet& ref, NegMode mode) {
    AtomSet out(prog.atom_count());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int ri : rules) {
            const Rule& r = prog.rules[size_t(ri)];
            if (out.test(r.head)) continue;
            bool fire = true;
            for (const Literal& l : r.body) {
                if (!l.negated) {
                    if (!out.test(l.atom)) { fire = false; break; }
                } else if (mode == NegMode::AgainstFalse ? !ref.test(l.atom) : ref.test(l.atom)) {
                    fire = false;
                    break;
                }
            }
            if (fire) { out.set(r.head); changed = true; }
        }
    }
    return out;
}

} // namespace

WellFoundedModel wfs(const Program& prog) { return wfs(prog, all_rules(prog)); }

WellFoundedModel wfs(const Program& prog, const RuleSet& rules) {
    const int n = prog.atom_count();
    AtomSet truths(n);
    for (;;) {
        // Atoms with some derivation not blocked by current truths.
        AtomSet possible = closure(prog, rules, truths, NegMode::UnlessTrue);
        AtomSet false_set(n);
        for (int a = 0; a < n; ++a)
            if (!possible.test(a)) false_set.set(a);
        // Atoms derivable once everything impossible is treated as false.
        AtomSet next = closure(prog, rules, false_set, NegMode::AgainstFalse);
        if (next == truths) return WellFoundedModel{next, false_set};
        truths = next;
    }
}

Truth definite_status(const Program& prog, AtomId a) {
    if (prog.rules_for(a).empty()) return Truth::False;
    WellFoundedModel m = wfs(prog, rel_rul(prog, a));
    if (m.w_plus.test(a)) return Truth::True;
    if (m.w_minus.test(a)) return Truth::False;
    return Truth::Undefined;
}

const WellFoundedModel& WfsCache::model() const {
    std::call_once(once_, [&] { model_ = wfs(*prog_); });
    return model_;
}

Truth WfsCache::status(AtomId a) const {
    const WellFoundedModel& m = model();
    if (m.w_plus.test(a)) return Truth::True;
    if (m.w_minus.test(a)) return Truth::False;
    return Truth::Undefined;
}

} // namespace rasq
