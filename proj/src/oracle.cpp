#include "rasq/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rasq {

ORules to_orules(const Program& prog) { return to_orules(prog, all_rules(prog)); }

ORules to_orules(const Program& prog, const RuleSet& rules) {
    ORules out;
    out.reserve(rules.size());
    for (int ri : rules) {
        const Rule& r = prog.rules[size_t(ri)];
        ORule o;
        o.head = r.head;
        for (const Literal& l : r.body) (l.negated ? o.neg : o.pos).push_back(l.atom);
        out.push_back(std::move(o));
    }
    return out;
}

AtomSet heads_of(const ORules& rules, int n) {
    AtomSet h(n);
    for (const auto& r : rules) h.set(r.head);
    return h;
}

// ---------------------------------------------------------------------------

ORules gl_reduct(const ORules& rules, const Interp& i) {
    ORules out;
    for (const auto& r : rules) {
        bool defeated = false;
        for (AtomId b : r.neg)
            if (i.test(b)) { defeated = true; break; }
        if (defeated) continue;
        ORule o;
        o.head = r.head;
        o.pos = r.pos;
        out.push_back(std::move(o));
    }
    return out;
}

Interp least_model(const ORules& pos_rules, int n) {
    Interp m(n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : pos_rules) {
            if (m.test(r.head)) continue;
            bool fire = true;
            for (AtomId b : r.pos)
                if (!m.test(b)) { fire = false; break; }
            if (fire) { m.set(r.head); changed = true; }
        }
    }
    return m;
}

namespace {

std::vector<int> head_list(const ORules& rules, int n) {
    return heads_of(rules, n).members();
}

Interp from_mask(const std::vector<int>& atoms, uint64_t mask, int n) {
    Interp i(n);
    for (size_t k = 0; k < atoms.size(); ++k)
        if ((mask >> k) & 1) i.set(atoms[k]);
    return i;
}

void guard_candidates(size_t k, const OracleLimits& lim) {
    if (k >= 63 || (uint64_t{1} << k) > lim.max_candidates)
        throw SizeGuardError("brute-force enumeration over " + std::to_string(k) +
                             " head atoms exceeds the candidate guard");
}

// Deterministic enumeration over all subsets of `atoms`: apply `fn` to each
// candidate; keep candidates `fn` accepts, in mask order. The parallel path
// must produce the same sequence as the serial one.
template <typename Fn>
std::vector<Interp> enumerate_filter(const std::vector<int>& atoms, int n, Exec exec,
                                     const OracleLimits& lim, Fn&& fn) {
    guard_candidates(atoms.size(), lim);
    const uint64_t total = uint64_t{1} << atoms.size();
    std::vector<Interp> out;
#ifdef _OPENMP
    if (exec == Exec::Parallel && total >= 1024) {
        const uint64_t chunk = 4096;
        for (uint64_t base = 0; base < total; base += chunk) {
            const uint64_t hi = std::min(total, base + chunk);
            std::vector<uint8_t> keep(size_t(hi - base), 0);
            std::vector<Interp> cand(size_t(hi - base));
#pragma omp parallel for schedule(dynamic, 64)
            for (int64_t m = int64_t(base); m < int64_t(hi); ++m) {
                Interp i = from_mask(atoms, uint64_t(m), n);
                if (fn(i)) {
                    keep[size_t(m - int64_t(base))] = 1;
                    cand[size_t(m - int64_t(base))] = std::move(i);
                }
            }
            for (uint64_t m = base; m < hi; ++m)
                if (keep[size_t(m - base)]) out.push_back(std::move(cand[size_t(m - base)]));
        }
        return out;
    }
#else
    (void)exec;
#endif
    for (uint64_t m = 0; m < total; ++m) {
        Interp i = from_mask(atoms, m, n);
        if (fn(i)) out.push_back(std::move(i));
    }
    return out;
}

} // namespace

std::vector<Interp> answer_sets(const Program& prog, Exec exec, const OracleLimits& lim) {
    return answer_sets(to_orules(prog), prog.atom_count(), exec, lim);
}

std::vector<Interp> answer_sets(const ORules& rules, int n, Exec exec, const OracleLimits& lim) {
    std::vector<int> hs = head_list(rules, n);
    return enumerate_filter(hs, n, exec, lim, [&](const Interp& i) {
        return least_model(gl_reduct(rules, i), n) == i;
    });
}

// ---------------------------------------------------------------------------

ORules modified_reduct(const ORules& rules, const Interp& i) {
    ORules out;
    for (const auto& r : rules) {
        bool defeated = false;
        for (AtomId b : r.neg)
            if (i.test(b)) { defeated = true; break; }
        if (!defeated) out.push_back(r);
    }
    return out;
}

namespace {

// Insert guard into an antichain of minimal sets; true if it adds anything.
bool antichain_insert(std::vector<AtomSet>& chain, const AtomSet& g) {
    for (const auto& h : chain)
        if (h.subset_of(g)) return false;   // subsumed
    chain.erase(std::remove_if(chain.begin(), chain.end(),
                               [&](const AtomSet& h) { return g.subset_of(h); }),
                chain.end());
    chain.push_back(g);
    return true;
}

} // namespace

GuardedFixpoint modified_tp_fixpoint(const ORules& rules, int n) {
    GuardedFixpoint fx;
    fx.guards.assign(size_t(n), {});
    fx.hat_t = Interp(n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            // One guard choice per positive-body atom; antichains stay tiny
            // at the scales the oracle accepts.
            std::vector<size_t> pick(r.pos.size(), 0);
            bool feasible = true;
            for (AtomId b : r.pos)
                if (fx.guards[size_t(b)].empty()) { feasible = false; break; }
            if (!feasible) continue;
            for (;;) {
                AtomSet g(n);
                for (AtomId b : r.neg) g.set(b);
                for (size_t k = 0; k < r.pos.size(); ++k)
                    g |= fx.guards[size_t(r.pos[k])][pick[k]];
                if (!g.test(r.head)) {   // blocked when guarded by own negation
                    if (antichain_insert(fx.guards[size_t(r.head)], g)) {
                        fx.hat_t.set(r.head);
                        changed = true;
                    }
                }
                size_t k = 0;
                while (k < pick.size() && ++pick[k] == fx.guards[size_t(r.pos[k])].size())
                    pick[k++] = 0;
                if (k == pick.size()) break;
            }
        }
    }
    return fx;
}

Interp gamma_hat(const ORules& rules, int n, const Interp& i) {
    return modified_tp_fixpoint(modified_reduct(rules, i), n).hat_t;
}

Interp gamma_hat(const Program& prog, const Interp& i) {
    return gamma_hat(to_orules(prog), prog.atom_count(), i);
}

// ---------------------------------------------------------------------------

namespace {

bool rule_supported(const ORule& r, const Interp& i) {
    for (AtomId b : r.pos)
        if (!i.test(b)) return false;
    for (AtomId b : r.neg)
        if (i.test(b)) return false;
    return true;
}

} // namespace

bool is_supported(const ORules& rules, const Interp& i) {
    bool ok = true;
    i.for_each([&](int a) {
        if (!ok) return;
        bool found = false;
        for (const auto& r : rules)
            if (r.head == a && rule_supported(r, i)) { found = true; break; }
        ok = found;
    });
    return ok;
}

bool is_consistently_supported(const ORules& rules, const Interp& i, AtomId a,
                               std::vector<int>* witness) {
    // Non-circular support = derivability from the i-supported rules by
    // positive bodies alone. Witness: first firing rule per atom, by stage.
    const int n = i.universe();
    Interp derived(n);
    std::vector<int> via(size_t(n), -1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int ri = 0; ri < int(rules.size()); ++ri) {
            const auto& r = rules[size_t(ri)];
            if (derived.test(r.head) || !rule_supported(r, i)) continue;
            bool fire = true;
            for (AtomId b : r.pos)
                if (!derived.test(b)) { fire = false; break; }
            if (fire) {
                derived.set(r.head);
                via[size_t(r.head)] = ri;
                changed = true;
            }
        }
    }
    if (!derived.test(a)) return false;
    if (witness) {
        witness->clear();
        std::vector<AtomId> todo{a};
        AtomSet seen(n);
        seen.set(a);
        while (!todo.empty()) {
            AtomId x = todo.back();
            todo.pop_back();
            int ri = via[size_t(x)];
            witness->push_back(ri);
            for (AtomId b : rules[size_t(ri)].pos)
                if (!seen.test(b)) { seen.set(b); todo.push_back(b); }
        }
        std::sort(witness->begin(), witness->end());
    }
    return true;
}

bool is_consistently_supported_enum(const ORules& rules, const Interp& i, AtomId a) {
    // Literal reading of the definition, over explicit rule subsets.
    const size_t m = rules.size();
    if (m > 20) throw SizeGuardError("enumeration cross-check limited to 20 rules");
    // memo over (atom, subset mask): whether atom is CS via exactly that set
    // being available as the ambient S (condition 4 uses subsets of it).
    std::map<std::pair<AtomId, uint32_t>, bool> memo;
    // check(a, mask): exists S ⊆ mask satisfying (1)-(4) for a.
    auto check = [&](auto&& self, AtomId atom, uint32_t avail) -> bool {
        auto key = std::make_pair(atom, avail);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        memo[key] = false;   // cut self-referential searches
        bool ok = false;
        for (uint32_t s = avail;; s = (s - 1) & avail) {
            // conditions over the candidate set s
            int head_rules = 0;
            bool good = s != 0;
            for (size_t ri = 0; ri < m && good; ++ri) {
                if (!((s >> ri) & 1)) continue;
                const auto& r = rules[ri];
                if (!rule_supported(r, i)) good = false;
                if (r.head == atom) ++head_rules;
                for (AtomId b : r.pos)
                    if (b == atom) good = false;
            }
            good = good && head_rules == 1;
            if (good) {
                for (size_t ri = 0; ri < m && good; ++ri) {
                    if (!((s >> ri) & 1)) continue;
                    for (AtomId b : rules[ri].pos)
                        if (!self(self, b, s)) { good = false; break; }
                }
                if (good) { ok = true; break; }
            }
            if (s == 0) break;
        }
        memo[key] = ok;
        return ok;
    };
    return check(check, a, uint32_t((uint64_t{1} << m) - 1));
}

bool is_cs_set(const ORules& rules, const Interp& i) {
    bool ok = true;
    i.for_each([&](int a) { ok = ok && is_consistently_supported(rules, i, AtomId(a)); });
    return ok;
}

bool is_mcs(const ORules& rules, int n, const Interp& i, const OracleLimits& lim) {
    if (!is_cs_set(rules, i)) return false;
    AtomSet hs = heads_of(rules, n);
    if (!i.subset_of(hs)) return false;   // atoms without rules are never supported
    std::vector<int> extra;
    hs.for_each([&](int a) {
        if (!i.test(a)) extra.push_back(a);
    });
    guard_candidates(extra.size(), lim);
    const uint64_t total = uint64_t{1} << extra.size();
    for (uint64_t m = 1; m < total; ++m) {
        Interp j = i;
        for (size_t k = 0; k < extra.size(); ++k)
            if ((m >> k) & 1) j.set(extra[k]);
        if (is_cs_set(rules, j)) return false;
    }
    return true;
}

bool is_mcs(const Program& prog, const Interp& i, const OracleLimits& lim) {
    return is_mcs(to_orules(prog), prog.atom_count(), i, lim);
}

// ---------------------------------------------------------------------------

namespace {

// Alternating-fixpoint well-founded model over oracle rules.
WellFoundedModel wfs_orules(const ORules& rules, int n) {
    auto closure = [&](const AtomSet& false_set, bool against_false) {
        AtomSet out(n);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : rules) {
                if (out.test(r.head)) continue;
                bool fire = true;
                for (AtomId b : r.pos)
                    if (!out.test(b)) { fire = false; break; }
                if (fire)
                    for (AtomId b : r.neg) {
                        bool neg_holds = against_false ? false_set.test(b) : !false_set.test(b);
                        if (!neg_holds) { fire = false; break; }
                    }
                if (fire) { out.set(r.head); changed = true; }
            }
        }
        return out;
    };
    AtomSet truths(n);
    for (;;) {
        AtomSet possible = closure(truths, false);   // not B holds unless B proven
        AtomSet false_set(n);
        for (int a = 0; a < n; ++a)
            if (!possible.test(a)) false_set.set(a);
        AtomSet next = closure(false_set, true);
        if (next == truths) return WellFoundedModel{next, false_set};
        truths = next;
    }
}

// The component behaves like its well-founded residue: definite atoms are
// settled (they hold in every resource-based answer set of the component),
// and the guarded enumeration runs over the undefined part only.
ORules wfs_residual(const ORules& rules, const WellFoundedModel& w) {
    ORules out;
    for (const auto& r : rules) {
        if (w.w_plus.test(r.head) || w.w_minus.test(r.head)) continue;
        ORule s;
        s.head = r.head;
        bool dead = false;
        for (AtomId b : r.pos) {
            if (w.w_minus.test(b)) { dead = true; break; }
            if (!w.w_plus.test(b)) s.pos.push_back(b);
        }
        if (dead) continue;
        for (AtomId b : r.neg) {
            if (w.w_plus.test(b)) { dead = true; break; }
            if (!w.w_minus.test(b)) s.neg.push_back(b);
        }
        if (dead) continue;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::vector<Interp> ras_standalone(const ORules& comp, int n, Exec exec,
                                   const OracleLimits& lim) {
    WellFoundedModel w = wfs_orules(comp, n);
    ORules rules = wfs_residual(comp, w);
    // Candidate sets range over atoms with a rule that could actually fire:
    // a rule mentioning its own head (either sign) never derives it.
    AtomSet fireable(n);
    for (const auto& r : rules) {
        bool self = false;
        for (AtomId b : r.pos)
            if (b == r.head) self = true;
        for (AtomId b : r.neg)
            if (b == r.head) self = true;
        if (!self) fireable.set(r.head);
    }
    std::vector<int> hs = fireable.members();
    guard_candidates(hs.size(), lim);
    const uint64_t total = uint64_t{1} << hs.size();

    // Γ̂ images of every Π-based candidate set, deduplicated.
    std::set<Interp> uniq;
#ifdef _OPENMP
    if (exec == Exec::Parallel && total >= 1024) {
        const uint64_t chunk = 4096;
        for (uint64_t base = 0; base < total; base += chunk) {
            const uint64_t hi = std::min(total, base + chunk);
            std::vector<Interp> images(size_t(hi - base));
#pragma omp parallel for schedule(dynamic, 64)
            for (int64_t m = int64_t(base); m < int64_t(hi); ++m)
                images[size_t(m - int64_t(base))] =
                    gamma_hat(rules, n, from_mask(hs, uint64_t(m), n));
            for (auto& img : images) uniq.insert(std::move(img));
        }
    } else
#endif
    {
        for (uint64_t m = 0; m < total; ++m)
            uniq.insert(gamma_hat(rules, n, from_mask(hs, m, n)));
    }

    // Keep the maximal consistently supported images.
    std::vector<Interp> cands(uniq.begin(), uniq.end());
    std::vector<uint8_t> ok(cands.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel && cands.size() > 8)
#endif
    for (int64_t k = 0; k < int64_t(cands.size()); ++k)
        ok[size_t(k)] = is_mcs(rules, n, cands[size_t(k)], lim);
    std::vector<Interp> out;
    for (size_t k = 0; k < cands.size(); ++k)
        if (ok[k]) {
            Interp m = cands[k];
            m |= w.w_plus;
            out.push_back(std::move(m));
        }
    return out;
}

ORules simplify_component(const ORules& comp, const Interp& lower, int n) {
    // (i) drop rules defeated by the lower models.
    ORules kept = modified_reduct(comp, lower);
    AtomSet hs = heads_of(kept, n);
    // (ii) drop satisfied literals: not D with D neither a head here nor in
    // lower; positive atoms already in lower.
    for (auto& r : kept) {
        std::vector<AtomId> pos, neg;
        for (AtomId b : r.pos)
            if (!lower.test(b)) pos.push_back(b);
        for (AtomId b : r.neg)
            if (hs.test(b) || lower.test(b)) neg.push_back(b);
        r.pos = std::move(pos);
        r.neg = std::move(neg);
    }
    return kept;
}

std::vector<Interp> ras_sets(const Program& prog, Exec exec, const OracleLimits& lim) {
    return ras_sets(prog, decompose(prog), exec, lim);
}

std::vector<Interp> ras_sets(const Program& prog, const Layering& layering, Exec exec,
                             const OracleLimits& lim) {
    const int n = prog.atom_count();
    std::set<Interp> acc;
    // Depth-first over per-layer model choices.
    struct Walk {
        const Program& prog;
        const Layering& lay;
        int n;
        Exec exec;
        const OracleLimits& lim;
        std::set<Interp>& acc;
        void go(size_t li, const Interp& lower) {
            if (li == lay.layers.size()) {
                acc.insert(lower);
                return;
            }
            ORules comp = to_orules(prog, lay.layers[li].rules);
            ORules simplified = simplify_component(comp, lower, n);
            for (const Interp& m : ras_standalone(simplified, n, exec, lim)) {
                Interp next = lower;
                next |= m;
                go(li + 1, next);
            }
        }
    };
    Walk w{prog, layering, n, exec, lim, acc};
    w.go(0, Interp(n));
    return {acc.begin(), acc.end()};
}

bool admissible(const Program& prog, const Interp& m) {
    for (const auto& c : prog.constraints)
        if (m.test(c.guard)) return false;
    return true;
}

std::vector<std::vector<std::string>> to_sorted_names(const Program& prog,
                                                      const std::vector<Interp>& models) {
    std::vector<std::vector<std::string>> out;
    for (const auto& m : models) {
        std::vector<std::string> names;
        m.for_each([&](int a) { names.push_back(prog.name(a)); });
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void sort_models(const Program& prog, std::vector<Interp>& models) {
    std::stable_sort(models.begin(), models.end(), [&](const Interp& x, const Interp& y) {
        std::vector<std::string> nx, ny;
        x.for_each([&](int a) { nx.push_back(prog.name(a)); });
        y.for_each([&](int a) { ny.push_back(prog.name(a)); });
        std::sort(nx.begin(), nx.end());
        std::sort(ny.begin(), ny.end());
        return nx < ny;
    });
}

} // namespace rasq
