#include "rasq/harness.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rasq/resolver.hpp"
#include "rasq/table.hpp"
#include "rasq/wfs.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rasq {

namespace {

using Detail = std::optional<std::string>;

std::string name_set(const Program& p, const Interp& m) {
    std::vector<std::string> names;
    m.for_each([&](int a) { names.push_back(p.name(a)); });
    std::sort(names.begin(), names.end());
    std::string s = "{";
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) s += ",";
        s += names[i];
    }
    return s + "}";
}

bool free_query_succeeds(const Program& prog, AtomId a) {
    ProgramTable tab = ProgramTable::init(prog);
    Resolver r(prog, tab);
    return r.query(a).success;
}

Detail viol_free_queries(const Program& prog, int* count) {
    std::vector<Interp> ras = ras_sets(prog);
    WellFoundedModel m = wfs(prog);
    for (AtomId a = 0; a < prog.atom_count(); ++a) {
        bool expect = false;
        for (const auto& M : ras)
            if (M.test(a)) { expect = true; break; }
        bool got = free_query_succeeds(prog, a);
        if (count) ++*count;
        if (got != expect)
            return "free query " + prog.name(a) + (got ? " succeeds" : " fails") +
                   " but oracle membership is " + (expect ? "true" : "false");
        if (m.w_plus.test(a) && !got) return "W+ atom " + prog.name(a) + " fails";
        if (m.w_minus.test(a) && got) return "W- atom " + prog.name(a) + " succeeds";
    }
    return std::nullopt;
}

Detail check_sequence(const Program& prog, const std::vector<Interp>& ras,
                      const std::vector<AtomId>& seq) {
    ProgramTable tab = ProgramTable::init(prog);
    Resolver r(prog, tab);
    AtomSet succeeded(prog.atom_count()), failed(prog.atom_count());
    for (AtomId a : seq) {
        if (r.query(a).success) succeeded.set(a);
        else failed.set(a);
    }
    for (const auto& M : ras)
        if (succeeded.subset_of(M) && !failed.intersects(M)) return std::nullopt;
    std::string s = "sequence";
    for (AtomId a : seq) s += " " + prog.name(a);
    return s + ": partition succeeded=" + name_set(prog, succeeded) + " failed=" +
           name_set(prog, failed) + " realized by no resource-based answer set";
}

Detail viol_sequences(const Program& prog, const HarnessOptions& opt, int* count) {
    std::vector<Interp> ras = ras_sets(prog);
    const int n = prog.atom_count();
    std::vector<AtomId> atoms(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) atoms[size_t(i)] = AtomId(i);

    auto run = [&](const std::vector<AtomId>& seq) -> Detail {
        if (count) ++*count;
        return check_sequence(prog, ras, seq);
    };

    if (n <= opt.sequence_atom_limit) {
        // Every permutation of up to three distinct atoms.
        for (int i = 0; i < n; ++i) {
            if (auto d = run({atoms[size_t(i)]})) return d;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (auto d = run({atoms[size_t(i)], atoms[size_t(j)]})) return d;
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    if (auto d = run({atoms[size_t(i)], atoms[size_t(j)], atoms[size_t(k)]}))
                        return d;
                }
            }
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(opt.sample_seed * 0x9e3779b97f4a7c15ull + uint64_t(n));
    for (int s = 0; s < opt.sequence_samples; ++s) {
        std::vector<AtomId> pool = atoms;
        for (size_t i = pool.size(); i > 1; --i)
            std::swap(pool[i - 1], pool[rng() % i]);
        size_t len = 1 + rng() % 3;
        if (auto d = run({pool.begin(), pool.begin() + std::min(len, pool.size())})) return d;
    }
    return std::nullopt;
}

Detail viol_antichain(const Program& prog) {
    std::vector<Interp> ras = ras_sets(prog);
    for (size_t i = 0; i < ras.size(); ++i)
        for (size_t j = 0; j < ras.size(); ++j)
            if (i != j && ras[i].subset_of(ras[j]) && ras[i] != ras[j])
                return name_set(prog, ras[i]) + " is a strict subset of " + name_set(prog, ras[j]);
    return std::nullopt;
}

Detail viol_as_subset(const Program& prog) {
    std::vector<Interp> ras = ras_sets(prog);
    for (const auto& A : answer_sets(prog))
        if (std::find(ras.begin(), ras.end(), A) == ras.end())
            return "answer set " + name_set(prog, A) + " is not a resource-based answer set";
    return std::nullopt;
}

Detail viol_nonempty(const Program& prog) {
    std::vector<Interp> ras = ras_sets(prog);
    if (ras.empty()) return std::string("ras_sets is empty");
    for (const auto& M : ras)
        if (M.none() && ras.size() != 1)
            return "empty RAS coexists with " + std::to_string(ras.size() - 1) + " others";
    return std::nullopt;
}

Detail viol_wplus_subset(const Program& prog) {
    WellFoundedModel m = wfs(prog);
    for (const auto& M : ras_sets(prog))
        if (!m.w_plus.subset_of(M))
            return "W+ not contained in RAS " + name_set(prog, M);
    return std::nullopt;
}

Detail viol_acyclic(const Program& prog) {
    if (prog.rules.empty()) return std::nullopt;
    if (classify(prog) != ComponentKind::Acyclic) return std::nullopt;
    std::vector<Interp> ras = ras_sets(prog);
    std::vector<Interp> as = answer_sets(prog);
    WellFoundedModel m = wfs(prog);
    if (ras.size() != 1 || as.size() != 1 || ras[0] != as[0] || ras[0] != m.w_plus)
        return std::string("acyclic program: ras/answer sets/W+ disagree");
    return std::nullopt;
}

Detail viol_layering(const Program& prog) {
    if (prog.rules.empty()) return std::nullopt;
    auto a = ras_sets(prog, decompose(prog));
    auto b = ras_sets(prog, decompose_fine(prog));
    if (a != b) return std::string("ras_sets differ across the two decompositions");
    return std::nullopt;
}

Detail viol_mcs_equiv(const Program& prog) {
    std::vector<Interp> ras = ras_sets(prog);
    ORules rules = to_orules(prog);
    const int n = prog.atom_count();
    std::vector<int> hs = heads_of(rules, n).members();
    if (hs.size() > 16) return std::nullopt;   // guard
    const uint64_t total = uint64_t{1} << hs.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
        Interp i(n);
        for (size_t k = 0; k < hs.size(); ++k)
            if ((mask >> k) & 1) i.set(hs[k]);
        bool mcs = is_mcs(rules, n, i);
        bool in_ras = std::find(ras.begin(), ras.end(), i) != ras.end();
        if (mcs != in_ras)
            return name_set(prog, i) + (mcs ? " is an MCS but not a RAS" : " is a RAS but not an MCS");
    }
    return std::nullopt;
}

Detail viol_gamma_antimonotone(const Program& prog, uint64_t seed) {
    ORules rules = to_orules(prog);
    const int n = prog.atom_count();
    if (n == 0) return std::nullopt;
    std::mt19937_64 rng(seed ^ 0xabcdef12345ull);
    for (int t = 0; t < 8; ++t) {
        Interp i1(n), i2(n);
        for (int a = 0; a < n; ++a) {
            int r = int(rng() % 4);
            if (r >= 2) i2.set(a);          // i2 member
            if (r == 3) i1.set(a);          // i1 ⊆ i2
        }
        if (!gamma_hat(rules, n, i2).subset_of(gamma_hat(rules, n, i1)))
            return "gamma_hat not antimonotone for I1=" + name_set(prog, i1) +
                   " I2=" + name_set(prog, i2);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shrinking

Program rebuild_without(const Program& prog, int drop_rule, int drop_lit) {
    Program p;
    for (AtomId a = 0; a < prog.atom_count(); ++a) p.intern(prog.name(a));
    for (int ri = 0; ri < int(prog.rules.size()); ++ri) {
        if (ri == drop_rule && drop_lit < 0) continue;
        Rule r = prog.rules[size_t(ri)];
        if (ri == drop_rule && drop_lit >= 0 && drop_lit < int(r.body.size()))
            r.body.erase(r.body.begin() + drop_lit);
        r.origin_index = int(p.rules.size());
        p.rules.push_back(std::move(r));
    }
    p.rebuild_index();
    return p;
}

Program shrink(Program prog, const std::function<bool(const Program&)>& still_fails) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (int ri = 0; ri < int(prog.rules.size()); ++ri) {
            Program cand = rebuild_without(prog, ri, -1);
            bool fails = false;
            try {
                fails = still_fails(cand);
            } catch (const std::exception&) {
                fails = false;
            }
            if (fails) {
                prog = std::move(cand);
                progress = true;
                break;
            }
        }
        if (progress) continue;
        for (int ri = 0; ri < int(prog.rules.size()) && !progress; ++ri)
            for (int li = 0; li < int(prog.rules[size_t(ri)].body.size()); ++li) {
                Program cand = rebuild_without(prog, ri, li);
                bool fails = false;
                try {
                    fails = still_fails(cand);
                } catch (const std::exception&) {
                    fails = false;
                }
                if (fails) {
                    prog = std::move(cand);
                    progress = true;
                    break;
                }
            }
    }
    return prog;
}

} // namespace

CheckReport check_program(const Program& prog, const HarnessOptions& opt) {
    CheckReport rep;
    struct Prop {
        const char* name;
        std::function<Detail(const Program&)> fn;
        bool enabled;
    };
    int* fq = &rep.free_queries;
    int* sq = &rep.sequences;
    std::vector<Prop> props = {
        {"free-query-vs-oracle",
         [&, fq](const Program& p) { return viol_free_queries(p, fq); },
         opt.check_free_queries},
        {"contextual-partition",
         [&, sq](const Program& p) { return viol_sequences(p, opt, sq); },
         opt.check_sequences},
        {"antichain", viol_antichain, opt.check_invariants},
        {"answer-sets-subset", viol_as_subset, opt.check_invariants},
        {"ras-nonempty", viol_nonempty, opt.check_invariants},
        {"wplus-subset", viol_wplus_subset, opt.check_invariants},
        {"acyclic-coincidence", viol_acyclic, opt.check_invariants},
        {"layering-invariance", viol_layering, opt.check_invariants},
        {"gamma-antimonotone",
         [&](const Program& p) { return viol_gamma_antimonotone(p, opt.sample_seed); },
         opt.check_invariants},
        {"mcs-equivalence", viol_mcs_equiv, opt.check_mcs_equivalence},
    };
    for (auto& prop : props) {
        if (!prop.enabled) continue;
        Detail d;
        try {
            d = prop.fn(prog);
        } catch (const SizeGuardError&) {
            continue;   // out of desk-scale bounds; skipped
        } catch (const std::exception& ex) {
            d = std::string("exception: ") + ex.what();
        }
        if (d) {
            // Counter-counting side effects of fq/sq during shrink are not
            // meaningful; shrink with counters detached.
            auto pred = [&](const Program& cand) {
                try {
                    if (std::string(prop.name) == "free-query-vs-oracle")
                        return viol_free_queries(cand, nullptr).has_value();
                    if (std::string(prop.name) == "contextual-partition")
                        return viol_sequences(cand, opt, nullptr).has_value();
                    return prop.fn(cand).has_value();
                } catch (const std::exception&) {
                    return false;
                }
            };
            Program small = shrink(prog, pred);
            rep.ok = false;
            rep.violations.push_back({prop.name, *d, to_text(small)});
        }
    }
    return rep;
}

FuzzReport fuzz(int count, const GenConfig& base, const HarnessOptions& opt, bool parallel) {
    FuzzReport rep;
    rep.programs = count;
    std::vector<CheckReport> reports(static_cast<size_t>(count));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int i = 0; i < count; ++i) {
        GenConfig cfg = base;
        cfg.seed = base.seed + uint64_t(i);
        HarnessOptions o = opt;
        o.sample_seed = cfg.seed;
        Program p = gen_program(cfg);
        reports[size_t(i)] = check_program(p, o);
    }
    for (const auto& r : reports) {
        rep.free_queries += r.free_queries;
        rep.sequences += r.sequences;
        for (const auto& v : r.violations) rep.violations.push_back(v);
    }
    return rep;
}

std::string to_json(const FuzzReport& rep) {
    nlohmann::json j;
    j["programs"] = rep.programs;
    j["free_queries"] = rep.free_queries;
    j["sequences"] = rep.sequences;
    j["ok"] = rep.ok();
    j["violations"] = nlohmann::json::array();
    for (const auto& v : rep.violations) {
        nlohmann::json jv;
        jv["property"] = v.property;
        jv["detail"] = v.detail;
        jv["program"] = v.program_text;
        j["violations"].push_back(jv);
    }
    return j.dump(2);
}

} // namespace rasq
