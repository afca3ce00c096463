#ifndef RASQ_ORACLE_HPP
#define RASQ_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rasq/graph.hpp"
#include "rasq/program.hpp"
#include "rasq/wfs.hpp"

namespace rasq {

struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Oracle-internal rule form: positive/negative bodies split, mutable under
// component simplification.
struct ORule {
    AtomId head;
    std::vector<AtomId> pos, neg;
    bool operator==(const ORule&) const = default;
};
using ORules = std::vector<ORule>;

using Interp = AtomSet;

ORules to_orules(const Program& prog);
ORules to_orules(const Program& prog, const RuleSet& rules);
AtomSet heads_of(const ORules& rules, int n);

enum class Exec { Serial, Parallel };

struct OracleLimits {
    uint64_t max_candidates = uint64_t{1} << 20;
};

// --- Classical machinery ---------------------------------------------------

// GL-reduct: drop rules defeated by I, strip remaining negative literals.
ORules gl_reduct(const ORules& rules, const Interp& i);

// Least model of a positive program (fixpoint of T from the empty set).
Interp least_model(const ORules& pos_rules, int n);

// All I with least_model(gl_reduct(P,I)) = I. Deterministic order.
std::vector<Interp> answer_sets(const Program& prog, Exec exec = Exec::Parallel,
                                const OracleLimits& lim = {});
std::vector<Interp> answer_sets(const ORules& rules, int n, Exec exec = Exec::Parallel,
                                const OracleLimits& lim = {});

// --- Resource-based machinery ----------------------------------------------

// Modified reduct: drop rules defeated by I; keep negative literals.
ORules modified_reduct(const ORules& rules, const Interp& i);

// Least contradiction-free Herbrand set: guarded immediate-consequence
// fixpoint. `guards` holds the antichain of minimal derivable guards per
// atom (empty vector: atom not derivable).
struct GuardedFixpoint {
    std::vector<std::vector<AtomSet>> guards;
    Interp hat_t;
};
GuardedFixpoint modified_tp_fixpoint(const ORules& rules, int n);

// hat_t of the modified reduct of `rules` modulo `i`.
Interp gamma_hat(const ORules& rules, int n, const Interp& i);
Interp gamma_hat(const Program& prog, const Interp& i);

// Every atom of i heads a rule whose positive body ⊆ i, negative body
// disjoint from i.
bool is_supported(const ORules& rules, const Interp& i);

// Consistent support: non-circular derivation from rules supported in i.
// Fills `witness` (rule indices into `rules`) when non-null and supported.
bool is_consistently_supported(const ORules& rules, const Interp& i, AtomId a,
                               std::vector<int>* witness = nullptr);
// Literal-definition cross-check over explicit rule subsets (≤ ~16 rules).
bool is_consistently_supported_enum(const ORules& rules, const Interp& i, AtomId a);

bool is_cs_set(const ORules& rules, const Interp& i);
bool is_mcs(const ORules& rules, int n, const Interp& i, const OracleLimits& lim = {});
bool is_mcs(const Program& prog, const Interp& i, const OracleLimits& lim = {});

// Resource-based answer sets of a standalone program: Γ̂ images of Π-based
// candidate sets that are maximal consistently supported.
std::vector<Interp> ras_standalone(const ORules& rules, int n, Exec exec = Exec::Parallel,
                                   const OracleLimits& lim = {});

// Layer simplification w.r.t. the union of lower-layer models.
ORules simplify_component(const ORules& comp, const Interp& lower, int n);

// Resource-based answer sets via the layered decomposition.
std::vector<Interp> ras_sets(const Program& prog, Exec exec = Exec::Parallel,
                             const OracleLimits& lim = {});
std::vector<Interp> ras_sets(const Program& prog, const Layering& layering,
                             Exec exec = Exec::Parallel, const OracleLimits& lim = {});

// Constraint filter: every guard atom must be absent.
bool admissible(const Program& prog, const Interp& m);

// Canonical output order: lexicographic by sorted atom-name lists.
std::vector<std::vector<std::string>> to_sorted_names(const Program& prog,
                                                      const std::vector<Interp>& models);
void sort_models(const Program& prog, std::vector<Interp>& models);

} // namespace rasq

#endif
