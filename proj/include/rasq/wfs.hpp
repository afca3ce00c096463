#ifndef RASQ_WFS_HPP
#define RASQ_WFS_HPP

#include <mutex>

#include "rasq/graph.hpp"
#include "rasq/program.hpp"

namespace rasq {

struct WellFoundedModel {
    AtomSet w_plus;    // true
    AtomSet w_minus;   // false; everything else is undefined
    bool operator==(const WellFoundedModel&) const = default;
};

enum class Truth { True, False, Undefined };

// Alternating-fixpoint well-founded model of the (sub)program.
WellFoundedModel wfs(const Program& prog);
WellFoundedModel wfs(const Program& prog, const RuleSet& rules);

// Definite verdict for one atom: True iff in W+, False iff in W- (atoms with
// no rules are False). Computed over the relevant subprogram.
Truth definite_status(const Program& prog, AtomId a);

// Per-program memo for the resolver's definite checks; safe for concurrent
// readers once a session owns it.
class WfsCache {
public:
    explicit WfsCache(const Program& prog) : prog_(&prog) {}
    const WellFoundedModel& model() const;
    Truth status(AtomId a) const;

private:
    const Program* prog_;
    mutable std::once_flag once_;
    mutable WellFoundedModel model_{};
};

} // namespace rasq

#endif
