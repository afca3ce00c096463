#ifndef RASQ_GRAPH_HPP
#define RASQ_GRAPH_HPP

#include <string>
#include <vector>

#include "rasq/program.hpp"

namespace rasq {

// Signed dependency graph: edge head -> body atom, negative iff the body
// occurrence is negated. Self-dependency only via nonempty paths.
struct DepGraph {
    int n = 0;
    struct Edge {
        AtomId to;
        bool negative;
        bool operator==(const Edge&) const = default;
    };
    std::vector<std::vector<Edge>> out;   // indexed by atom
};

// Rule subsets are sorted indices into Program::rules; a subprogram view.
using RuleSet = std::vector<int>;

RuleSet all_rules(const Program& prog);

DepGraph build_graph(const Program& prog);
DepGraph build_graph(const Program& prog, const RuleSet& rules);

// All atoms reachable from `a` via nonempty paths.
AtomSet dependencies_of(const DepGraph& g, AtomId a);
AtomSet dependencies_of(const DepGraph& g, const AtomSet& atoms);

// Relevant rules: those whose head lies in atoms ∪ dependencies_of(atoms).
RuleSet rel_rul(const Program& prog, const AtomSet& atoms);
RuleSet rel_rul(const Program& prog, const RuleSet& within, const AtomSet& atoms);
RuleSet rel_rul(const Program& prog, AtomId a);

enum class ComponentKind { Acyclic, PositivelyCyclic, NegativelyCyclic, Jigsaw };

const char* to_string(ComponentKind k);

// Classification per head self-dependency: acyclic when no head depends on
// itself; cyclic when every head does (negatively if some such cycle crosses
// a negative edge); Jigsaw otherwise.
ComponentKind classify(const Program& prog, const RuleSet& rules);
ComponentKind classify(const Program& prog);

struct Layer {
    RuleSet rules;
    ComponentKind kind;
};

struct Layering {
    std::vector<Layer> layers;   // bottom first; layers partition the rules
};

// Bottom layer = union of maximal strata none of which sits on top of
// another; each further layer is a jigsaw program on top of the lower ones.
Layering decompose(const Program& prog);
// Alternative valid layering (one strongly connected piece per layer, in
// topological order). Used to exercise layering invariance.
Layering decompose_fine(const Program& prog);

// Constraints ":- H" with rel_rul(Π;q) ⊆ rel_rul(Π;H).
std::vector<int> relevant_constraints(const Program& prog, AtomId q);

// Textual edge list ("a -+-> b" / "a --not-> b"), sorted, for CLI dumping.
std::string dump_graph(const Program& prog);

} // namespace rasq

#endif
