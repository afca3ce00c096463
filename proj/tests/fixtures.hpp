#ifndef RASQ_TESTS_FIXTURES_HPP
#define RASQ_TESTS_FIXTURES_HPP

#include <set>
#include <string>
#include <vector>

#include "rasq/oracle.hpp"
#include "rasq/program.hpp"

namespace fixtures {

// Pi1: unique empty resource-based answer set.
inline const char* P1 = "old :- not old.";

// Pi2: answer set {old}.
inline const char* P2 =
    "old :- not old.\n"
    "old :- not young.";

// Pi3: still {old}; young unprovable once not young is consumed.
inline const char* P3 =
    "old :- not old.\n"
    "old :- not young.\n"
    "young :- old.";

// Ternary odd cycle: no answer sets, three resource-based ones.
inline const char* VACATION =
    "beach :- not mountain.\n"
    "mountain :- not travel.\n"
    "travel :- not beach.";

// The walkthrough program (r1..r8).
inline const char* EX8 =
    "a :- not g.\n"
    "g :- not a.\n"
    "s :- not p.\n"
    "p :- h.\n"
    "h :- not p.\n"
    "f :- not a, d.\n"
    "f :- not g, e.\n"
    "e.";

// Backtracking with hypothesis retraction.
inline const char* QABC =
    "q :- not a, c.\n"
    "q :- not b.\n"
    "a :- not b.\n"
    "b :- not a.";

// Forced-to-failure through a positive edge.
inline const char* FORCE =
    "p :- a.\n"
    "a :- not p.";

// FORCE variant with a definite failure that retracts the hypothesis
// (fact q added; the body's not q then definitely fails).
inline const char* FORCEQ =
    "p :- a.\n"
    "a :- not p, not q.\n"
    "q.";

inline const char* EVEN =
    "a :- not b.\n"
    "b :- not a.";

// Hypothesis not b retracted on the definite failure of not e.
inline const char* EVEN3 =
    "a :- not b, not e.\n"
    "b :- not a.\n"
    "e.";

// Recommender corpus (non-ground); person(george) and the preference parts
// are appended by the helpers below.
inline const char* RECOMMENDER_BASE =
    "formal_dress(P) :- person(P), not normal_dress(P), old_fashioned(P).\n"
    "normal_dress(P) :- person(P), not eccentric_dress(P).\n"
    "eccentric_dress(P) :- person(P), not formal_dress(P), young_mind(P).\n"
    "old(P) :- person(P), not middleaged(P).\n"
    "middleaged(P) :- person(P), not young(P).\n"
    "young(P) :- person(P), not old(P).\n"
    "old_fashioned(P) :- person(P), not young_mind(P), not noof(P).\n"
    "noof(P) :- person(P), not old_fashioned(P).\n"
    "young_mind(P) :- person(P), not old_fashioned(P), not noym(P).\n"
    "noym(P) :- person(P), not young_mind(P).\n"
    "admitted_elegant_restaurant(P) :- person(P), formal_dress(P).\n"
    "admitted_disco(P) :- person(P), eccentric_dress(P).\n"
    "go_disco(P) :- person(P), young(P), admitted_disco(P).\n"
    "go_elegant_restaurant(P) :- person(P), admitted_elegant_restaurant(P).\n"
    "go_elegant_restaurant(P) :- person(P), middleaged(P), admitted_elegant_restaurant(P).\n"
    "go_sightseeing(P) :- person(P).\n"
    "go_out(P) :- middleaged(P), go_elegant_restaurant(P).\n"
    "go_out(P) :- old(P), go_elegant_restaurant(P).\n"
    "go_out(P) :- young(P), go_disco(P).\n"
    "go_out(P) :- go_sightseeing(P).\n";

inline std::string recommender_george() {
    return std::string(RECOMMENDER_BASE) + "person(george).\n";
}

inline std::string recommender_george_pref() {
    return recommender_george() +
           "preference(P) :- person(P), go_disco(P).\n"
           ":- not preference(P).\n";
}

inline rasq::Program parse(const std::string& text) { return rasq::parse_program(text); }

inline rasq::AtomId atom(const rasq::Program& p, const std::string& name) {
    auto id = p.find(name);
    if (!id) throw std::runtime_error("fixture atom not found: " + name);
    return *id;
}

inline rasq::Interp interp(const rasq::Program& p, const std::vector<std::string>& names) {
    rasq::Interp m(p.atom_count());
    for (const auto& n : names) m.set(atom(p, n));
    return m;
}

inline std::set<std::vector<std::string>> model_names(const rasq::Program& p,
                                                      const std::vector<rasq::Interp>& models) {
    auto v = rasq::to_sorted_names(p, models);
    return {v.begin(), v.end()};
}

} // namespace fixtures

#endif
