#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "rasq/graph.hpp"

using namespace rasq;
using fixtures::atom;
using fixtures::parse;

namespace {

RuleSet rules_named(const Program& p, std::initializer_list<int> one_based) {
    RuleSet rs;
    for (int i : one_based) rs.push_back(i - 1);
    std::sort(rs.begin(), rs.end());
    return rs;
}

} // namespace

TEST_CASE("build_graph on EX8") {
    Program p = parse(fixtures::EX8);
    DepGraph g = build_graph(p);
    auto has_edge = [&](const char* from, const char* to, bool neg) {
        for (const auto& e : g.out[size_t(atom(p, from))])
            if (e.to == atom(p, to) && e.negative == neg) return true;
        return false;
    };
    CHECK(has_edge("a", "g", true));
    CHECK(has_edge("g", "a", true));
    CHECK(has_edge("h", "p", true));
    CHECK(has_edge("p", "h", false));
    CHECK(has_edge("f", "d", false));
    CHECK_FALSE(has_edge("e", "d", false));   // fact: no outgoing edges
}

TEST_CASE("build_graph: small programs") {
    Program p = parse("p :- a.\na :- not p.");
    DepGraph g = build_graph(p);
    CHECK(g.out[size_t(atom(p, "p"))].size() == 1);
    CHECK_FALSE(g.out[size_t(atom(p, "p"))][0].negative);
    CHECK(g.out[size_t(atom(p, "a"))][0].negative);
}

TEST_CASE("dependencies_of EX8: f reaches {a,g,d,e}") {
    Program p = parse(fixtures::EX8);
    AtomSet deps = dependencies_of(build_graph(p), atom(p, "f"));
    AtomSet expect = fixtures::interp(p, {"a", "g", "d", "e"});
    CHECK(deps == expect);
}

TEST_CASE("dependencies_of: isolated fact and self-loop") {
    Program p = parse("e.\nx :- not x.");
    CHECK(dependencies_of(build_graph(p), atom(p, "e")).none());
    AtomSet d = dependencies_of(build_graph(p), atom(p, "x"));
    CHECK(d.test(atom(p, "x")));
    CHECK(d.count() == 1);
}

TEST_CASE("rel_rul on EX8 for f") {
    Program p = parse(fixtures::EX8);
    AtomSet q(p.atom_count());
    q.set(atom(p, "f"));
    CHECK(rel_rul(p, q) == rules_named(p, {1, 2, 6, 7, 8}));
}

TEST_CASE("rel_rul: empty set and whole program") {
    Program p1 = parse(fixtures::P1);
    CHECK(rel_rul(p1, AtomSet(p1.atom_count())).empty());
    AtomSet q(p1.atom_count());
    q.set(atom(p1, "old"));
    CHECK(rel_rul(p1, q) == all_rules(p1));
}

TEST_CASE("rel_rul is idempotent") {
    for (const char* src : {fixtures::EX8, fixtures::P3, fixtures::QABC}) {
        Program p = parse(src);
        for (AtomId a = 0; a < p.atom_count(); ++a) {
            AtomSet q(p.atom_count());
            q.set(a);
            RuleSet once = rel_rul(p, q);
            CHECK(rel_rul(p, once, q) == once);
        }
    }
}

TEST_CASE("classify") {
    CHECK(classify(parse("a :- not b.\nb :- not a.")) == ComponentKind::NegativelyCyclic);
    CHECK(classify(parse("e.\nd :- e.")) == ComponentKind::Acyclic);
    CHECK(classify(parse("p :- p.")) == ComponentKind::PositivelyCyclic);
    CHECK(classify(parse(fixtures::EX8)) == ComponentKind::Jigsaw);
}

TEST_CASE("decompose EX8 into the expected two layers") {
    Program p = parse(fixtures::EX8);
    Layering lay = decompose(p);
    REQUIRE(lay.layers.size() == 2);
    CHECK(lay.layers[0].rules == rules_named(p, {1, 2, 4, 5, 8}));
    CHECK(lay.layers[1].rules == rules_named(p, {3, 6, 7}));
    CHECK(lay.layers[0].kind == ComponentKind::Jigsaw);
}

TEST_CASE("decompose: stratified and single-cycle programs") {
    Program p = parse("e.\nd :- e.");
    Layering lay = decompose(p);
    REQUIRE(lay.layers.size() == 2);
    CHECK(lay.layers[0].rules == rules_named(p, {1}));

    Program even = parse(fixtures::EVEN);
    CHECK(decompose(even).layers.size() == 1);
}

TEST_CASE("layers partition the rules") {
    for (const char* src : {fixtures::EX8, fixtures::P3, fixtures::QABC, fixtures::FORCEQ}) {
        Program p = parse(src);
        for (const Layering& lay : {decompose(p), decompose_fine(p)}) {
            RuleSet seen;
            for (const auto& l : lay.layers)
                seen.insert(seen.end(), l.rules.begin(), l.rules.end());
            std::sort(seen.begin(), seen.end());
            CHECK(seen == all_rules(p));
        }
    }
}

TEST_CASE("decompose: every layer's relevant rules stay at or below it") {
    Program p = parse(fixtures::EX8);
    Layering lay = decompose(p);
    RuleSet lower;
    for (const auto& layer : lay.layers) {
        RuleSet here = lower;
        here.insert(here.end(), layer.rules.begin(), layer.rules.end());
        std::sort(here.begin(), here.end());
        AtomSet heads(p.atom_count());
        for (int ri : layer.rules) heads.set(p.rules[size_t(ri)].head);
        RuleSet rel = rel_rul(p, heads);
        CHECK(std::includes(here.begin(), here.end(), rel.begin(), rel.end()));
        lower = here;
    }
}

TEST_CASE("relevant_constraints") {
    Program p = parse(fixtures::recommender_george_pref());
    AtomId go = atom(p, "go_disco(george)");
    auto rel = relevant_constraints(p, go);
    REQUIRE(rel.size() == 1);   // the preference constraint is relevant

    // Constraint over an atom unreachable from q's cone is not relevant.
    Program p2 = parse("a :- not b.\nb :- not a.\nz.\n:- z.");
    CHECK(relevant_constraints(p2, atom(p2, "a")).empty());

    // q with no rules: rel_rul(q) is empty, so every constraint is relevant.
    Program p4 = parse("z :- q.\n:- not z.");
    CHECK(relevant_constraints(p4, atom(p4, "q")).size() == 1);
}

TEST_CASE("dump_graph is sorted text") {
    Program p = parse("p :- a.\na :- not p.");
    CHECK(dump_graph(p) == "a --not-> p\np -+-> a\n");
}
