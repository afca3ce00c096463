#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rasq/generate.hpp"
#include "rasq/oracle.hpp"
#include "rasq/wfs.hpp"

using namespace rasq;
using fixtures::atom;
using fixtures::interp;
using fixtures::model_names;
using fixtures::parse;

TEST_CASE("gl_reduct") {
    Program p1 = parse(fixtures::P1);
    ORules r = to_orules(p1);
    CHECK(gl_reduct(r, interp(p1, {"old"})).empty());
    ORules stripped = gl_reduct(r, Interp(p1.atom_count()));
    REQUIRE(stripped.size() == 1);
    CHECK(stripped[0].neg.empty());
    CHECK(stripped[0].pos.empty());

    Program p2 = parse("a :- not b.");
    ORules kept = gl_reduct(to_orules(p2), interp(p2, {"a"}));
    REQUIRE(kept.size() == 1);   // b not in I: rule kept, literal stripped
    CHECK(kept[0].neg.empty());
}

TEST_CASE("least_model") {
    Program p = parse("a.\np :- a.");
    CHECK(least_model(to_orules(p), p.atom_count()) == interp(p, {"a", "p"}));
    CHECK(least_model({}, 0).none());
    Program loop = parse("p :- p.");
    CHECK(least_model(to_orules(loop), loop.atom_count()).none());
}

TEST_CASE("answer_sets: golden fixtures") {
    Program vac = parse(fixtures::VACATION);
    CHECK(answer_sets(vac).empty());

    Program p2 = parse(fixtures::P2);
    CHECK(model_names(p2, answer_sets(p2)) ==
          std::set<std::vector<std::string>>{{"old"}});

    Program even = parse(fixtures::EVEN);
    CHECK(model_names(even, answer_sets(even)) ==
          std::set<std::vector<std::string>>{{"a"}, {"b"}});
}

TEST_CASE("modified_reduct keeps negative literals") {
    Program f = parse(fixtures::FORCE);
    ORules r = to_orules(f);
    ORules m1 = modified_reduct(r, interp(f, {"a", "p"}));
    REQUIRE(m1.size() == 1);   // a :- not p removed since p in I
    CHECK(f.name(m1[0].head) == "p");

    CHECK(modified_reduct(r, interp(f, {"a"})) == r);
    Program p1 = parse(fixtures::P1);
    CHECK(modified_reduct(to_orules(p1), Interp(p1.atom_count())) == to_orules(p1));
}

TEST_CASE("modified_tp_fixpoint blocks self-guarded atoms") {
    // FORCE with i={a}: a derived with guard {not p}; p blocked.
    Program f = parse(fixtures::FORCE);
    ORules red = modified_reduct(to_orules(f), interp(f, {"a"}));
    GuardedFixpoint fx = modified_tp_fixpoint(red, f.atom_count());
    CHECK(fx.hat_t == interp(f, {"a"}));
    REQUIRE(fx.guards[size_t(atom(f, "a"))].size() == 1);
    CHECK(fx.guards[size_t(atom(f, "a"))][0] == interp(f, {"p"}));

    Program e = parse("e.");
    GuardedFixpoint fe = modified_tp_fixpoint(to_orules(e), e.atom_count());
    CHECK(fe.hat_t == interp(e, {"e"}));
    CHECK(fe.guards[0][0].none());

    // P3 with i={old}: young blocked because its derivation is guarded by
    // not young.
    Program p3 = parse(fixtures::P3);
    ORules red3 = modified_reduct(to_orules(p3), interp(p3, {"old"}));
    CHECK(modified_tp_fixpoint(red3, p3.atom_count()).hat_t == interp(p3, {"old"}));
}

TEST_CASE("gamma_hat examples") {
    Program p1 = parse(fixtures::P1);
    CHECK(gamma_hat(p1, Interp(p1.atom_count())).none());

    Program p2 = parse(fixtures::P2);
    CHECK(gamma_hat(p2, interp(p2, {"old"})) == interp(p2, {"old"}));
}

TEST_CASE("gamma_hat is antimonotone on random programs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        GenConfig cfg;
        cfg.max_atoms = 6;
        cfg.max_rules = 10;
        cfg.seed = rng();
        Program p = gen_program(cfg);
        ORules r = to_orules(p);
        Interp i1(p.atom_count()), i2(p.atom_count());
        for (AtomId a = 0; a < p.atom_count(); ++a) {
            int x = int(rng() % 4);
            if (x >= 2) i2.set(a);
            if (x == 3) i1.set(a);
        }
        CHECK(gamma_hat(r, p.atom_count(), i2).subset_of(gamma_hat(r, p.atom_count(), i1)));
    }
}

TEST_CASE("is_supported") {
    Program even = parse(fixtures::EVEN);
    ORules r = to_orules(even);
    CHECK(is_supported(r, interp(even, {"a"})));
    CHECK_FALSE(is_supported(r, interp(even, {"a", "b"})));
    CHECK(is_supported(r, Interp(even.atom_count())));
}

TEST_CASE("is_consistently_supported") {
    Program f = parse(fixtures::FORCE);
    ORules r = to_orules(f);
    CHECK_FALSE(is_consistently_supported(r, interp(f, {"a", "p"}), atom(f, "p")));

    Program ex8 = parse(fixtures::EX8);
    ORules r8 = to_orules(ex8);
    Interp m1 = interp(ex8, {"a", "e", "f", "h", "s"});
    std::vector<int> witness;
    CHECK(is_consistently_supported(r8, m1, atom(ex8, "f"), &witness));
    CHECK_FALSE(witness.empty());

    Program e = parse("e.");
    CHECK(is_consistently_supported(to_orules(e), interp(e, {"e"}), atom(e, "e")));
}

TEST_CASE("consistent support agrees with the literal enumeration") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 150; ++t) {
        GenConfig cfg;
        cfg.max_atoms = 4;
        cfg.max_rules = 6;
        cfg.max_body = 2;
        cfg.seed = rng();
        Program p = gen_program(cfg);
        ORules r = to_orules(p);
        const int n = p.atom_count();
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
            Interp i(n);
            for (int b = 0; b < n; ++b)
                if ((mask >> b) & 1) i.set(b);
            bool mismatch = false;
            i.for_each([&](int a) {
                if (is_consistently_supported(r, i, AtomId(a)) !=
                    is_consistently_supported_enum(r, i, AtomId(a)))
                    mismatch = true;
            });
            CHECK_FALSE(mismatch);
        }
    }
}

TEST_CASE("is_mcs golden cases") {
    Program ex8 = parse(fixtures::EX8);
    CHECK(is_mcs(ex8, interp(ex8, {"a", "e", "f", "h", "s"})));
    CHECK(is_mcs(ex8, interp(ex8, {"e", "h", "g", "s"})));
    CHECK_FALSE(is_mcs(ex8, interp(ex8, {"e"})));

    Program p1 = parse(fixtures::P1);
    CHECK(is_mcs(p1, Interp(p1.atom_count())));

    Program even = parse(fixtures::EVEN);
    CHECK(is_mcs(even, interp(even, {"a"})));
}

TEST_CASE("W+ is a consistently supported set") {
    for (const char* src : {fixtures::EX8, fixtures::P3, fixtures::QABC, fixtures::FORCEQ}) {
        Program p = parse(src);
        CHECK(is_cs_set(to_orules(p), wfs(p).w_plus));
    }
}

TEST_CASE("ras_standalone golden cases") {
    Program vac = parse(fixtures::VACATION);
    CHECK(model_names(vac, ras_standalone(to_orules(vac), vac.atom_count())) ==
          std::set<std::vector<std::string>>{{"beach"}, {"mountain"}, {"travel"}});

    Program p1 = parse(fixtures::P1);
    auto ras1 = ras_standalone(to_orules(p1), p1.atom_count());
    REQUIRE(ras1.size() == 1);
    CHECK(ras1[0].none());

    Program f = parse(fixtures::FORCE);
    CHECK(model_names(f, ras_standalone(to_orules(f), f.atom_count())) ==
          std::set<std::vector<std::string>>{{"a"}});
}

TEST_CASE("simplify_component on EX8's upper layer") {
    Program p = parse(fixtures::EX8);
    Layering lay = decompose(p);
    REQUIRE(lay.layers.size() == 2);
    ORules c2 = to_orules(p, lay.layers[1].rules);
    // Lower model from the M1 side of the bottom layer.
    Interp lower = interp(p, {"a", "h", "e"});
    ORules s = simplify_component(c2, lower, p.atom_count());
    // r6 (f :- not a, d) is deleted; r7 becomes the fact f; r3 becomes s.
    REQUIRE(s.size() == 2);
    CHECK(p.name(s[0].head) == "s");
    CHECK(s[0].pos.empty());
    CHECK(s[0].neg.empty());
    CHECK(p.name(s[1].head) == "f");
    CHECK(s[1].pos.empty());
    CHECK(s[1].neg.empty());
}

TEST_CASE("simplify_component: trivial cases") {
    Program p = parse("x :- y, not z.");
    ORules c = to_orules(p);
    CHECK(simplify_component(c, Interp(p.atom_count()), p.atom_count()) ==
          ORules{{atom(p, "x"), {atom(p, "y")}, {}}});
    Interp lower(p.atom_count());
    lower.set(atom(p, "y"));
    ORules s = simplify_component(c, lower, p.atom_count());
    REQUIRE(s.size() == 1);   // body fully satisfied: becomes a fact
    CHECK(s[0].pos.empty());
    CHECK(s[0].neg.empty());
}

TEST_CASE("ras_sets golden fixtures") {
    using Names = std::set<std::vector<std::string>>;
    Program ex8 = parse(fixtures::EX8);
    CHECK(model_names(ex8, ras_sets(ex8)) ==
          Names{{"a", "e", "f", "h", "s"}, {"e", "g", "h", "s"}});

    Program p3 = parse(fixtures::P3);
    CHECK(model_names(p3, ras_sets(p3)) == Names{{"old"}});

    Program qabc = parse(fixtures::QABC);
    CHECK(model_names(qabc, ras_sets(qabc)) == Names{{"a", "q"}, {"b"}});

    Program vac = parse(fixtures::VACATION);
    CHECK(model_names(vac, ras_sets(vac)) == Names{{"beach"}, {"mountain"}, {"travel"}});

    Program p2 = parse(fixtures::P2);
    CHECK(model_names(p2, ras_sets(p2)) == Names{{"old"}});

    Program ev3 = parse(fixtures::EVEN3);
    CHECK(model_names(ev3, ras_sets(ev3)) == Names{{"b", "e"}});
}

TEST_CASE("ras_sets on the empty program is the lone empty model") {
    Program p = parse("");
    auto ras = ras_sets(p);
    REQUIRE(ras.size() == 1);
    CHECK(ras[0].none());
}

TEST_CASE("admissible") {
    Program p = parse("a.\n:- a.");
    auto ras = ras_sets(p);
    REQUIRE(ras.size() == 1);
    CHECK_FALSE(admissible(p, ras[0]));   // guard derivable

    Program q = parse("a.\n:- not b.");
    auto rq = ras_sets(q);
    REQUIRE(rq.size() == 1);
    CHECK_FALSE(admissible(q, rq[0]));

    Program r = parse("a.");
    CHECK(admissible(r, ras_sets(r)[0]));   // no constraints
}

TEST_CASE("size guard fires instead of stalling") {
    Program p;
    for (int i = 0; i < 25; ++i) {
        Rule r;
        r.head = p.intern("x" + std::to_string(i));
        r.origin_index = i;
        p.rules.push_back(r);
    }
    p.rebuild_index();
    OracleLimits lim;
    lim.max_candidates = 1 << 10;
    CHECK_THROWS_AS(answer_sets(p, Exec::Serial, lim), SizeGuardError);
}
