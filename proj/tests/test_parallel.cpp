#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "rasq/generate.hpp"
#include "rasq/oracle.hpp"

using namespace rasq;
using fixtures::parse;

// The OpenMP enumeration paths must reproduce the serial reference exactly.

TEST_CASE("answer_sets: parallel equals serial") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        GenConfig cfg;
        cfg.max_atoms = 7;
        cfg.max_rules = 14;
        cfg.seed = seed;
        Program p = gen_program(cfg);
        CHECK(answer_sets(p, Exec::Serial) == answer_sets(p, Exec::Parallel));
    }
    Program big = parse(fixtures::recommender_george());
    CHECK(answer_sets(big, Exec::Serial) == answer_sets(big, Exec::Parallel));
}

TEST_CASE("ras_sets: parallel equals serial") {
    for (uint64_t seed = 100; seed < 130; ++seed) {
        GenConfig cfg;
        cfg.max_atoms = 6;
        cfg.max_rules = 12;
        cfg.seed = seed;
        Program p = gen_program(cfg);
        CHECK(ras_sets(p, Exec::Serial) == ras_sets(p, Exec::Parallel));
    }
    Program big = parse(fixtures::recommender_george());
    CHECK(ras_sets(big, Exec::Serial) == ras_sets(big, Exec::Parallel));
}

TEST_CASE("repeated parallel runs are identical") {
    Program p = parse(fixtures::recommender_george());
    auto a = ras_sets(p, Exec::Parallel);
    auto b = ras_sets(p, Exec::Parallel);
    CHECK(a == b);
}
