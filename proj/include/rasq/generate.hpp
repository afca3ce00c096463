#ifndef RASQ_GENERATE_HPP
#define RASQ_GENERATE_HPP

#include <cstdint>
#include <string>

#include "rasq/program.hpp"

namespace rasq {

struct GenConfig {
    int max_atoms = 8;
    int max_rules = 16;
    int max_body = 3;
    double negation_probability = 0.5;
    uint64_t seed = 0;
};

// Seeded random ground program within the configured bounds; the same seed
// yields the same program.
Program gen_program(const GenConfig& cfg);

} // namespace rasq

#endif
