#ifndef RASQ_HARNESS_HPP
#define RASQ_HARNESS_HPP

#include <string>
#include <vector>

#include "rasq/generate.hpp"
#include "rasq/oracle.hpp"
#include "rasq/program.hpp"

namespace rasq {

struct HarnessOptions {
    bool check_free_queries = true;        // resolver verdict vs oracle membership
    bool check_sequences = true;           // contextual partition realizability
    bool check_invariants = true;          // oracle-side semantic invariants
    bool check_mcs_equivalence = true;     // MCS <=> RAS (flagged separately)
    int sequence_atom_limit = 6;           // exhaustive sequences up to this atom count
    int sequence_samples = 24;             // random sequences above the limit
    uint64_t sample_seed = 0;
};

struct Violation {
    std::string property;
    std::string detail;
    std::string program_text;   // shrunk counterexample
};

struct CheckReport {
    bool ok = true;
    std::vector<Violation> violations;
    int free_queries = 0;
    int sequences = 0;
};

// Run every enabled property on one program; violations carry a shrunk
// counterexample that still fails the same property.
CheckReport check_program(const Program& prog, const HarnessOptions& opt = {});

struct FuzzReport {
    int programs = 0;
    int free_queries = 0;
    int sequences = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Seeded batch: program i uses seed base_seed + i. Parallel over programs;
// the report is independent of scheduling.
FuzzReport fuzz(int count, const GenConfig& base, const HarnessOptions& opt = {},
                bool parallel = true);

std::string to_json(const FuzzReport& rep);

} // namespace rasq

#endif
