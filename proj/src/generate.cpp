#include "rasq/generate.hpp"

#include <random>

namespace rasq {

Program gen_program(const GenConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    auto pick = [&](int n) { return n <= 0 ? 0 : int(rng() % uint64_t(n)); };

    Program p;
    int n_atoms = cfg.max_atoms <= 0 ? 0 : 1 + pick(cfg.max_atoms);
    for (int i = 0; i < n_atoms; ++i) p.intern("a" + std::to_string(i));

    int n_rules = n_atoms == 0 || cfg.max_rules <= 0 ? 0 : pick(cfg.max_rules + 1);
    for (int i = 0; i < n_rules; ++i) {
        Rule r;
        r.head = AtomId(pick(n_atoms));
        int blen = pick(cfg.max_body + 1);
        for (int k = 0; k < blen; ++k) {
            Literal l;
            l.atom = AtomId(pick(n_atoms));
            l.negated = (rng() % 1000000) < uint64_t(cfg.negation_probability * 1000000.0);
            r.body.push_back(l);
        }
        r.origin_index = int(p.rules.size());
        p.rules.push_back(std::move(r));
    }
    p.rebuild_index();
    return p;
}

} // namespace rasq
