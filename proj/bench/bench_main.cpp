// Compares the serial reference enumeration against the OpenMP path on
// progressively larger programs.

#include <chrono>
#include <cstdio>

#include "rasq/generate.hpp"
#include "rasq/oracle.hpp"

using namespace rasq;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Program chain_of_cycles(int pairs, int extra_rules) {
    // `pairs` even cycles plus a layer of conjunction rules on top: a dense
    // candidate space with real Γ̂ work per candidate.
    Program p;
    for (int i = 0; i < pairs; ++i) {
        AtomId x = p.intern("x" + std::to_string(i));
        AtomId y = p.intern("y" + std::to_string(i));
        p.rules.push_back({x, {{y, true}}, int(p.rules.size())});
        p.rules.push_back({y, {{x, true}}, int(p.rules.size())});
    }
    for (int i = 0; i < extra_rules; ++i) {
        AtomId z = p.intern("z" + std::to_string(i));
        Literal a{AtomId((2 * i) % (2 * pairs)), false};
        Literal b{AtomId((2 * i + 3) % (2 * pairs)), true};
        p.rules.push_back({z, {a, b}, int(p.rules.size())});
    }
    p.rebuild_index();
    return p;
}

} // namespace

int main() {
    std::printf("%-28s %6s %12s %12s %8s\n", "workload", "heads", "serial(ms)", "openmp(ms)",
                "speedup");
    for (int pairs : {6, 8, 9}) {
        Program p = chain_of_cycles(pairs, 4);
        OracleLimits lim;
        lim.max_candidates = uint64_t{1} << 26;

        auto t0 = Clock::now();
        auto serial_as = answer_sets(p, Exec::Serial, lim);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto par_as = answer_sets(p, Exec::Parallel, lim);
        double tp = ms_since(t0);
        bool same = serial_as == par_as;
        std::printf("%-28s %6d %12.1f %12.1f %7.2fx %s\n",
                    ("answer_sets/" + std::to_string(pairs) + "-cycles").c_str(),
                    2 * pairs + 4, ts, tp, ts / (tp > 0 ? tp : 1e-9), same ? "" : "MISMATCH");
    }
    for (int pairs : {4, 5}) {
        Program p = chain_of_cycles(pairs, 2);
        auto t0 = Clock::now();
        auto serial = ras_sets(p, Exec::Serial);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto par = ras_sets(p, Exec::Parallel);
        double tp = ms_since(t0);
        bool same = serial == par;
        std::printf("%-28s %6d %12.1f %12.1f %7.2fx %s\n",
                    ("ras_sets/" + std::to_string(pairs) + "-cycles").c_str(), 2 * pairs + 2,
                    ts, tp, ts / (tp > 0 ? tp : 1e-9), same ? "" : "MISMATCH");
    }
    return 0;
}
