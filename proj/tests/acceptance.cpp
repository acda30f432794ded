// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Scales and tolerances are pinned here; the library-side checks in
// idnc::verify carry the oracle implementations.
#include <chrono>
#include <cstdio>

#include "idnc/verify.hpp"

namespace {

int failures = 0;

void report(int index, const idnc::verify::CheckResult& result) {
    using clock = std::chrono::steady_clock;
    static clock::time_point last = clock::now();
    const auto now = clock::now();
    const double seconds = std::chrono::duration<double>(now - last).count();
    last = now;
    std::printf("criterion %2d: %s  [%6.1fs]  %s — %s\n", index,
                result.pass ? "PASS" : "FAIL", seconds, result.name.c_str(),
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
}

}  // namespace

int main() {
    using namespace idnc::verify;
    constexpr std::uint64_t kSeed = 961748927;

    report(1, belief_correctness());
    report(2, ml_factorization(1000, kSeed));
    report(3, threshold_rules());
    report(4, decoding_closed_form(2000, kSeed));
    report(5, objective_equivalence(500, kSeed));
    report(6, graph_correctness(10000, kSeed));
    report(7, simulation_sanity(100000, 50, kSeed));
    report(8, completion_ordering(1000, kSeed));
    report(9, decoding_ordering(1000, kSeed));
    report(10, determinism(kSeed));

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
