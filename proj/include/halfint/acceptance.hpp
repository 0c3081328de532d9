#pragma once

// Acceptance suite: exact identities, bound grids and oracle-equivalence
// checks, one criterion per entry, each with a pinned tolerance. run_full
// prints one pass/fail line per criterion and also replays the suite under
// a different worker count to pin down determinism.

#include <ostream>
#include <string>
#include <vector>

namespace halfint::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteResult {
    std::vector<CriterionResult> results;
    bool all_pass = true;
    std::string canonical_report;  // timing-free, byte-comparable across worker counts
};

// Criteria 1..10 at the given worker count.
SuiteResult run(int jobs, std::ostream* live = nullptr);

// Criteria 1..10 plus the determinism criterion (jobs 1 vs 4). Returns 0 on
// full pass, 1 otherwise.
int run_full(std::ostream& os);

}  // namespace halfint::acceptance
