#pragma once

#include <string>
#include <vector>

namespace pcg {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

struct AcceptanceOptions {
    unsigned seed = 20240901;
    int jobs = 0;          // 0 = all hardware threads where unconstrained
    bool quick = false;    // shrink the exhaustive sweeps (dev runs only)
    std::vector<int> only; // empty = all criteria
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

}  // namespace pcg
