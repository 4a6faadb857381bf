#pragma once

#include <string>
#include <vector>

namespace mixaudit {

struct IdentityCheck {
    std::string name;
    double max_rel_error = 0.0;
    double tolerance = 1e-12;
    bool passed() const { return max_rel_error <= tolerance; }
};

struct VerifyReport {
    std::vector<IdentityCheck> checks;
    bool all_passed() const;
};

// Exhaustive-enumeration identity suite over the small grid
// n in {2..6}, k in {1..5}, alpha in {0.5, 1, 2}, three class structures.
VerifyReport run_identity_suite();

}  // namespace mixaudit
