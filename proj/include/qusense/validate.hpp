#pragma once

// Self-contained invariant suite behind the `validate` command. Each check is
// named, runs in at most a couple of seconds and reports pass/fail with a
// short measured diagnostic. The fault-injection hook perturbs the z-readout
// superoperator before the classical-noise-free check so the suite's ability
// to catch a broken channel is itself testable.

#include <string>
#include <vector>

namespace qusense {

struct FaultInjection {
    bool perturb_mz = false;
    double epsilon = 1e-3;
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string to_json() const;
};

ValidationReport run_validation(const FaultInjection& fault = {});

}  // namespace qusense
