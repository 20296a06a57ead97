#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cantor_beam {

/// Deliberate corruption used to check that the suite notices.
enum class Fault { None, Moments };

Fault parse_fault(const std::string& name);

struct InvariantResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<InvariantResult> results;
    /// Name of the first violated invariant, empty when all passed.
    std::string first_failure;
};

/// Runs the module invariants in order and stops at the first violation.
VerifyReport run_invariants(Fault fault = Fault::None,
                            const std::function<void(const InvariantResult&)>& on_result = {});

}  // namespace cantor_beam
