#pragma once

#include "frametk/operators.hpp"
#include "frametk/sequence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frametk {

struct FactResult {
    std::string fixture;
    std::string fact;
    bool passed = false;
    std::string observed; ///< short rendering of what the artifact computed
    std::string anchor;
    std::optional<MembershipVerdict> verdict; ///< for dom_* facts
};

/// Recomputes one fact of a fixture. Throws InvalidInput on an unknown fact id.
FactResult check_fact(const Fixture& fixture, const Fact& fact);
std::vector<FactResult> check_fixture(const Fixture& fixture);

/// ||sum_{k<=N} c_k psi_k - (ln 2) e_1|| for the alternating harmonic coefficients.
double ln2_partial_distance(const StructuredSequence& s, std::size_t N);

} // namespace frametk
