#pragma once

#include "dvertex/partition.hpp"
#include "dvertex/weights.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dvertex {

/// A sign for every canonical (d-1)-partition up to some size. Orbit members
/// share the sign of their representative.
struct OrientationAssignment {
    enum class Convention { positive_omega, explicit_signs };

    int d = 0;
    Convention convention = Convention::explicit_signs;
    std::map<std::string, int> signs;  // canonical key -> +1 / -1

    /// Sign for any partition (canonicalized first); +1 when unassigned.
    int sign(const MultiPartition& pi) const;
};

/// Signs making every weight equal (-1)^{|pi|} |omega_pi| l(l-1)...(l - pi_{1..1} + 1).
/// Throws PipelineError on the first failing record.
OrientationAssignment positive_omega_orientation(const WeightTable& table);
OrientationAssignment positive_omega_orientation(int d, int order, const ExecPolicy& policy = {});

struct UniquenessVerdict {
    enum class Kind { unique, alternative_found, limit_exceeded };
    Kind kind = Kind::unique;
    int order = 0;                      // q-order of the alternative / limit
    std::vector<std::string> flipped;   // canonical keys of an alternative flip set
    std::size_t subsets_examined = 0;
    std::string detail;
};
const char* to_string(UniquenessVerdict::Kind k);

/// Looks for another sign assignment that reproduces the same series.
/// Per q-order the flipped set F must satisfy sum_{F} orbit * W = 0; this is
/// searched l-degree by l-degree from the top, and a slice whose leading
/// coefficients all share one sign admits only the empty flip. `cap` bounds
/// the number of non-empty subsets tried in slices where that shortcut fails.
UniquenessVerdict verify_uniqueness(const WeightTable& table, const OrientationAssignment& orientation,
                                    std::size_t cap = 1u << 20);
UniquenessVerdict verify_uniqueness(int d, int order, const ExecPolicy& policy = {}, std::size_t cap = 1u << 20);

}  // namespace dvertex
