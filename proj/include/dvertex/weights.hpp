#pragma once

#include "dvertex/errors.hpp"
#include "dvertex/forms.hpp"
#include "dvertex/parallel.hpp"
#include "dvertex/partition.hpp"
#include "dvertex/vertex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dvertex {

class WeightCache;

/// Everything the d = 0 mod 4 pipeline knows about one fixed point.
struct WeightRecord {
    MultiPartition pi;
    std::uint64_t orbit = 1;
    std::uint64_t fingerprint = 0;  // of the full-torus vertex
    KeyConjVerdict verdict = KeyConjVerdict::ok;
    FormProduct w;        // sqrt((-1)^n e_T(-V)), positive scalar
    FormProduct product;  // L_pi * w
    SpecializedValue specialized;
    std::optional<OmegaValue> omega;  // only for a symbolic shift
    std::optional<ErrorKind> error;
    std::string error_message;

    bool ok() const { return !error.has_value(); }
    /// Specialized value with the sign that makes omega positive.
    QPoly oriented_value(int sign) const { return specialized.value * Rational(sign); }
};

/// Runs vertex -> key conjecture -> Euler class -> square root -> tautological
/// factor -> specialization for one partition. Pipeline errors are captured in
/// the record rather than thrown.
WeightRecord compute_weight(const MultiPartition& pi, int d, const TautShift& shift);

/// Weights of every fixed point of size <= order, grouped by size.
/// When the shift is symmetric in the first d-1 axes only canonical
/// representatives are computed and `orbit` holds the orbit size.
struct WeightTable {
    int d = 0;
    int order = 0;
    TautShift shift;
    bool by_orbit = false;
    std::vector<std::vector<WeightRecord>> by_size;

    /// First failing record, if any.
    const WeightRecord* first_error() const;
};

bool shift_is_axis_symmetric(const TautShift& shift);

WeightTable build_weight_table(int d, int order, const TautShift& shift, const ExecPolicy& policy = {},
                               WeightCache* cache = nullptr);

struct OddRecord {
    MultiPartition pi;
    KeyConjVerdict verdict = KeyConjVerdict::ok;
    Rational ratio;
    std::optional<ErrorKind> error;
    std::string error_message;
};

/// e_T(-V_pi) for all (d-1)-partitions of the given size (odd d).
std::vector<OddRecord> compute_odd_ratios(int d, int size, const ExecPolicy& policy = {});

struct KeyConjRecord {
    MultiPartition pi;
    std::int64_t fixed_part = 0;
    KeyConjVerdict verdict = KeyConjVerdict::ok;
};

std::vector<KeyConjRecord> key_conjecture_sweep(int d, int max_size, const ExecPolicy& policy = {});

}  // namespace dvertex
