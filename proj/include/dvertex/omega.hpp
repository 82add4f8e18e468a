#pragma once

#include "dvertex/orientation.hpp"
#include "dvertex/parallel.hpp"
#include "dvertex/partition.hpp"
#include "dvertex/rational.hpp"
#include "dvertex/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dvertex {

/// A multiset of n-partitions whose binary representations add up to an
/// (n+1)-partition. Parts are listed in the search order (descending by size,
/// then key), each with its multiplicity.
struct OmegaDecomposition {
    std::vector<std::pair<MultiPartition, int>> parts;
};

/// Every decomposition of pi, deterministic order, no duplicates. Each result
/// is re-verified against the cell sums before it is returned.
std::vector<OmegaDecomposition> decompositions(const MultiPartition& pi);

/// Checks the cell-sum equation and the size identity.
bool verify_decomposition(const MultiPartition& pi, const OmegaDecomposition& dec);

/// Checks #{parts with xi_c >= j} = pi_{c,j} for every index c and level j, and
/// the equivalent slice counts pi_{c,j} - pi_{c,j+1} for xi_c = j.
bool verify_slice_identity(const MultiPartition& pi, const OmegaDecomposition& dec);

/// Sum over decompositions of prod 1/m!.
Rational omega_c(const MultiPartition& pi);

/// n-partitions contained in lambda (including the empty one).
std::vector<MultiPartition> subpartitions(const MultiPartition& lambda);

struct ExpIdentityVerdict {
    bool equal = false;
    bool t1_equal = false;
    TruncatedSeries lhs;     // q-coefficients are polynomials in t
    TruncatedSeries rhs;
    TruncatedSeries lhs_t1;  // untruncated in t, evaluated at t = 1
    TruncatedSeries rhs_t1;
};

/// sum_{n-partitions} omega_c t^{pi_{1..1}} q^{|pi|} against exp(t (M_{n-1}(q) - 1)),
/// truncated at q^N and t^T; also the t = 1 specialization.
ExpIdentityVerdict check_exp_identity(int n, int order, int t_order, const ExecPolicy& policy = {});

struct OmegaComparison {
    bool match = false;         // |omega| == omega_c
    bool signed_match = false;  // additionally the orientation makes omega positive
    Rational omega;
    Rational omega_c;
    int sign = 1;
};

/// Throws PipelineError when the weight pipeline fails for pi.
OmegaComparison compare_omegas(const MultiPartition& pi, int d, const OrientationAssignment* orientation = nullptr);

struct OmegaRow {
    MultiPartition pi;
    std::uint64_t orbit = 1;
    Rational omega_c;
    std::optional<Rational> omega;
    std::string error;
};

/// One row per canonical (d-1)-partition of size <= order. With geometric set,
/// |omega| from the weight pipeline is filled in too.
std::vector<OmegaRow> omega_rows(int d, int order, bool geometric, const ExecPolicy& policy = {});

/// key,size,corner_height,omega_c,omega
std::string omega_csv(const std::vector<OmegaRow>& rows);

}  // namespace dvertex
