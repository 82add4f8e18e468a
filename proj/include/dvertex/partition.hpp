#pragma once

#include "dvertex/kclass.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dvertex {

/// 1-based index tuple (i_1, ..., i_n).
using Index = std::vector<int>;

/// 0-based box coordinates (b_1, ..., b_d) of the associated staircase.
using Cell = std::vector<int>;

/// An n-partition: a finitely supported monotone array of positive heights
/// indexed by 1-based n-tuples. Entries absent from the map have height 0.
///
/// Immutable once built; the only way to get one is through a validating
/// factory or the enumerator.
class MultiPartition {
public:
    explicit MultiPartition(int arity = 0);

    /// Throws std::invalid_argument unless the entries form a valid n-partition.
    static MultiPartition from_entries(int arity, std::map<Index, int> entries);

    int arity() const { return arity_; }
    int size() const { return size_; }
    bool empty() const { return entries_.empty(); }
    int height(const Index& i) const;
    /// pi_{1...1}; 0 for the empty partition.
    int corner_height() const;
    const std::map<Index, int>& entries() const { return entries_; }

    /// All boxes as 0-based (arity + 1)-tuples, in entry order then height.
    std::vector<Cell> cells() const;

    /// Concatenation of (index..., height) over entries in lexicographic order.
    std::vector<int> flatten() const;

    /// Compact JSON {"arity":n,"entries":[[i_1,...,i_n,h],...]}.
    std::string key() const;

    /// Axis relabelling: the new index at position k is the old index at axis perm[k].
    MultiPartition permuted(std::span<const int> perm) const;

    /// Axes along which some index exceeds 1.
    std::vector<int> used_axes() const;

    friend bool operator==(const MultiPartition& a, const MultiPartition& b)
    {
        return a.arity_ == b.arity_ && a.entries_ == b.entries_;
    }
    friend std::strong_ordering operator<=>(const MultiPartition& a, const MultiPartition& b);

private:
    int arity_;
    int size_ = 0;
    std::map<Index, int> entries_;
};

/// Checks the monotonicity and positivity invariants. On failure, `why` (if
/// given) receives a short description.
bool is_valid_partition(int arity, const std::map<Index, int>& entries, std::string* why = nullptr);

MultiPartition parse_partition_key(const std::string& json);

/// All n-partitions of the given size, sorted by flatten(); size 0 gives the empty one.
/// Arity 0 is accepted (a single column) since it shows up as the part type of 1-partitions.
std::vector<MultiPartition> enumerate_partitions(int arity, int size);

/// P_n(0), ..., P_n(max_size).
std::vector<std::uint64_t> count_partitions(int arity, int max_size);

/// Z_pi = sum over boxes of t_1^{i_1-1} ... t_{d-1}^{i_{d-1}-1} t_d^{m-1}.
KClass character(const MultiPartition& pi, int d);

struct CanonicalForm {
    MultiPartition rep;
    std::vector<int> perm;  // rep == pi.permuted(perm)
};

/// Least orbit member under permutations of the axes, using canonical_order_key.
CanonicalForm canonicalize_axes(const MultiPartition& pi, int d);

/// Number of distinct partitions in the axis-permutation orbit of pi.
std::uint64_t orbit_size(const MultiPartition& pi);

/// Ordering key for canonicalization: rows (-i_1, ..., -i_n, h) sorted ascending.
/// Smaller keys put the deepest indices on the leading axes.
std::vector<int> canonical_order_key(const MultiPartition& pi);

struct OrbitClass {
    MultiPartition rep;
    std::uint64_t orbit = 1;
};

/// One canonical representative per orbit among the partitions of the given size,
/// ordered by flatten() of the representative.
std::vector<OrbitClass> canonical_classes(int arity, int size);

/// 1 iff cell[n] <= xi_{cell[0..n)} for a 1-based (n+1)-tuple.
int binary_rep_contains(const MultiPartition& xi, std::span<const int> cell);

}  // namespace dvertex
