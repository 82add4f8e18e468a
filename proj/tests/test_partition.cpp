#include "oracles.hpp"

#include "dvertex/errors.hpp"
#include "dvertex/partition.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace dvertex;

namespace {

MultiPartition column(int arity, int h) { return MultiPartition::from_entries(arity, {{Index(arity, 1), h}}); }

}  // namespace

TEST_CASE("from_entries validates heights and monotonicity")
{
    CHECK_NOTHROW(MultiPartition::from_entries(2, {{{1, 1}, 2}, {{2, 1}, 1}}));
    CHECK_THROWS_AS(MultiPartition::from_entries(2, {{{1, 1}, 1}, {{2, 1}, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiPartition::from_entries(2, {{{2, 1}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiPartition::from_entries(2, {{{1, 1}, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiPartition::from_entries(2, {{{0, 1}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiPartition::from_entries(2, {{{1, 1, 1}, 1}}), std::invalid_argument);

    std::string why;
    CHECK_FALSE(is_valid_partition(1, {{{1}, 1}, {{2}, 3}}, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("basic accessors")
{
    auto pi = MultiPartition::from_entries(2, {{{1, 1}, 3}, {{1, 2}, 1}, {{2, 1}, 2}});
    CHECK(pi.size() == 6);
    CHECK(pi.corner_height() == 3);
    CHECK(pi.height({2, 2}) == 0);
    CHECK(pi.cells().size() == 6);
    CHECK(pi.key() == R"({"arity":2,"entries":[[1,1,3],[1,2,1],[2,1,2]]})");
    CHECK(parse_partition_key(pi.key()) == pi);
    CHECK(MultiPartition(3).corner_height() == 0);
    CHECK(MultiPartition(3).key() == R"({"arity":3,"entries":[]})");
}

TEST_CASE("enumeration counts")
{
    SUBCASE("1-partitions are integer partitions")
    {
        const std::vector<std::uint64_t> p{1, 1, 2, 3, 5, 7, 11, 15};
        CHECK(count_partitions(1, 7) == p);
    }
    SUBCASE("plane and solid partitions")
    {
        CHECK(count_partitions(2, 6) == std::vector<std::uint64_t>{1, 1, 3, 6, 13, 24, 48});
        CHECK(count_partitions(3, 6) == std::vector<std::uint64_t>{1, 1, 4, 10, 26, 59, 140});
    }
    SUBCASE("arity zero is a single column")
    {
        CHECK(count_partitions(0, 4) == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
    }
    SUBCASE("small cases")
    {
        CHECK(enumerate_partitions(1, 4).size() == 5);
        CHECK(enumerate_partitions(3, 0).size() == 1);
        CHECK(enumerate_partitions(3, 0)[0].empty());
    }
    SUBCASE("Cheah polynomial for sizes up to 6")
    {
        for (unsigned n = 1; n <= 7; ++n) {
            const auto counts = count_partitions(static_cast<int>(n), n <= 3 ? 6 : 5);
            for (unsigned k = 0; k < counts.size(); ++k) CHECK(Integer(static_cast<unsigned long>(counts[k])) == oracle::cheah(n, k));
        }
        CHECK(oracle::cheah(7, 6) == 2024);
        CHECK(oracle::cheah(7, 5) == 554);
        CHECK(oracle::cheah(7, 4) == 148);
        CHECK(oracle::cheah(11, 3) == 78);
        CHECK(oracle::cheah(11, 4) == 430);
        CHECK(count_partitions(7, 6).back() == 2024);
        CHECK(count_partitions(11, 4).back() == 430);
    }
}

TEST_CASE("enumeration agrees with box growth")
{
    for (int arity : {1, 2, 3, 4})
        for (int size = 0; size <= 5; ++size) {
            auto parts = enumerate_partitions(arity, size);
            auto grown = oracle::grow_partitions(arity, size);
            std::set<oracle::Boxes> a, b(grown.begin(), grown.end());
            for (const auto& p : parts) {
                CHECK(p.size() == size);
                CHECK(is_valid_partition(arity, p.entries()));
                a.insert(oracle::boxes_of(p));
            }
            CHECK(a.size() == parts.size());
            CHECK(a == b);
        }
}

TEST_CASE("enumeration is sorted and duplicate free")
{
    auto parts = enumerate_partitions(3, 6);
    for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i - 1].flatten() < parts[i].flatten());
}

TEST_CASE("character")
{
    auto pi = MultiPartition::from_entries(1, {{{1}, 2}, {{2}, 1}});
    KClass z = character(pi, 2);
    CHECK(z.serialize() == "[[[0,0],1],[[0,1],1],[[1,0],1]]");
    CHECK_THROWS_AS(character(pi, 3), PipelineError);
    CHECK(character(MultiPartition(3), 4).is_zero());
}

TEST_CASE("random monotonicity fuzz")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int arity = 1 + static_cast<int>(rng() % 3);
        std::map<Index, int> e;
        const int count = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < count; ++k) {
            Index i(arity);
            for (auto& x : i) x = 1 + static_cast<int>(rng() % 2);
            e[i] = static_cast<int>(rng() % 3);
        }
        // valid iff positive heights, non-increasing along every axis, support downward closed
        bool expect = true;
        for (const auto& [i, h] : e) {
            if (h <= 0) expect = false;
            for (int a = 0; a < arity; ++a)
                if (i[a] > 1) {
                    Index p = i;
                    --p[a];
                    auto it = e.find(p);
                    if (it == e.end() || it->second < h) expect = false;
                }
        }
        CHECK(is_valid_partition(arity, e) == expect);
    }
}

TEST_CASE("canonical representatives")
{
    auto a = MultiPartition::from_entries(3, {{{1, 1, 1}, 1}, {{1, 2, 1}, 1}});
    auto b = MultiPartition::from_entries(3, {{{1, 1, 1}, 1}, {{2, 1, 1}, 1}});
    auto c = MultiPartition::from_entries(3, {{{1, 1, 1}, 1}, {{1, 1, 2}, 1}});
    CHECK(canonicalize_axes(a, 4).rep == b);
    CHECK(canonicalize_axes(c, 4).rep == b);
    CHECK(orbit_size(a) == 3);
    CHECK(orbit_size(column(3, 2)) == 1);
    auto cf = canonicalize_axes(a, 4);
    CHECK(a.permuted(cf.perm) == cf.rep);
    CHECK_THROWS_AS(canonicalize_axes(a, 5), PipelineError);
}

TEST_CASE("orbit sizes add up to the partition count")
{
    for (auto [arity, size] : std::vector<std::pair<int, int>>{{2, 5}, {3, 5}, {7, 4}, {7, 6}}) {
        auto classes = canonical_classes(arity, size);
        std::uint64_t total = 0;
        for (const auto& c : classes) {
            total += c.orbit;
            CHECK(c.orbit == orbit_size(c.rep));
            CHECK(canonicalize_axes(c.rep, arity + 1).rep == c.rep);
        }
        CHECK(total == count_partitions(arity, size).back());
    }
}

TEST_CASE("binary representation")
{
    auto xi = MultiPartition::from_entries(1, {{{1}, 2}});
    const std::vector<int> in{1, 2}, out{1, 3}, off{2, 1};
    CHECK(binary_rep_contains(xi, in) == 1);
    CHECK(binary_rep_contains(xi, out) == 0);
    CHECK(binary_rep_contains(xi, off) == 0);
}
