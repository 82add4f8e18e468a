#pragma once

#include "dvertex/partition.hpp"

#include <map>
#include <vector>

namespace fixtures {

using dvertex::Index;
using dvertex::MultiPartition;

inline Index unit(std::vector<int> axes)
{
    Index i(7, 1);
    for (int a : axes) i[a] = 2;
    return i;
}

// 7-partitions with a tall corner and the seven neighbouring boxes.
inline MultiPartition size9()
{
    std::map<Index, int> e{{Index(7, 1), 2}};
    for (int a = 0; a < 7; ++a) e[unit({a})] = 1;
    return MultiPartition::from_entries(7, e);
}

inline MultiPartition size10()
{
    std::map<Index, int> e{{Index(7, 1), 3}};
    for (int a = 0; a < 7; ++a) e[unit({a})] = 1;
    return MultiPartition::from_entries(7, e);
}

inline MultiPartition size14()
{
    std::map<Index, int> e{{Index(7, 1), 3}};
    for (int a = 0; a < 7; ++a) e[unit({a})] = 1;
    for (auto axes : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) e[unit(axes)] = 1;
    return MultiPartition::from_entries(7, e);
}

}  // namespace fixtures
