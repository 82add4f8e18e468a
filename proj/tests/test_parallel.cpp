#include "dvertex/io.hpp"
#include "dvertex/omega.hpp"
#include "dvertex/parallel.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace dvertex;

TEST_CASE("map_indices keeps input order")
{
    auto f = [](std::size_t i) { return static_cast<int>(i * i); };
    auto s = map_indices_serial<int>(100, f);
    auto p = map_indices_parallel<int>(100, f, 4);
    CHECK(s == p);
    CHECK(map_indices<int>(0, f, ExecPolicy{}).empty());
}

TEST_CASE("map_indices rethrows the first failure by index")
{
    auto f = [](std::size_t i) -> int {
        if (i == 7) throw std::runtime_error("seven");
        if (i == 30) throw std::runtime_error("thirty");
        return 0;
    };
    CHECK_THROWS_WITH(map_indices_parallel<int>(50, f, 4), "seven");
}

TEST_CASE("parallel and serial pipelines agree")
{
    const auto shift = TautShift::symbolic(8);
    auto a = build_weight_table(8, 4, shift, ExecPolicy::serial());
    auto b = build_weight_table(8, 4, shift, ExecPolicy::threads(4));
    REQUIRE(a.by_size.size() == b.by_size.size());
    for (std::size_t n = 0; n < a.by_size.size(); ++n) {
        REQUIRE(a.by_size[n].size() == b.by_size[n].size());
        for (std::size_t i = 0; i < a.by_size[n].size(); ++i) CHECK(to_json(a.by_size[n][i]) == to_json(b.by_size[n][i]));
    }
    CHECK(build_z_odd(5, 3, ExecPolicy::serial()) == build_z_odd(5, 3, ExecPolicy::threads(3)));
    auto ks = key_conjecture_sweep(8, 3, ExecPolicy::serial());
    auto kp = key_conjecture_sweep(8, 3, ExecPolicy::threads(3));
    REQUIRE(ks.size() == kp.size());
    for (std::size_t i = 0; i < ks.size(); ++i) CHECK(ks[i].fixed_part == kp[i].fixed_part);
    CHECK(check_exp_identity(3, 4, 4, ExecPolicy::serial()).lhs == check_exp_identity(3, 4, 4, ExecPolicy::threads(2)).lhs);
}
