#include "oracles.hpp"

#include "dvertex/series.hpp"

#include <doctest.h>

#include <random>

using namespace dvertex;

namespace {

std::vector<Rational> constants(const TruncatedSeries& s)
{
    std::vector<Rational> v;
    for (const auto& c : s.coefficients()) {
        REQUIRE(c.is_constant());
        v.push_back(c.coeff(0));
    }
    return v;
}

std::vector<Rational> ints(std::initializer_list<long> xs)
{
    std::vector<Rational> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

TruncatedSeries random_series(std::mt19937_64& rng, int order, bool unit, int ell_degree)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    TruncatedSeries s(order);
    for (int k = 1; k <= order; ++k) {
        std::vector<Rational> c;
        for (int e = 0; e <= ell_degree; ++e) c.emplace_back(num(rng), den(rng));
        for (auto& x : c) x.canonicalize();
        s[k] = QPoly(std::move(c));
    }
    if (unit) s[0] = QPoly(1);
    return s;
}

}  // namespace

TEST_CASE("arithmetic")
{
    TruncatedSeries a(3, {QPoly(1), QPoly(2), QPoly::variable()});
    TruncatedSeries b(2, {QPoly(1), QPoly(-1)});
    TruncatedSeries p = a * b;
    CHECK(p.order() == 2);
    CHECK(p[1] == QPoly(1));
    CHECK(p[2] == QPoly::variable() - QPoly(2));
    CHECK((a + b).order() == 2);
    CHECK(a.negate_q()[1] == QPoly(-2));
    CHECK(a.at_ell(3)[2] == QPoly(3));
    CHECK(a.truncate_ell(0)[2].is_zero());
    CHECK_THROWS(a.truncated(4));
    CHECK(TruncatedSeries::one(2)[0] == QPoly(1));
}

TEST_CASE("reference series")
{
    CHECK(constants(m_series(2, 4)) == ints({1, 1, 3, 6, 13}));
    CHECK(constants(m_series(0, 3)) == ints({1, 1, 1, 1}));
    CHECK(constants(m_series(1, 5)) == ints({1, 1, 2, 3, 5, 7}));
    for (unsigned n = 1; n <= 6; ++n) {
        auto m = constants(m_series(static_cast<int>(n), 5));
        for (unsigned k = 0; k <= 5; ++k) CHECK(m[k] == Rational(oracle::cheah(n, k)));
    }
}

TEST_CASE("exp and log round trips")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int order = 1 + trial % 8;
        const int deg = trial % 3;
        auto s = random_series(rng, order, false, deg);
        CHECK(series_log(series_exp(s)) == s);
        auto m = random_series(rng, order, true, deg);
        CHECK(series_exp(series_log(m)) == m);
    }
    CHECK_THROWS(series_exp(TruncatedSeries::one(2)));
    CHECK_THROWS(series_log(TruncatedSeries(2)));
}

TEST_CASE("geometric series logarithm")
{
    auto l = series_log(m_series(0, 6));
    for (int k = 1; k <= 6; ++k) CHECK(l[k] == QPoly(Rational(1, k)));
}

TEST_CASE("symbolic powers")
{
    auto m = m_series(2, 6).negate_q();
    auto p = series_pow_ell(m, 6);
    CHECK(p[1] == -QPoly::variable());
    CHECK(p.at_ell(0) == TruncatedSeries::one(6));
    CHECK(p.at_ell(1) == m);
    TruncatedSeries acc = TruncatedSeries::one(6);
    for (int k = 1; k <= 4; ++k) {
        acc = acc * m;
        CHECK(p.at_ell(k) == acc);
    }
    CHECK(series_pow(m, QPoly(-1)) * m == TruncatedSeries::one(6));
}

TEST_CASE("odd dimensions reproduce the reference series")
{
    CHECK(constants(build_z_odd(3, 5)) == ints({1, -1, 3, -6, 13, -24}));
    CHECK(constants(build_z_odd(5, 2)) == ints({1, -1, 5}));
    CHECK(constants(build_z_odd(5, 0)) == ints({1}));
    for (auto [d, n] : std::vector<std::pair<int, int>>{{3, 5}, {5, 3}, {7, 2}})
        CHECK(build_z_odd(d, n) == m_series(d - 1, n).negate_q());
    CHECK_THROWS(build_z_odd(4, 2));
}

TEST_CASE("power law on the full torus")
{
    SUBCASE("three dimensions fit")
    {
        auto v = check_power_law(full_torus_z(3, 2), m_series(2, 2).negate_q(), 2, 3, 1);
        CHECK(v.fits);
        CHECK(v.points.size() == 3);
        CHECK(v.seed == 1);
    }
    SUBCASE("five dimensions do not")
    {
        auto v = check_power_law(full_torus_z(5, 2), m_series(4, 2).negate_q(), 2, 5, 1);
        CHECK_FALSE(v.fits);
        CHECK(v.mismatch_order == 2);
    }
    SUBCASE("a series against itself")
    {
        auto m = m_series(3, 3).negate_q();
        std::vector<FormSum> z;
        for (int k = 0; k <= 3; ++k) z.push_back({FormProduct::constant(m[k].coeff(0))});
        auto v = check_power_law(z, m, 3, 2, 9);
        CHECK(v.fits);
        CHECK(v.evidence[0][0] == 1);
    }
    SUBCASE("the verdict is reproducible")
    {
        auto z = full_torus_z(5, 2);
        auto m = m_series(4, 2).negate_q();
        auto a = check_power_law(z, m, 2, 5, 42);
        auto b = check_power_law(z, m, 2, 5, 42);
        CHECK(a.points == b.points);
        CHECK(a.evidence == b.evidence);
    }
}
