#include <doctest.h>

#include "oracle.hpp"
#include "twoclass/quadfield.hpp"

using namespace twoclass;
using namespace twoclass::quadfield;

TEST_CASE("fundamental_unit examples")
{
    QuadUnit u = fundamental_unit(2);
    CHECK(u.x() == 1);
    CHECK(u.y() == 1);
    CHECK(u.norm == -1);

    u = fundamental_unit(5);
    CHECK(u.x() == Rational(1, 2));
    CHECK(u.y() == Rational(1, 2));
    CHECK(u.norm == -1);

    u = fundamental_unit(79);
    CHECK(u.X == 80);
    CHECK(u.Y == 9);
    CHECK(u.norm == 1);

    CHECK(unit_norm(10) == -1);
    CHECK(unit_norm(3) == 1);

    CHECK_THROWS_AS(fundamental_unit(1), domain_error);
    CHECK_THROWS_AS(fundamental_unit(12), domain_error);
}

TEST_CASE("fundamental units agree with a brute-force Pell search")
{
    std::uint64_t const ymax = 20000;
    for (std::uint64_t d = 2; d < 500; ++d) {
        if (!is_squarefree(d))
            continue;
        QuadUnit const u = fundamental_unit(d);
        INFO("d = " << d);
        Integer const D = static_cast<unsigned long>(d);
        REQUIRE(u.X * u.X - D * u.Y * u.Y == u.norm * u.den * u.den);
        if (u.den == 2)
            REQUIRE(d % 8 == 5);
        auto const o = oracle::pell(d, ymax);
        if (!o) {
            REQUIRE(u.Y > ymax);
            continue;
        }
        REQUIRE(o->X == u.X);
        REQUIRE(o->Y == u.Y);
        REQUIRE(o->den == u.den);
        REQUIRE(o->norm == u.norm);
    }
}

TEST_CASE("digit cap")
{
    clear_cache();
    /* eps_94 = 2143295 + 221064 sqrt 94 */
    CHECK_THROWS_AS(fundamental_unit(94, 5), unit_too_large);
    CHECK(fundamental_unit(94, 7).X == 2143295);
    /* a cached unit still respects a smaller cap */
    CHECK_THROWS_AS(fundamental_unit(94, 6), unit_too_large);
    CHECK_NOTHROW(fundamental_unit(94, 1000));
}

TEST_CASE("narrow_class_group examples")
{
    CHECK(narrow_class_group(5).structure.str() == "1");
    CHECK(narrow_class_group(40).structure.str() == "2");
    CHECK(narrow_class_group(316).structure.str() == "6");
    CHECK_THROWS_AS(narrow_class_group(9), domain_error);
    CHECK_THROWS_AS(narrow_class_group(20), domain_error);
    CHECK_THROWS_AS(narrow_class_group(-4), domain_error);
}

TEST_CASE("narrow class groups agree with the naive composition table")
{
    for (std::int64_t D = 5; D < 700; ++D) {
        if (!is_fundamental_discriminant(D) || is_perfect_square(D))
            continue;
        INFO("D = " << D);
        auto const o = oracle::narrow_class_group(D);
        REQUIRE(o.group_axioms);
        auto const g = narrow_class_group(D);
        REQUIRE(g.order == o.order);
        REQUIRE(g.structure == o.structure);
    }
}

TEST_CASE("class_group")
{
    ClassData const c79 = class_group(79);
    CHECK(c79.h == 3);
    CHECK(c79.h_plus == 6);
    CHECK(c79.h2 == 1);

    ClassData const c10 = class_group(10);
    CHECK(c10.h == 2);
    CHECK(c10.h2 == 2);
    CHECK(c10.two_sylow.str() == "2");

    for (std::uint64_t q : {3, 7, 11, 19, 23, 31, 43, 47})
        CHECK(h2(q) == 1);
    for (std::uint64_t q : {3, 7, 11, 19})
        CHECK(h2(2 * q) == 1);
    /* r = 13, s = 29: r = s = 5 mod 8, (r/s) = 1 */
    CHECK(h2(2 * 13 * 29) == 4);

    for (std::uint64_t d = 2; d < 2000; ++d) {
        if (!is_squarefree(d))
            continue;
        ClassData const c = class_group(d);
        INFO("d = " << d);
        REQUIRE(c.h_plus == c.h * (unit_norm(d) == -1 ? 1 : 2));
        REQUIRE(c.h2 == two_part(Integer(static_cast<unsigned long>(c.h))));
    }
}

TEST_CASE("prime_splitting")
{
    CHECK(prime_splitting(Place::prime(3), 13) == Splitting::split);
    CHECK(prime_splitting(Place::prime(13), 13) == Splitting::ramified);
    CHECK(prime_splitting(Place::prime(5), 13) == Splitting::inert);
    CHECK(prime_splitting(Place::infinity(), 13) == Splitting::split);
    CHECK(prime_splitting(Place::infinity(), -13) == Splitting::ramified);
    CHECK(prime_splitting(Place::prime(2), 5) == Splitting::inert);
    CHECK(prime_splitting(Place::prime(2), 17) == Splitting::split);
    CHECK(prime_splitting(Place::prime(2), 3) == Splitting::ramified);
    CHECK(prime_splitting(Place::prime(2), 6) == Splitting::ramified);
    CHECK_THROWS_AS(prime_splitting(Place::prime(9), 13), domain_error);
}

TEST_CASE("cache can be disabled")
{
    set_cache_enabled(false);
    CHECK(h2(2 * 13 * 29) == 4);
    CHECK(fundamental_unit(79).X == 80);
    set_cache_enabled(true);
}
