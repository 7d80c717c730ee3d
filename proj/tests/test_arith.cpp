#include "qtwo/arith.hpp"
#include "qtwo/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace qtwo;

TEST_CASE("3-adic valuation") {
    CHECK(LocalScalar(0).val3() == Val3::infinity());
    // 4^6 - 1 = 4095 = 3^2 * 455, matching val3(6) + 1
    CHECK(LocalScalar(4095).val3() == Val3{true, 2});
    CHECK(val3_of(6).v + 1 == 2);
    CHECK(LocalScalar(1, 16).val3() == Val3{true, 0});
    CHECK(Val3{true, 5} < Val3::infinity());
    CHECK(!(Val3::infinity() < Val3{true, 5}));
    CHECK(Val3{true, 2} + Val3{true, 3} == Val3{true, 5});
}

TEST_CASE("unit part") {
    CHECK(unit_part(LocalScalar(-4096)) == LocalScalar(-4096));
    CHECK(unit_part(LocalScalar(9, 2)) == LocalScalar(1, 2));
    // -3008 = -2^6 * 47: no factor of 3
    long n = 3008;
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    CHECK(twos == 6);
    CHECK(n == 47);
    CHECK(n % 3 != 0);
    CHECK(unit_part(LocalScalar(-3008)) == LocalScalar(-3008));
    CHECK_THROWS(unit_part(LocalScalar(0)));
}

TEST_CASE("reduction mod 3^k") {
    // 16 * 4 = 64 = 63 + 1, and 9 | 63, so 1/16 = 4 mod 9
    CHECK((Int(16) * 4 - 1) % 9 == 0);
    CHECK(reduce_mod(LocalScalar(1, 16), 2) == 4);
    CHECK(reduce_mod(LocalScalar(9, 2), 2) == 0);
    // -3008 = 1 mod 3
    CHECK(mod_pos(-3008, 3) == 1);
    CHECK(reduce_mod(LocalScalar(-3008), 1) == 1);
    CHECK(reduce_mod(LocalScalar(7, 2), 0) == 0);  // the zero ring
}

TEST_CASE("canonical form") {
    CHECK(LocalScalar(6, 4) == LocalScalar(3, 2));
    CHECK(LocalScalar(-6, -4) == LocalScalar(3, 2));
    CHECK(LocalScalar(0, 7) == LocalScalar::zero());
    CHECK_THROWS(LocalScalar(1, 3));
    CHECK_THROWS(LocalScalar(1, 6));
    CHECK(LocalScalar(9, 2).is_zero() == false);
    CHECK(LocalScalar(2).is_unit());
    CHECK(!LocalScalar(3).is_unit());
}

TEST_CASE("powers and division") {
    CHECK(LocalScalar::two_pow(-3) == LocalScalar(1, 8));
    CHECK(LocalScalar(2).pow(10) == LocalScalar(1024));
    CHECK(LocalScalar(4).pow(-2) == LocalScalar(1, 16));
    CHECK_THROWS(LocalScalar(3).pow(-1));  // 1/3 is not 3-local
    CHECK_THROWS(LocalScalar(1) / LocalScalar(0));
}

TEST_CASE("arith invariant suite") {
    for (const auto& r : verify_arith()) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
}
