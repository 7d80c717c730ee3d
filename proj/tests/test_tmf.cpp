#include "qtwo/tmf.hpp"
#include "qtwo/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace qtwo;

TEST_CASE("largest Delta exponent per sector") {
    CHECK(ell_max(0, 0) == 0);
    CHECK(ell_max(1, 13) == 4);
    CHECK(ell_max(0, -1) == -1);
    CHECK(ell_max(1, 1) == 0);
    CHECK(ell_max(0, 3) == 1);
}

TEST_CASE("basis classes") {
    // gamma C_1^0 = 3 c4^3 Delta^{-1}
    ZeroLineClass z = basis_class(0, 0, 1);
    CHECK(z.n == 3);
    CHECK(z.ell == -1);
    CHECK(z.gamma == 3);
    CHECK(z.t_internal() == 0);
    // C_0^3 = Delta, with gamma = 3 because ell = 1
    z = basis_class(0, 3, 0);
    CHECK(z.n == 0);
    CHECK(z.ell == 1);
    CHECK(z.gamma == 3);
    // C_0^0 = 1
    z = basis_class(0, 0, 0);
    CHECK(z.n == 0);
    CHECK(z.ell == 0);
    CHECK(z.gamma == 1);
    CHECK(embed(z) == RingElement::one());
    CHECK_THROWS(basis_class(0, 0, -1));
}

TEST_CASE("torsion table") {
    auto a = torsion_at(3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].name() == "α");
    CHECK(a[0].s == 1);
    CHECK(a[0].t_internal() == 2);
    auto b = torsion_at(27);
    REQUIRE(b.size() == 1);
    CHECK(b[0].name() == "b");
    CHECK(b[0].rep == "rΔ");
    CHECK(torsion_at(47).empty());
    auto shifted = torsion_at(3 + 72);
    REQUIRE(shifted.size() == 1);
    CHECK(shifted[0].name() == "αΔ^3");
    // internal-degree lookup
    auto beta = torsion_at_internal(6);
    REQUIRE(beta.size() == 1);
    CHECK(beta[0].name() == "β");
    CHECK(torsion_at_internal(54).size() == 1);
    CHECK(torsion_at_internal(54)[0].name() == "β³Δ^3");
    CHECK(torsion_at_internal(4).empty());
}

TEST_CASE("the map g") {
    CHECK(g_scale(0).is_zero());
    CHECK(g_scale(4) == LocalScalar(15));
    // torsion classes die: 3 | 2^t - 1 for even t and the classes have order 3
    for (long t : {2L, 6L, 8L, 12L, 14L})
        CHECK(g_scale(t).reduce_mod(1) == 0);
}

TEST_CASE("ker and coker of g per degree") {
    // t = 4: coker sector is Z/3 on each basis class
    KerCokerG kc = ker_coker_g(4, 8);
    CHECK(kc.ker.invariants().trivial());
    CHECK(kc.coker.invariants().torsion == std::vector<long>(9, 1));
    // t = 6: Z/9 plus the torsion class beta passing through
    kc = ker_coker_g(6, 8);
    ModuleInvariants inv = kc.coker.invariants();
    CHECK(inv.torsion == std::vector<long>{1, 2, 2, 2, 2, 2, 2, 2, 2, 2});
    CHECK(kc.ker.gens.size() == 1);
    CHECK(kc.ker.gens[0].label == "β");
    // t = 0: everything is in the kernel
    kc = ker_coker_g(0, 8);
    CHECK(kc.ker.invariants().free_rank == 9);
}

TEST_CASE("embedding the 0-line into B") {
    ZeroLineClass z = basis_class(0, 3, 0);  // 3 Delta
    CHECK(embed(z) == RingElement::monomial(2, 1, 0, LocalScalar(3, 8)));
    // c4^3 expands binomially: coefficients C(3,k) 2^k 8^{3-k}
    z = basis_class(0, 3, 1);  // C_1^3 = c4^3, gamma = 1
    RingElement e = embed(z);
    for (long k = 0; k <= 3; ++k) {
        Int expect = binomial(3, k) * pow_int(2, k) * pow_int(8, 3 - k);
        CHECK(e.coeff(k, 3 - k, 0) == LocalScalar(expect));
    }
    CHECK(e.coeff(3, 0, 0) == LocalScalar(8));
    CHECK(e.coeff(0, 3, 0) == LocalScalar(512));
}

TEST_CASE("tmf invariant suite") {
    for (const auto& r : verify_tmf()) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
}
