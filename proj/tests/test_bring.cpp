#include "qtwo/bring.hpp"
#include "qtwo/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace qtwo;

namespace {
RingElement sigma_pow(long i, long j, const LocalScalar& c) {
    return RingElement::monomial(i, j, 0, c);
}
}  // namespace

TEST_CASE("normal form of q-polynomials") {
    // q4 = sigma / 8
    CHECK(from_q(QPoly::term(0, 1, 0, 1)) == sigma_pow(1, 0, LocalScalar(1, 8)));
    // q2^2 = (sigma + tau) / 2, solved from tau = 2 q2^2 - 8 q4
    CHECK(from_q(QPoly::term(2, 0, 0, 1)) ==
          sigma_pow(1, 0, LocalScalar(1, 2)) + sigma_pow(0, 1, LocalScalar(1, 2)));
    // Delta = q4^2 (16 q2^2 - 64 q4) becomes sigma^2 tau / 8
    QPoly disc = QPoly::term(2, 2, 0, 16) + QPoly::term(0, 3, 0, -64);
    CHECK(from_q(disc) == delta_pow(1));
    CHECK(from_q(disc) == sigma_pow(2, 1, LocalScalar(1, 8)));
    // Delta^{-1} inverts it exactly
    CHECK(delta_pow(1) * delta_pow(-1) == RingElement::one());
}

TEST_CASE("Weierstrass invariants") {
    // c4 = b2^2 - 24 b4 with b2 = 4 q2, b4 = 2 q4
    CHECK(c4() == from_q(QPoly::term(2, 0, 0, 16) + QPoly::term(0, 1, 0, -48)));
    CHECK(c4() == sigma_pow(1, 0, 2) + sigma_pow(0, 1, 8));
    // c6 = -b2^3 + 36 b2 b4
    CHECK(c6() == from_q(QPoly::term(3, 0, 0, -64) + QPoly::term(1, 1, 0, 288)));
    // 1728 Delta = c4^3 - c6^2, i.e. 216 sigma^2 tau
    RingElement diff = c4().pow(3) - c6() * c6();
    CHECK(diff == sigma_pow(2, 1, 216));
    CHECK(diff == LocalScalar(1728) * delta_pow(1));
    CHECK(c4().degree() == std::optional<long>(4));
    CHECK(c6().degree() == std::optional<long>(6));
    CHECK(delta_pow(2).degree() == std::optional<long>(24));
}

TEST_CASE("psi_d and psi_[2]") {
    // psi_d(sigma) = 4 tau via the q-coordinates: psi_d(8 q4) = 8 q2^2 - 32 q4
    CHECK(psi_d(sigma_pow(1, 0, 1)) == sigma_pow(0, 1, 4));
    CHECK(psi_d(from_q(QPoly::term(0, 1, 0, 8))) ==
          from_q(QPoly::term(2, 0, 0, 8) + QPoly::term(0, 1, 0, -32)));
    CHECK(psi_d(c4()) == sigma_pow(1, 0, 32) + sigma_pow(0, 1, 8));
    CHECK(psi2(RingElement::q2()) == LocalScalar(4) * RingElement::q2());
    // multiplication by 2^t on internal degree t
    CHECK(psi2(c6()) == LocalScalar(64) * c6());
}

TEST_CASE("h on eigenclasses") {
    EigenClass a11 = EigenClass::from_pair(false, -1, 1);
    CHECK(h_map(a11.element()).is_zero());
    EigenClass b01 = EigenClass::from_pair(true, 0, 1);
    CHECK(h_map(b01.element()) == LocalScalar(9) * b01.element());
    CHECK(h_map(RingElement::one()) == LocalScalar(2) * RingElement::one());
}

TEST_CASE("eigenclass enumeration round-trips") {
    for (long m = -9; m <= 9; ++m)
        for (long v = 0; v <= 9; ++v) {
            EigenClass cls = EigenClass::from_mv(false, m, v);
            CHECK(cls.i < cls.j);
            CHECK(cls.m() == m);
            CHECK(cls.v() == v);
            CHECK(cls.degree() == 4 * m);
            CHECK(EigenClass::from_mv(true, m, v).degree() == 4 * m + 2);
        }
}

TEST_CASE("antisymmetrize") {
    EigenClass a12 = EigenClass::from_pair(false, 1, 2);
    AntisymParts p = antisymmetrize(a12.element());
    REQUIRE(p.eigen.size() == 1);
    CHECK(p.eigen.at(a12) == LocalScalar(1));
    CHECK(p.symmetric.is_zero());

    p = antisymmetrize(sigma_pow(3, 3, 5));
    CHECK(p.eigen.empty());
    CHECK(p.symmetric == sigma_pow(3, 3, 5));

    // -3 Delta = -(3/8) sigma^2 tau: antisymmetric part (3/16) a(1,2)
    p = antisymmetrize(LocalScalar(-3) * delta_pow(1));
    REQUIRE(p.eigen.size() == 1);
    CHECK(p.eigen.at(a12) == LocalScalar(3, 16));
    CHECK(p.symmetric ==
          sigma_pow(2, 1, LocalScalar(-3, 16)) + sigma_pow(1, 2, LocalScalar(-3, 16)));

    CHECK_THROWS(antisymmetrize(RingElement::one() + c4()));
}

TEST_CASE("projection to coker h") {
    // image of h dies
    RingElement x = c4() * c4() + LocalScalar(5) * sigma_pow(-1, 3, 1);
    CHECK(project_coker_h(h_map(x)).is_zero());
    RingElement xq = c6() * delta_pow(-1) + RingElement::monomial(1, -3, 1, 7);
    CHECK(project_coker_h(h_map(xq)).is_zero());
    // -3 Delta projects to 3 mod 9 on A_0^3
    CokerHProjection p = project_coker_h(LocalScalar(-3) * delta_pow(1));
    CHECK(p.m == 3);
    CHECK(p.mod_exp == 2);
    CHECK(p.residue(0) == 3);
    // -c4^3 has antisymmetric coefficients -144, -252, both 0 mod 9
    AntisymParts parts = antisymmetrize(-c4().pow(3));
    CHECK(parts.eigen.at(EigenClass::from_pair(false, 1, 2)) == LocalScalar(-144));
    CHECK(parts.eigen.at(EigenClass::from_pair(false, 0, 3)) == LocalScalar(-252));
    CHECK(project_coker_h(-c4().pow(3)).is_zero());
}

TEST_CASE("kernel and cokernel of h per degree") {
    auto kch = ker_coker_h(0, 8, 8);
    // degree 4 (m = 1): one Z/3 per enumerated class
    ModuleInvariants c4inv = kch[4].coker.invariants();
    CHECK(c4inv.free_rank == 0);
    CHECK(c4inv.torsion == std::vector<long>(9, 1));
    // degree 6 (m = 1): Z/9 per class
    ModuleInvariants c6inv = kch[6].coker.invariants();
    CHECK(c6inv.torsion == std::vector<long>(9, 2));
    // degree 0: kernel free on a(-i,i), 1 <= i <= V
    CHECK(kch[0].ker.invariants().free_rank == 8);
    CHECK(kch[0].ker.gens.front().label == "a(-1,1)");
    CHECK(kch[0].ker.gens.back().label == "a(-8,8)");
    // odd degrees vanish
    CHECK(kch[1].coker.gens.empty());
}

TEST_CASE("ring invariant suite") {
    for (const auto& r : verify_ring(12)) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
}
