#include "qtwo/connecting.hpp"
#include "qtwo/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace qtwo;

TEST_CASE("delta0 by the binomial formula") {
    CHECK(delta0_formula(0).empty());
    // v = 1, evaluated by hand:
    //   2^8 (C(3,3)/4 - C(3,1)*4) = 256 (1/4 - 12) = -3008 on a(-1,1)
    //   -2^8 C(3,0) 4^2 = -4096 on a(-2,2)
    auto f = delta0_formula(1);
    REQUIRE(f.size() == 2);
    CHECK(f[1] == LocalScalar(-3008));
    CHECK(f[2] == LocalScalar(-4096));
    CHECK(f[2] == -LocalScalar::two_pow(12));

    // independent evaluation for a larger v
    auto f2 = delta0_formula(2);
    LocalScalar lead = LocalScalar::two_pow(16);
    CHECK(f2[1] == lead * (LocalScalar(binomial(6, 5), 4) - LocalScalar(binomial(6, 3) * 4)));
    CHECK(f2[2] == lead * (LocalScalar(binomial(6, 6), 16) - LocalScalar(binomial(6, 2) * 16)));
    CHECK(f2[3] == -lead * LocalScalar(binomial(6, 1) * 64));
    CHECK(f2[4] == -LocalScalar::two_pow(16 + 8));
}

TEST_CASE("delta0 from first principles agrees with the formula") {
    for (long v = 0; v <= 10; ++v) {
        ZeroLineClass z = basis_class(0, 0, v);
        z.gamma = 1;
        CHECK(delta0_formula(v) == ker_h_coords(delta0_direct(z)));
    }
    CHECK(delta0_direct(basis_class(0, 0, 0)).is_zero());
    for (long v = 0; v <= 8; ++v)
        CHECK(h_map(delta0_direct(basis_class(0, 0, v))).is_zero());
    CHECK_THROWS(delta0_direct(basis_class(0, 1, 0)));  // not in degree 0
}

TEST_CASE("delta0 kernel and cokernel at V = 8") {
    Delta0Analysis a = delta0_ker_coker(8);
    CHECK(a.ker.pres.gens.size() == 1);
    CHECK(a.ker.pres.gens[0].label == "C_0^0");
    CHECK(a.ker.pres.gens[0].order_exp == -1);
    ModuleInvariants ci = a.coker.invariants();
    CHECK(ci.free_rank == 8);  // odd rows a(-1,1) ... a(-15,15)
    CHECK(ci.torsion == std::vector<long>(6, 1));  // v in {1,2,4,5,7,8}
    // the closed-form pattern names the first free generators
    CHECK(a.closed_coker.gens[0].label == "a(-1,1)");
    CHECK(a.closed_coker.gens[1].label == "a(-3,3)");
    CHECK(a.closed_coker.gens[2].label == "a(-5,5)");
    CHECK(a.closed_coker.gens[3].label == "a(-7,7)");
}

TEST_CASE("delta1 halves delta0 on pi_0") {
    for (long v = 0; v <= 10; ++v) {
        CokerHProjection col = delta1_column_unscaled(0, 0, v);
        auto d0 = delta0_formula(v);
        std::map<long, LocalScalar> half, got;
        for (auto& [i, c] : d0)
            half[i - 1] = c / LocalScalar(2);
        for (auto& [w, c] : col.lift)
            if (!c.is_zero())
                got[w] = c;
        CHECK(half == got);
    }
}

TEST_CASE("delta1 columns in small sectors") {
    // class c4^3 in sector (0,3): all coefficients die mod 9
    CHECK(delta1_column(0, 3, 1).is_zero());
    // class 3 Delta: order-3 element supported on A_0^3; the lift is 3/16
    // and 3/16 = 3 * 4 = 3 mod 9
    CokerHProjection col = delta1_column(0, 3, 0);
    CHECK(!col.is_zero());
    CHECK(col.leading_row() == std::optional<long>(0));
    CHECK(col.residue(0) == 3);
}

TEST_CASE("leading terms") {
    LeadingTerm lt = leading_term(0, 3, 0);
    CHECK(lt.kind == LeadingTerm::Row);
    CHECK(lt.w == 0);
    CHECK(leading_term(0, 3, 1).kind == LeadingTerm::ZeroColumn);
    CHECK(leading_term(1, 13, 4).kind == LeadingTerm::Star);
    CHECK(leading_term(0, -2, 3).w == floor_div(-3, 2) - 2 * ell_max(0, -2) + 6);
    // verification over the acceptance window is exercised by verify_delta;
    // spot-check the four branches here
    verify_leading_term(0, -5, 7);
    verify_leading_term(0, 7, 1);
    verify_leading_term(1, -4, 3);
    verify_leading_term(1, 9, 5);
    verify_leading_term(1, 13, 4);
}

TEST_CASE("case analysis selects and matches the closed forms") {
    CaseReport r = case_analysis(0, -2, 12);
    CHECK(r.case_id == 1);
    // m = -2 is 7 mod 9: pattern {0, 1, 3, 4, ...}
    REQUIRE(r.closed_ker.gens.size() >= 2);
    CHECK(r.closed_ker.gens[0].label == "3C_0^-2");
    CHECK(r.closed_ker.gens[1].label == "3C_1^-2");
    CHECK(r.closed_ker.gens[2].label == "3C_3^-2");
    CHECK((r.ker_match && r.coker_match && r.labels_match));

    r = case_analysis(0, 3, 12);
    CHECK(r.case_id == 2);
    CHECK(r.closed_ker.gens[0].label == "C_1^3");
    CHECK(r.closed_ker.gens[0].order_exp == 2);  // Z/3^{val3(3)+1} = Z/9
    CHECK((r.ker_match && r.coker_match && r.labels_match));

    r = case_analysis(1, 0, 12);
    CHECK(r.case_id == 3);
    CHECK((r.ker_match && r.coker_match && r.labels_match));

    r = case_analysis(1, 9, 12);
    CHECK(r.case_id == 4);
    CHECK(r.closed_ker.gens[0].label == "D_2^9");
    CHECK(r.closed_ker.gens[0].order_exp == val3_of(2 * 9 + 1).v + 1);
    CHECK((r.ker_match && r.coker_match && r.labels_match));

    CHECK_THROWS(case_analysis(0, 0, 12));
}

TEST_CASE("case 5 and the resolution of U") {
    CaseReport r = case_analysis(1, 13, 12);
    CHECK(r.case_id == 5);
    CHECK(r.ker_match);
    CHECK(r.coker_match);
    REQUIRE(!r.closed_coker.relations.empty());
    CHECK(r.closed_coker.relations[0].label == "d1(D_4^13) = 0");
    // K'' starts at D_5^13 and skips v = 7 (Lemma-pattern: v != 1 mod 3)
    CHECK(r.closed_ker.gens[0].label == "3D_5^13");
    CHECK(r.closed_ker.gens[1].label == "3D_6^13");
    CHECK(r.closed_ker.gens[2].label == "3D_8^13");

    ResolveUResult u13 = resolve_u(13, 24);
    CHECK(u13.stable);
    CHECK(u13.split_ok);
    CHECK(u13.u.invariants() == ModuleInvariants{0, {1, 1, 1, 4}});
    ResolveUResult u40 = resolve_u(40, 24);
    CHECK(u40.stable);
    CHECK(u40.split_ok);
    CHECK(u40.u.invariants().torsion.back() == 5);  // the nu3(6m+3) = 5 cyclic survives

    CHECK_THROWS(resolve_u(1, 24));
    CHECK_THROWS(resolve_u(14, 24));
    CHECK_THROWS(resolve_u(-14, 24));
}

TEST_CASE("star columns for m = 13 and m = 40") {
    for (long m : {13L, 40L}) {
        CokerHProjection star = delta1_column_unscaled(1, m, ell_max(1, m));
        CHECK(!star.is_zero());
        CHECK(*star.leading_row() <= floor_div(m - 1, 2) - 1);
    }
}

TEST_CASE("delta invariant suite") {
    for (const auto& r : verify_delta(16)) {
        INFO(r.name << " " << r.detail);
        CHECK(r.pass);
    }
}
