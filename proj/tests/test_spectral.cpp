#include "qtwo/chart.hpp"
#include "qtwo/serialize.hpp"
#include "qtwo/spectral.hpp"

#include <catch_amalgamated.hpp>

using namespace qtwo;

TEST_CASE("spot values of the E2 page") {
    E2Page direct = e2_direct(-8, 8, 8, false);
    // E2^{0,0} = Z(3)
    ModuleInvariants e00 = direct.invariants_at(0, 0);
    CHECK(e00.free_rank == 1);
    CHECK(e00.torsion.empty());
    // E2^{0,6} = Z/3{beta}
    CHECK(direct.invariants_at(0, 6) == ModuleInvariants{0, {1}});
    // E2^{0,4} = 0, odd rows vanish
    CHECK(direct.invariants_at(0, 4).trivial());
    CHECK(direct.invariants_at(1, 5).trivial());
    CHECK(direct.invariants_at(2, 3).trivial());
    // E2^{1,4}: Z/3^{val3(3)} plus the truncated Z/3 family: all exponent 1
    ModuleInvariants e14 = direct.invariants_at(1, 4);
    CHECK(e14.free_rank == 0);
    for (long e : e14.torsion)
        CHECK(e == 1);
    CHECK(static_cast<long>(e14.torsion.size()) ==
          1 + [] {
              long n = 0;
              for (long v = 0; v <= 8; ++v)
                  if (gamma_factor(0, 1, v) == 3)
                      ++n;
              return n;
          }());
}

TEST_CASE("filtration route and labels") {
    E2Page filt = e2_filtration(-8, 8, 8, false, true);
    // E2^{2,6} (m = 1): families Z/3 + Z/3^2 with val3(6*1+3) = 2
    ModuleInvariants e26 = filt.invariants_at(2, 6);
    CHECK(e26.free_rank == 0);
    CHECK(e26.torsion.front() == 1);
    CHECK(e26.torsion.back() == 2);
    // E2^{1,2} carries the alpha pass-through
    const ModulePresentation* p12 = filt.at(1, 2);
    REQUIRE(p12);
    bool has_alpha = false;
    for (const auto& g : p12->gens)
        has_alpha = has_alpha || g.label == "α";
    CHECK(has_alpha);
    // E2^{0,0} generator is the unit class
    const ModulePresentation* p00 = filt.at(0, 0);
    REQUIRE(p00);
    CHECK(p00->gens.size() == 1);
    CHECK(p00->gens[0].label == "C_0^0");
}

TEST_CASE("the t = 0 column") {
    E2Page filt = e2_filtration(0, 0, 10, false);
    // H1: Z(3)^{V+1} + Z/3 on v not divisible by 3
    ModuleInvariants h1 = filt.invariants_at(1, 0);
    CHECK(h1.free_rank == 11);
    CHECK(static_cast<long>(h1.torsion.size()) == 10 - 10 / 3);
    ModuleInvariants h2 = filt.invariants_at(2, 0);
    CHECK(h2.free_rank == 10);
    CHECK(h2.torsion == std::vector<long>(7, 1));
}

TEST_CASE("case 5 degree t = 54") {
    E2Page direct = e2_direct(54, 54, 12, false);
    ModuleInvariants h1 = direct.invariants_at(1, 54);
    // U^54 = (Z/3)^3 + Z/3^4 sits inside, plus K'' and the torsion class
    CHECK(h1.torsion.back() == 4);
    ResolveUResult ru = resolve_u(13, 12);
    ModuleInvariants u = ru.u.invariants();
    CHECK(u.torsion == std::vector<long>{1, 1, 1, 4});
    // the rest of H1 is K'' plus the pass-through beta^3 Delta^3 class
    long expected_z3 = 1;  // torsion class
    for (long v = ell_max(1, 13) + 1; v <= 12; ++v)
        if (gamma_factor(1, 13, v) == 3)
            ++expected_z3;
    CHECK(static_cast<long>(h1.torsion.size()) == expected_z3 + 4);
}

TEST_CASE("theorem table instantiation") {
    SectorContext sc4 = make_sector(4, 8);
    TheoremEntry th = theorem_entry(1, sc4);
    CHECK(th.pres.invariants() == e2_direct(4, 4, 8, false).invariants_at(1, 4));
    SectorContext sc8 = make_sector(8, 8);
    th = theorem_entry(2, sc8);
    for (long e : th.pres.invariants().torsion)
        CHECK(e == 1);  // val3(6m) with m=2: all Z/3
    SectorContext sc54 = make_sector(54, 12);
    th = theorem_entry(1, sc54);
    CHECK(th.u_placeholder);
    th = theorem_entry(2, sc54);
    CHECK(th.rel_placeholder);
    // odd degrees and s >= 3 vanish
    SectorContext sc7 = make_sector(7, 8);
    CHECK(theorem_entry(0, sc7).pres.gens.empty());
    CHECK(theorem_entry(1, sc7).pres.gens.empty());
    CHECK(theorem_entry(3, sc4).pres.gens.empty());
}

TEST_CASE("cross-check over a window") {
    CrossCheckReport rep = cross_check(-16, 16, 8, false);
    std::string first_failure = rep.failures.empty() ? std::string() : rep.failures.front();
    INFO(first_failure);
    CHECK(rep.all_match);
    CHECK(rep.stabilized);
    for (const auto& row : rep.rows) {
        CHECK(row.direct_eq_filtration);
        CHECK(row.matches_theorem);
    }
}

TEST_CASE("basis independence of the direct route") {
    for (long t : {-6L, -4L, 0L, 2L, 4L, 6L, 12L}) {
        SectorContext eigen = make_sector(t, 8, WindowBasis::Eigen);
        SectorContext mono = make_sector(t, 8, WindowBasis::Monomial);
        Cohomology he = complex_cohomology(make_complex(eigen), false);
        Cohomology hm = complex_cohomology(make_complex(mono), false);
        CHECK(he.h0.invariants() == hm.h0.invariants());
        CHECK(he.h1.invariants() == hm.h1.invariants());
        CHECK(he.h2.invariants() == hm.h2.invariants());
    }
}

TEST_CASE("differential bookkeeping") {
    E2Page page = e2_direct(-12, 12, 8, false);
    auto cands = d2_candidates(page);
    for (const auto& c : cands) {
        bool both = c.source.s == 0 && page.at(0, c.source.t) && page.at(2, c.source.t + 1);
        CHECK(c.possibly_nonzero == both);
        if (!c.possibly_nonzero)
            CHECK(!c.reason.empty());
    }
    CollapseReport cr = collapse_check(page);
    CHECK(cr.ok);
    // nothing lives above s = 2
    for (const auto& [bd, e] : page.entries)
        CHECK(bd.s <= 2);
}

TEST_CASE("deterministic serialization") {
    E2Page a = e2_filtration(-6, 6, 8, true, true);
    E2Page b = e2_filtration(-6, 6, 8, false, true);
    CHECK(to_json(a).dump(2) == to_json(b).dump(2));  // parallel = sequential
    std::string svg1 = chart_svg(a);
    std::string svg2 = chart_svg(b);
    CHECK(svg1 == svg2);
    CHECK(svg1.rfind("<?xml", 0) == 0);
    CHECK(svg1.find("</svg>") != std::string::npos);
    // ring element serialization round-trip shape
    Json j = to_json(c4() + c6());
    REQUIRE(j.is_array());
    CHECK(j.size() == 4);
    CHECK(j[0].contains("num"));
}
