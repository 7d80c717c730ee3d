#ifndef QTWO_VERIFY_HPP
#define QTWO_VERIFY_HPP

// Named verification suites.  Each check is a small exact computation with
// a pass/fail verdict; the CLI and the acceptance runner both drive these.

#include "arith.hpp"
#include "bring.hpp"
#include "connecting.hpp"
#include "homology.hpp"
#include "spectral.hpp"
#include "tmf.hpp"

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qtwo {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline void run(std::vector<CheckResult>& out, const std::string& name,
                const std::function<bool(std::string&)>& fn) {
    CheckResult r;
    r.name = name;
    try {
        r.pass = fn(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(r);
}

inline LocalScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-200, 200);
    static const long dens[] = {1, 2, 4, 5, 7, 8, 11, 16};
    std::uniform_int_distribution<int> di(0, 7);
    return LocalScalar(num(rng), dens[di(rng)]);
}

inline RingElement random_homogeneous(std::mt19937& rng, long m, int e) {
    std::uniform_int_distribution<long> iexp(-4, 4);
    RingElement out;
    for (int k = 0; k < 4; ++k) {
        long i = iexp(rng);
        out += RingElement::monomial(i, m - i, e, random_scalar(rng));
    }
    return out;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_arith() {
    using verify_detail::run;
    std::vector<CheckResult> out;
    run(out, "ring axioms on 10^4 random triples", [](std::string& detail) {
        std::mt19937 rng(20240811);
        for (int n = 0; n < 10000; ++n) {
            LocalScalar a = verify_detail::random_scalar(rng);
            LocalScalar b = verify_detail::random_scalar(rng);
            LocalScalar c = verify_detail::random_scalar(rng);
            if ((a + b) + c != a + (b + c) || (a * b) * c != a * (b * c) ||
                a * (b + c) != a * b + a * c || a + b != b + a || a * b != b * a) {
                detail = "failed at triple " + a.str() + ", " + b.str() + ", " + c.str();
                return false;
            }
        }
        return true;
    });
    run(out, "val3(4^n - 1) = val3(n) + 1 for 1 <= |n| <= 1000", [](std::string& detail) {
        for (long n = -1000; n <= 1000; ++n) {
            if (n == 0)
                continue;
            LocalScalar x = LocalScalar::two_pow(2 * n) - LocalScalar::one();
            if (!(x.val3() == Val3{true, val3_of(n).v + 1})) {
                detail = "n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    run(out, "val3(1 + 2*4^n) = val3(2n+1) + 1 for |n| <= 500", [](std::string& detail) {
        for (long n = -500; n <= 500; ++n) {
            LocalScalar x = LocalScalar::one() + LocalScalar(2) * LocalScalar::two_pow(2 * n);
            if (!(x.val3() == Val3{true, val3_of(2 * n + 1).v + 1})) {
                detail = "n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    run(out, "1 + 4^n and 1 - 2*4^n are units for |n| <= 500", [](std::string& detail) {
        for (long n = -500; n <= 500; ++n) {
            LocalScalar a = LocalScalar::one() + LocalScalar::two_pow(2 * n);
            LocalScalar b = LocalScalar::one() - LocalScalar(2) * LocalScalar::two_pow(2 * n);
            if (!a.is_unit() || !b.is_unit()) {
                detail = "n = " + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    run(out, "reduce_mod is a ring homomorphism", [](std::string& detail) {
        std::mt19937 rng(77);
        for (int n = 0; n < 2000; ++n) {
            LocalScalar a = verify_detail::random_scalar(rng);
            LocalScalar b = verify_detail::random_scalar(rng);
            for (long k : {1L, 2L, 4L}) {
                Int mod = pow3(k);
                if ((a + b).reduce_mod(k) != (a.reduce_mod(k) + b.reduce_mod(k)) % mod ||
                    (a * b).reduce_mod(k) != (a.reduce_mod(k) * b.reduce_mod(k)) % mod) {
                    detail = a.str() + ", " + b.str() + " mod 3^" + std::to_string(k);
                    return false;
                }
            }
        }
        return true;
    });
    return out;
}

inline std::vector<CheckResult> verify_ring(long V = 24) {
    using verify_detail::run;
    std::vector<CheckResult> out;
    run(out, "psi_d o psi_d = psi_[2] on 200 random homogeneous elements", [](std::string& d) {
        std::mt19937 rng(101);
        std::uniform_int_distribution<long> mm(-6, 6);
        std::uniform_int_distribution<int> ee(0, 1);
        for (int n = 0; n < 200; ++n) {
            RingElement x = verify_detail::random_homogeneous(rng, mm(rng), ee(rng));
            if (psi_d(psi_d(x)) != psi2(x)) {
                d = "element " + x.str();
                return false;
            }
        }
        return true;
    });
    run(out, "1728 Delta = c4^3 - c6^2", [](std::string&) {
        return LocalScalar(1728) * delta_pow(1) == c4().pow(3) - c6() * c6();
    });
    run(out, "from_q is a ring homomorphism on 200 random pairs", [](std::string& d) {
        std::mt19937 rng(102);
        std::uniform_int_distribution<long> ab(0, 3), cc(-2, 2);
        auto random_q = [&]() {
            QPoly p;
            for (int k = 0; k < 3; ++k)
                p = p + QPoly::term(ab(rng), ab(rng), cc(rng), verify_detail::random_scalar(rng));
            return p;
        };
        for (int n = 0; n < 200; ++n) {
            QPoly x = random_q(), y = random_q();
            if (from_q(x * y) != from_q(x) * from_q(y)) {
                d = "pair " + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    run(out, "h eigenvalues on a(i,j), b(i,j) for |i|,|j| <= 16", [](std::string& d) {
        for (long i = -16; i <= 16; ++i)
            for (long j = i + 1; j <= 16; ++j) {
                EigenClass a = EigenClass::from_pair(false, i, j);
                EigenClass b = EigenClass::from_pair(true, i, j);
                if (h_map(a.element()) != a.h_eigenvalue() * a.element() ||
                    h_map(b.element()) != b.h_eigenvalue() * b.element()) {
                    d = "(i,j) = (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    return false;
                }
            }
        return true;
    });
    run(out, "swap-symmetric elements lie in the image of h", [](std::string& d) {
        std::mt19937 rng(103);
        std::uniform_int_distribution<long> mm(-6, 6), ii(-5, 5);
        std::uniform_int_distribution<int> ee(0, 1);
        for (int n = 0; n < 200; ++n) {
            long m = mm(rng);
            int e = ee(rng);
            // random symmetric element, solved one eigencomponent at a time
            RingElement x, y;
            for (int k = 0; k < 3; ++k) {
                long i = ii(rng);
                long j = m - i;
                LocalScalar c = verify_detail::random_scalar(rng);
                RingElement s = RingElement::monomial(i, j, e, c);
                if (i != j)
                    s += RingElement::monomial(j, i, e, c);
                x += s;
                LocalScalar eigen = e ? LocalScalar(1) - LocalScalar(2) * LocalScalar(4).pow(m)
                                      : LocalScalar(1) + LocalScalar(4).pow(m);
                y += (LocalScalar::one() / eigen) * s;
            }
            if (h_map(y) != x) {
                d = "element " + x.str();
                return false;
            }
        }
        return true;
    });
    run(out, "ker/coker of h: closed form = SNF for |t| <= 80, V = " + std::to_string(V),
        [V](std::string&) {
            ker_coker_h(-80, 80, V);  // throws on disagreement or non-stabilization
            return true;
        });
    return out;
}

inline std::vector<CheckResult> verify_tmf() {
    using verify_detail::run;
    std::vector<CheckResult> out;
    run(out, "gamma sequences follow the mod-9 case split for |m| <= 20, v <= 24",
        [](std::string& d) {
            for (long m = -20; m <= 20; ++m)
                for (long v = 0; v <= 24; ++v) {
                    long r0 = mod_pos(m, 9);
                    int expect0 = mod_pos(v - (r0 <= 2 ? 0 : r0 <= 5 ? 1 : 2), 3) == 0 ? 1 : 3;
                    long r1 = mod_pos(m, 9);
                    int expect1 =
                        mod_pos(v - (r1 >= 1 && r1 <= 3 ? 0 : r1 >= 4 && r1 <= 6 ? 1 : 2), 3) == 0
                            ? 1
                            : 3;
                    if (gamma_factor(0, m, v) != expect0 || gamma_factor(1, m, v) != expect1) {
                        d = "m = " + std::to_string(m) + ", v = " + std::to_string(v);
                        return false;
                    }
                }
            return true;
        });
    run(out, "internal degrees: deg(C_v^m) = 4m, deg(D_v^m) = 4m + 2", [](std::string& d) {
        for (long m = -20; m <= 20; ++m)
            for (long v = 0; v <= 24; ++v) {
                if (basis_class(0, m, v).t_internal() != 4 * m ||
                    basis_class(1, m, v).t_internal() != 4 * m + 2) {
                    d = "m = " + std::to_string(m) + ", v = " + std::to_string(v);
                    return false;
                }
            }
        return true;
    });
    run(out, "embed is injective on each sector basis (distinct normal forms)",
        [](std::string& d) {
            for (long m : {-7L, -3L, 0L, 1L, 5L, 13L})
                for (int eps : {0, 1}) {
                    std::set<std::string> seen;
                    for (long v = 0; v <= 24; ++v) {
                        ZeroLineClass z = basis_class(eps, m, v);
                        z.gamma = 1;
                        std::string key = embed(z).str();
                        if (!seen.insert(key).second) {
                            d = "collision in sector (" + std::to_string(eps) + "," +
                                std::to_string(m) + ")";
                            return false;
                        }
                    }
                }
            return true;
        });
    run(out, "torsion occupies exactly the eight slots mod 72", [](std::string& d) {
        std::set<long> slots = {3, 10, 13, 20, 27, 30, 37, 40};
        for (long t = -144; t <= 144; ++t) {
            bool expect = slots.count(mod_pos(t, 72)) > 0;
            if ((torsion_at(t).size() == 1) != expect || torsion_at(t).size() > 1) {
                d = "t_top = " + std::to_string(t);
                return false;
            }
        }
        return true;
    });
    run(out, "g annihilates torsion and scales the 0-line by 2^t - 1", [](std::string& d) {
        for (long t = -72; t <= 72; ++t)
            for (const auto& tc : torsion_at_internal(t)) {
                Int r = g_scale(tc.t_internal()).reduce_mod(1);
                if (r != 0) {  // order 3 classes die under multiplication by 2^t - 1
                    d = tc.name();
                    return false;
                }
            }
        return g_scale(4) == LocalScalar(15) && g_scale(0).is_zero();
    });
    run(out, "pi_0 basis: 1, 3C_1, 3C_2, C_3, 3C_4, ...", [](std::string& d) {
        for (long v = 0; v <= 24; ++v) {
            int expect = v % 3 == 0 ? 1 : 3;
            if (basis_class(0, 0, v).gamma != expect) {
                d = "v = " + std::to_string(v);
                return false;
            }
        }
        return basis_class(0, 0, 0).monomial_label() == "1";
    });
    return out;
}

inline std::vector<CheckResult> verify_delta(long V = 16) {
    using verify_detail::run;
    std::vector<CheckResult> out;
    run(out, "delta0 formula = delta0 from first principles, v <= 10", [](std::string& d) {
        for (long v = 0; v <= 10; ++v) {
            ZeroLineClass z = basis_class(0, 0, v);
            z.gamma = 1;
            if (delta0_formula(v) != ker_h_coords(delta0_direct(z))) {
                d = "v = " + std::to_string(v);
                return false;
            }
        }
        return true;
    });
    run(out, "u_k = -2^{12k} for k <= 6", [](std::string& d) {
        for (long k = 1; k <= 6; ++k) {
            auto f = delta0_formula(k);
            if (f[2 * k] != -LocalScalar::two_pow(12 * k)) {
                d = "k = " + std::to_string(k);
                return false;
            }
        }
        return true;
    });
    run(out, "h annihilates delta0 images, v <= 8", [](std::string&) {
        for (long v = 0; v <= 8; ++v) {
            ZeroLineClass z = basis_class(0, 0, v);
            if (!h_map(delta0_direct(z)).is_zero())
                return false;
        }
        return true;
    });
    run(out, "delta1(C_v^0) = (1/2) delta0(C_v^0), v <= 10", [](std::string& d) {
        for (long v = 0; v <= 10; ++v) {
            CokerHProjection col = delta1_column_unscaled(0, 0, v);
            auto d0 = delta0_formula(v);
            std::map<long, LocalScalar> half, got;
            for (auto& [i, c] : d0)
                half[i - 1] = c / LocalScalar(2);
            for (auto& [w, c] : col.lift)
                if (!c.is_zero())
                    got[w] = c;
            if (half != got) {
                d = "v = " + std::to_string(v);
                return false;
            }
        }
        return true;
    });
    run(out, "delta1 is well-defined: phi_f(g x) = h((psi_d - 1)(embed x)) on 100 classes",
        [](std::string& d) {
            std::mt19937 rng(104);
            std::uniform_int_distribution<long> mm(-8, 8), vv(0, 8);
            std::uniform_int_distribution<int> ee(0, 1);
            for (int n = 0; n < 100; ++n) {
                ZeroLineClass z = basis_class(ee(rng), mm(rng), vv(rng));
                RingElement e = embed(z);
                RingElement lhs = g_scale(z.t_internal()) * e;
                RingElement rhs = h_map(psi_d(e) - e);
                if (lhs != rhs) {
                    d = z.label();
                    return false;
                }
            }
            return true;
        });
    run(out, "delta0 kernel/cokernel at V = 8 (free odd rows, Z/3 off multiples of 3)",
        [](std::string& d) {
            Delta0Analysis a = delta0_ker_coker(8);
            if (a.ker.invariants() != a.closed_ker.invariants())
                return false;
            // generator level: the kernel is exactly Z(3){1}
            if (a.ker.pres.gens.size() != 1 || a.ker.pres.gens[0].label != "C_0^0")
                return false;
            Echelon rel = col_echelon(a.matrix.dense(), false);
            for (long i = 1; i <= 16; i += 2) {
                std::vector<LocalScalar> e(a.matrix.rows());
                e[i - 1] = LocalScalar::one();
                if (element_order_exp(rel, e) != -1) {
                    d = "a(-" + std::to_string(i) + "," + std::to_string(i) + ") not free";
                    return false;
                }
            }
            for (long v = 1; v <= 8; ++v) {
                if (v % 3 == 0)
                    continue;
                ZeroLineClass z = basis_class(0, 0, v);
                z.gamma = 1;
                std::vector<LocalScalar> img(a.matrix.rows());
                for (auto& [i, c] : ker_h_coords(delta0_direct(z)))
                    img[i - 1] = c;
                if (element_order_exp(rel, img) != 1) {
                    d = "d0(C_" + std::to_string(v) + "^0) does not have order 3";
                    return false;
                }
            }
            return true;
        });
    run(out, "leading terms of delta1 columns for eps in {0,1}, |m| <= 20, v <= 16",
        [](std::string& d) {
            for (int eps = 0; eps <= 1; ++eps)
                for (long m = -20; m <= 20; ++m) {
                    if (eps == 0 && m == 0)
                        continue;
                    for (long v = 0; v <= 16; ++v)
                        verify_leading_term(eps, m, v);  // throws on mismatch
                }
            (void)d;
            return true;
        });
    run(out, "case analysis matches the closed forms for |m| <= 20", [V](std::string& d) {
        for (int eps = 0; eps <= 1; ++eps)
            for (long m = -20; m <= 20; ++m) {
                if (eps == 0 && m == 0)
                    continue;
                CaseReport r = case_analysis(eps, m, std::max(V, 16L));
                if (!(r.ker_match && r.coker_match && r.labels_match)) {
                    d = "sector (" + std::to_string(eps) + ", " + std::to_string(m) + ") case " +
                        std::to_string(r.case_id);
                    return false;
                }
            }
        return true;
    });
    run(out, "case 5: star column nonzero for m in {13, 40}", [](std::string& d) {
        for (long m : {13L, 40L}) {
            CokerHProjection star = delta1_column_unscaled(1, m, ell_max(1, m));
            if (star.is_zero() || *star.leading_row() > floor_div(m - 1, 2) - 1) {
                d = "m = " + std::to_string(m);
                return false;
            }
        }
        return true;
    });
    run(out, "resolve_u stabilizes and splits for m in {13, 40}", [V](std::string& d) {
        for (long m : {13L, 40L}) {
            ResolveUResult r = resolve_u(m, std::max(V, 20L));
            if (!r.stable || !r.split_ok) {
                d = "m = " + std::to_string(m);
                return false;
            }
        }
        return true;
    });
    return out;
}

inline std::vector<CheckResult> verify_e2(long t_min = -60, long t_max = 60, long V = 24,
                                          bool parallel = true) {
    using verify_detail::run;
    std::vector<CheckResult> out;
    CrossCheckReport rep = cross_check(t_min, t_max, V, parallel);
    run(out,
        "direct = filtration = theorem on t in [" + std::to_string(t_min) + ", " +
            std::to_string(t_max) + "], V = " + std::to_string(V),
        [&](std::string& d) {
            if (!rep.all_match) {
                d = rep.failures.empty() ? "mismatch" : rep.failures.front();
                return false;
            }
            return true;
        });
    run(out, "stabilization certificate (V vs V+4)", [&](std::string&) { return rep.stabilized; });
    run(out, "torsion pass-through in rows s = 0 and s = 1", [&](std::string& d) {
        E2Page page = e2_direct(t_min, t_max, V, parallel);
        for (long t = t_min; t <= t_max; ++t) {
            auto tors = torsion_at_internal(t);
            ModuleInvariants expect;
            for (std::size_t i = 0; i < tors.size(); ++i)
                expect.torsion.push_back(1);
            if (t != 0 && page.invariants_at(0, t) != expect) {
                d = "E2^{0," + std::to_string(t) + "}";
                return false;
            }
            if (tors.empty())
                continue;
            // the same classes appear in s = 1: their delta1 columns vanish
            SectorContext sc = make_sector(t, V);
            LesInput in = make_les_input(sc);
            for (int c = static_cast<int>(sc.zero_line.size()); c < in.coker_g.n(); ++c)
                for (int r = 0; r < in.coker_h.n(); ++r)
                    if (!in.delta1[r][c].is_zero()) {
                        d = "torsion column nonzero at t=" + std::to_string(t);
                        return false;
                    }
            ModuleInvariants h1 = page.invariants_at(1, t);
            long count = 0;
            for (long e : h1.torsion)
                if (e == 1)
                    ++count;
            if (count < static_cast<long>(tors.size())) {
                d = "E2^{1," + std::to_string(t) + "} missing torsion";
                return false;
            }
        }
        return true;
    });
    run(out, "d2 candidates and collapse at E3", [&](std::string& d) {
        E2Page page = e2_direct(t_min, t_max, V, parallel);
        CollapseReport cr = collapse_check(page);
        if (!cr.ok) {
            d = cr.detail;
            return false;
        }
        // the possibly-nonzero set is exactly the pairs with both ends nonzero
        for (const auto& c : d2_candidates(page)) {
            bool both = page.at(0, c.source.t) && page.at(2, c.source.t + 1) && c.source.s == 0;
            if (c.possibly_nonzero != both) {
                d = "candidate classification at t=" + std::to_string(c.source.t);
                return false;
            }
        }
        return true;
    });
    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, long trunc, long t_min,
                                          long t_max, bool parallel) {
    std::vector<CheckResult> out;
    auto append = [&out](std::vector<CheckResult> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    if (suite == "arith" || suite == "all")
        append(verify_arith());
    if (suite == "ring" || suite == "all")
        append(verify_ring(std::min(trunc, 24L)));
    if (suite == "tmf" || suite == "all")
        append(verify_tmf());
    if (suite == "delta" || suite == "all")
        append(verify_delta(trunc));
    if (suite == "e2" || suite == "all")
        append(verify_e2(t_min, t_max, trunc, parallel));
    return out;
}

}  // namespace qtwo

#endif
