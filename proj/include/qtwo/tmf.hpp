#ifndef QTWO_TMF_HPP
#define QTWO_TMF_HPP

// The graded Z_(3)-module pi_* TMF_(3), modeled additively: a monomial basis
// gamma c4^n c6^eps Delta^l for the 0-line plus a fixed table of 3-torsion
// classes, together with the map g = psi_[2] - 1 and the embedding of the
// 0-line into B.
//
// Gradings: internal degree t is canonical (c4 at 4, c6 at 6, Delta at 12,
// q2 at 2); the topological degree of a class with Adams-Novikov filtration
// s is 2t - s and is carried along for display.

#include "arith.hpp"
#include "bring.hpp"

#include <array>
#include <string>
#include <vector>

namespace qtwo {

// largest Delta-exponent in the (eps, m) sector of the 0-line
inline long ell_max(int eps, long m) {
    return eps == 0 ? floor_div(m, 3) : floor_div(m - 1, 3);
}

// gamma c4^n c6^eps Delta^l with gamma = 1 iff l = 0 mod 3, else 3
struct ZeroLineClass {
    long n = 0;
    int eps = 0;
    long ell = 0;
    int gamma = 1;

    long m() const { return n + eps + 3 * ell; }
    long v() const { return ell_max(eps, m()) - ell; }
    long t_internal() const { return 4 * n + 6 * eps + 12 * ell; }
    long t_topological() const { return 2 * t_internal(); }

    std::string label() const {
        std::string base = (eps ? "D" : "C");
        base += "_" + std::to_string(v()) + "^" + std::to_string(m());
        return gamma == 3 ? "3" + base : base;
    }
    std::string monomial_label() const {
        std::string s = gamma == 3 ? "3" : "";
        if (n > 0)
            s += "c4^" + std::to_string(n);
        if (eps)
            s += "c6";
        if (ell != 0)
            s += "D^" + std::to_string(ell);
        if (s.empty() || s == "3")
            s += "1";
        return s;
    }
};

// basis element gamma_v C_v^m (eps = 0) or theta_v D_v^m (eps = 1)
inline ZeroLineClass basis_class(int eps, long m, long v) {
    if (v < 0)
        throw std::domain_error("basis_class: v must be >= 0");
    ZeroLineClass z;
    z.eps = eps;
    z.ell = ell_max(eps, m) - v;
    z.n = m - 3 * z.ell - eps;
    z.gamma = mod_pos(z.ell, 3) == 0 ? 1 : 3;
    if (z.n < 0)
        throw std::domain_error("basis_class: negative c4 exponent");
    return z;
}

// the gamma / theta unit sequences, i.e. the gamma factor of the v-th class
inline int gamma_factor(int eps, long m, long v) { return basis_class(eps, m, v).gamma; }

// W^{eps,m}: one sector of the 0-line
struct DegreeSector {
    int eps = 0;
    long m = 0;
    long t_internal() const { return 4 * m + 2 * eps; }
};

// 0-line inclusion into B; torsion maps to 0 (cobar representatives involve
// r, and the relevant algebra maps send r to 0).
inline RingElement embed(const ZeroLineClass& z) {
    RingElement r = LocalScalar(z.gamma) * c4().pow(z.n);
    if (z.eps)
        r = r * c6();
    return r * delta_pow(z.ell);
}

// ---------------------------------------------------------------------------
// the 3-torsion of pi_* TMF_(3)

// Fixed 72-periodic table (topological degree, ANSS filtration), every class
// of order exactly 3; Delta^{3k} shifts the topological degree by 72k and
// the internal degree by 36k.
struct TorsionClass {
    std::string base;  // one of the eight names below
    long k = 0;        // Delta^{3k} factor
    int s = 0;         // ANSS filtration
    long t_top = 0;
    std::string rep;  // cobar representative, metadata only

    long t_internal() const { return (t_top + s) / 2; }
    std::string name() const {
        if (k == 0)
            return base;
        return base + "Δ^" + std::to_string(3 * k);
    }
};

namespace detail {

struct TorsionEntry {
    const char* base;
    long t_top;  // chart coordinates (2t-s, s) in the ANSS for TMF_(3)
    int s;
    const char* rep;
};

inline const std::array<TorsionEntry, 8>& torsion_table() {
    static const std::array<TorsionEntry, 8> table = {{
        {"α", 3, 1, "r"},
        {"β", 10, 2, "r²⊗r−r⊗r²"},
        {"αβ", 13, 3, "r·(r²⊗r−r⊗r²)"},
        {"β²", 20, 4, "(r²⊗r−r⊗r²)²"},
        {"b", 27, 1, "rΔ"},
        {"β³", 30, 6, "(r²⊗r−r⊗r²)³"},  // bα = β³ as a multiplicative extension
        {"βb", 37, 3, "(r²⊗r−r⊗r²)·rΔ"},
        {"β⁴", 40, 8, "(r²⊗r−r⊗r²)⁴"},
    }};
    return table;
}

}  // namespace detail

// torsion classes in one topological degree
inline std::vector<TorsionClass> torsion_at(long t_top) {
    std::vector<TorsionClass> out;
    long r = mod_pos(t_top, 72);
    for (const auto& e : detail::torsion_table())
        if (e.t_top == r) {
            long k = (t_top - r) / 72;
            out.push_back(TorsionClass{e.base, k, e.s, t_top, e.rep});
        }
    return out;
}

// torsion classes in one internal degree (t = (t_top + s)/2; the base table
// sits at internal degrees 2,6,8,12,14,18,20,24 and repeats mod 36)
inline std::vector<TorsionClass> torsion_at_internal(long t) {
    std::vector<TorsionClass> out;
    long r = mod_pos(t, 36);
    for (const auto& e : detail::torsion_table()) {
        long t_int0 = (e.t_top + e.s) / 2;
        if (t_int0 == r) {
            long k = (t - r) / 36;
            out.push_back(TorsionClass{e.base, k, e.s, e.t_top + 72 * k, e.rep});
        }
    }
    return out;
}

// g = psi_[2] - 1 acts on a class of internal degree t as 2^t - 1; torsion
// classes have order 3 and even t, so g kills them.
inline LocalScalar g_scale(long t_internal) {
    return LocalScalar::two_pow(t_internal) - LocalScalar::one();
}

// ---------------------------------------------------------------------------
// ker g and coker g per internal degree

struct KerCokerG {
    ModulePresentation ker;
    ModulePresentation coker;
};

// ker g: all of pi_0 plus all torsion.  coker g: the 0-line of degree t != 0
// becomes 3^{nu3(t)+1}-torsion on the same basis; torsion classes pass
// through untouched.
inline KerCokerG ker_coker_g(long t, long V) {
    KerCokerG out;
    for (const auto& tc : torsion_at_internal(t)) {
        out.ker.gens.push_back({tc.name(), 1});
        out.coker.gens.push_back({tc.name(), 1});
    }
    if (mod_pos(t, 2) != 0)
        return out;
    int eps = mod_pos(t, 4) == 2 ? 1 : 0;
    long m = (t - 2 * eps) / 4;
    long order = t == 0 ? -1 : val3_of(t).v + 1;
    for (long v = 0; v <= V; ++v) {
        ZeroLineClass z = basis_class(eps, m, v);
        if (t == 0)
            out.ker.gens.push_back({z.label(), -1});
        out.coker.gens.push_back({z.label(), order});
    }
    return out;
}

}  // namespace qtwo

#endif
