#ifndef QTWO_CONNECTING_HPP
#define QTWO_CONNECTING_HPP

// The connecting homomorphisms of the filtration long exact sequence:
//   delta0 : ker g -> ker h,   the restriction of phi_q - phi_f,
//   delta1 : coker g -> coker h,  induced by -phi_f.
// Both are computed from first principles (embed into B, apply the algebra
// maps, project); the staircase structure of the resulting matrices is a
// verified property, not an input.
//
// Column v of the sector matrix is the image of the basis vector
// gamma_v C_v^m (resp. theta_v D_v^m); entries live in Z/3^{nu3(4m+2eps)+1}
// and exact Z_(3) lifts are retained throughout.

#include "arith.hpp"
#include "bring.hpp"
#include "homology.hpp"
#include "tmf.hpp"

#include <map>
#include <string>
#include <vector>

namespace qtwo {

// ---------------------------------------------------------------------------
// delta0 on pi_0: two routes

// Literal evaluation of the displayed binomial formula for delta0(C_v^0):
//   2^{8v} [ sum_{i=1..v} (C(3v,2v+i) 4^{-i} - C(3v,2v-i) 4^i) a_{-i,i} ]
// - 2^{8v} [ sum_{i=v+1..2v} C(3v,2v-i) 4^i a_{-i,i} ]
// returned as coefficients indexed by i.
inline std::map<long, LocalScalar> delta0_formula(long v) {
    if (v < 0)
        throw std::domain_error("delta0_formula: v must be >= 0");
    std::map<long, LocalScalar> out;
    LocalScalar lead = LocalScalar::two_pow(8 * v);
    for (long i = 1; i <= v; ++i) {
        LocalScalar c = LocalScalar(binomial(3 * v, 2 * v + i)) * LocalScalar::two_pow(-2 * i) -
                        LocalScalar(binomial(3 * v, 2 * v - i)) * LocalScalar::two_pow(2 * i);
        c = lead * c;
        if (!c.is_zero())
            out[i] = c;
    }
    for (long i = v + 1; i <= 2 * v; ++i) {
        LocalScalar c = -lead * LocalScalar(binomial(3 * v, 2 * v - i)) * LocalScalar::two_pow(2 * i);
        if (!c.is_zero())
            out[i] = c;
    }
    return out;
}

// First principles: (psi_d - 1) applied to the embedded class.  The result
// must land in ker h, which is checked.
inline RingElement delta0_direct(const ZeroLineClass& x) {
    if (x.t_internal() != 0)
        throw std::domain_error("delta0_direct: class not in degree 0");
    RingElement e = embed(x);
    RingElement d = psi_d(e) - e;
    if (!h_map(d).is_zero())
        throw VerificationError("delta0_direct: image not annihilated by h");
    return d;
}

// coefficients of a degree-0 element of ker h on the basis a(-i,i)
inline std::map<long, LocalScalar> ker_h_coords(const RingElement& x) {
    std::map<long, LocalScalar> out;
    if (x.is_zero())
        return out;
    AntisymParts parts = antisymmetrize(x);
    if (!parts.symmetric.is_zero())
        throw VerificationError("ker_h_coords: symmetric part nonzero");
    for (const auto& [cls, c] : parts.eigen) {
        if (cls.btype || cls.m() != 0)
            throw VerificationError("ker_h_coords: not supported on a(-i,i)");
        out[cls.j] = c;
    }
    return out;
}

struct Delta0Analysis {
    long V = 0;
    LabeledMatrix matrix;  // rows a(-1,1)..a(-2V,2V), columns gamma_v C_v^0
    ComputedModule ker, coker;
    ModulePresentation closed_ker, closed_coker;
};

namespace detail {

inline Delta0Analysis delta0_at(long V) {
    Delta0Analysis out;
    out.V = V;
    for (long i = 1; i <= 2 * V; ++i)
        out.matrix.row_labels.push_back(EigenClass::from_pair(false, -i, i).pair_label());
    for (long v = 0; v <= V; ++v) {
        ZeroLineClass z = basis_class(0, 0, v);
        out.matrix.col_labels.push_back(z.label());
        auto coords = ker_h_coords(delta0_direct(z));
        for (const auto& [i, c] : coords) {
            if (i > 2 * V)
                throw std::logic_error("delta0_at: column support beyond row window");
            out.matrix.set(static_cast<int>(i - 1), static_cast<int>(v), c);
        }
    }
    PresentedModule src = PresentedModule::free_module(out.matrix.col_labels);
    PresentedModule tgt = PresentedModule::free_module(out.matrix.row_labels);
    KernelCokernel kc = kernel_cokernel(out.matrix.dense(), src, tgt);
    out.ker = kc.ker;
    out.coker = kc.coker;
    // the pattern: kernel Z(3){1}; cokernel free on odd a(-i,i) plus Z/3 on
    // the image of C_v^0 for v not a multiple of 3
    out.closed_ker.gens.push_back({"C_0^0", -1});
    for (long i = 1; i <= 2 * V; i += 2)
        out.closed_coker.gens.push_back({EigenClass::from_pair(false, -i, i).pair_label(), -1});
    for (long v = 1; v <= V; ++v)
        if (mod_pos(v, 3) != 0)
            out.closed_coker.gens.push_back({"d0(C_" + std::to_string(v) + "^0)", 1});
    return out;
}

}  // namespace detail

// Kernel and cokernel of delta0 restricted to pi_0, via SNF of the truncated
// matrix; the closed-form pattern must match at both V and V+4.
inline Delta0Analysis delta0_ker_coker(long V) {
    if (V < 2)
        throw std::domain_error("delta0_ker_coker: V must be >= 2");
    Delta0Analysis result;
    for (long vv : {V, V + 4}) {
        Delta0Analysis a = detail::delta0_at(vv);
        if (a.ker.invariants() != a.closed_ker.invariants() ||
            a.coker.invariants() != a.closed_coker.invariants())
            throw NonStabilizationError("delta0_ker_coker: pattern mismatch at V=" +
                                        std::to_string(vv));
        if (vv == V)
            result = a;
    }
    return result;
}

// ---------------------------------------------------------------------------
// delta1 columns and the leading-term staircase

// delta1 applied to the basis vector gamma_v C_v^m / theta_v D_v^m
inline CokerHProjection delta1_column(int eps, long m, long v) {
    return project_coker_h(-embed(basis_class(eps, m, v)));
}

// the same column for the unscaled class C_v^m / D_v^m
inline CokerHProjection delta1_column_unscaled(int eps, long m, long v) {
    ZeroLineClass z = basis_class(eps, m, v);
    z.gamma = 1;
    return project_coker_h(-embed(z));
}

struct LeadingTerm {
    enum Kind { Row, ZeroColumn, Star } kind = Row;
    long w = 0;

    std::string str() const {
        switch (kind) {
            case ZeroColumn:
                return "0";
            case Star:
                return "*";
            default:
                return "w=" + std::to_string(w);
        }
    }
};

// Predicted leading row of the delta1 column for C_v^m (eps = 0) or D_v^m
// (eps = 1).  The branch index ell is ell_max(eps, m) in all four displays;
// v = ell gives the zero column, except that for eps = 1, m > 0 and
// m = 13 mod 27 the column is nonzero ("*") with support strictly above the
// staircase.  m = 0, eps = 0 follows the m > 0 shape with ell = 0.
inline LeadingTerm leading_term(int eps, long m, long v) {
    if (v < 0)
        throw std::domain_error("leading_term: v must be >= 0");
    long ell = ell_max(eps, m);
    long fl = floor_div(m - 1, 2);
    bool positive = eps == 0 ? m >= 0 : m > 0;
    if (!positive)
        return LeadingTerm{LeadingTerm::Row, fl - 2 * ell + 2 * v};
    if (v < ell)
        return LeadingTerm{LeadingTerm::Row, fl - ell + v};
    if (v == ell) {
        if (eps == 1 && mod_pos(m, 27) == 13)
            return LeadingTerm{LeadingTerm::Star, 0};
        return LeadingTerm{LeadingTerm::ZeroColumn, 0};
    }
    return LeadingTerm{LeadingTerm::Row, fl - 2 * ell + 2 * v};
}

// Check the computed column against the prediction: the maximal-index
// nonzero residue sits at the predicted row with a unit lift; zero columns
// vanish identically; star columns are nonzero with support in and above
// the row floor((m-1)/2) - 1.
inline void verify_leading_term(int eps, long m, long v) {
    CokerHProjection col = delta1_column_unscaled(eps, m, v);
    LeadingTerm pred = leading_term(eps, m, v);
    auto fail = [&](const std::string& why) {
        throw VerificationError("leading term mismatch at (eps=" + std::to_string(eps) +
                                ", m=" + std::to_string(m) + ", v=" + std::to_string(v) +
                                "): " + why);
    };
    switch (pred.kind) {
        case LeadingTerm::ZeroColumn:
            if (!col.is_zero())
                fail("expected zero column");
            break;
        case LeadingTerm::Star: {
            if (col.is_zero())
                fail("expected nonzero star column");
            long u_y_row = floor_div(m - 1, 2) - 1;
            if (*col.leading_row() > u_y_row)
                fail("star column support below row of u_y");
            break;
        }
        case LeadingTerm::Row: {
            auto lead = col.leading_row();
            if (!lead)
                fail("column vanished");
            if (*lead != pred.w)
                fail("leading row " + std::to_string(*lead) + " != predicted " +
                     std::to_string(pred.w));
            if (!col.lift.at(*lead).is_unit())
                fail("leading coefficient not a unit");
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// sector matrices and the case analysis

struct ConnectingMatrix {
    int eps = 0;
    long m = 0;
    long V = 0;
    long W = 0;           // rows 0..W
    long mod_exp = 1;     // entries in Z/3^mod_exp
    LabeledMatrix lifts;  // exact Z_(3) lifts, columns already gamma-scaled

    // Representative with entries reduced into [0, 3^mod_exp): the same map
    // of Z/3^k-modules, but with small entries the elimination can digest.
    Mat reduced() const {
        Mat r = lifts.dense();
        for (auto& row : r)
            for (auto& c : row)
                if (!c.is_zero())
                    c = LocalScalar(c.reduce_mod(mod_exp));
        return r;
    }
};

inline ConnectingMatrix build_connecting_matrix(int eps, long m, long V) {
    if (eps == 0 && m == 0)
        throw std::domain_error("build_connecting_matrix: sector (0,0) is the delta0 sector");
    ConnectingMatrix cm;
    cm.eps = eps;
    cm.m = m;
    cm.V = V;
    cm.mod_exp = eps ? val3_of(2 * m + 1).v + 1 : val3_of(m).v + 1;
    std::vector<CokerHProjection> cols;
    long w_max = 0;
    for (long v = 0; v <= V; ++v) {
        cols.push_back(delta1_column(eps, m, v));
        for (const auto& [w, c] : cols.back().lift)
            w_max = std::max(w_max, w);
    }
    cm.W = w_max;
    for (long w = 0; w <= cm.W; ++w)
        cm.lifts.row_labels.push_back(EigenClass::from_mv(eps == 1, m, w).enum_label());
    for (long v = 0; v <= V; ++v)
        cm.lifts.col_labels.push_back(basis_class(eps, m, v).label());
    for (long v = 0; v <= V; ++v)
        for (const auto& [w, c] : cols[v].lift)
            cm.lifts.set(static_cast<int>(w), static_cast<int>(v), c);
    return cm;
}

// the theta/gamma = 3 positions v <= V, excluding excl (pass -1 for none)
inline std::vector<long> unit3_positions(int eps, long m, long V, long excl) {
    std::vector<long> out;
    for (long v = 0; v <= V; ++v)
        if (v != excl && gamma_factor(eps, m, v) == 3)
            out.push_back(v);
    return out;
}

struct ResolveUResult {
    long m = 0;
    long V = 0;
    long ell = 0;
    ModulePresentation u;            // the complement of K'' in ker delta1
    ModulePresentation kernel_full;  // the whole kernel at truncation V
    bool stable = false;             // identical u at V and V+4
    bool split_ok = false;           // inv(kernel) = inv(K'') + inv(u)
};

namespace detail {

inline PresentedModule sector_source(const ConnectingMatrix& cm) {
    std::vector<long> orders(cm.lifts.cols(), cm.mod_exp);
    return PresentedModule::with_orders(cm.lifts.col_labels, orders);
}
inline PresentedModule sector_target(const ConnectingMatrix& cm) {
    std::vector<long> orders(cm.lifts.rows(), cm.mod_exp);
    return PresentedModule::with_orders(cm.lifts.row_labels, orders);
}

// U at one truncation: the kernel restricted to columns v <= ell, which the
// staircase argument identifies with the complement of K'' in the kernel.
inline ComputedModule resolve_u_at(const ConnectingMatrix& cm, long ell) {
    Mat dense = cm.reduced();
    Mat restricted = mat_zero(cm.lifts.rows(), static_cast<int>(ell) + 1);
    std::vector<std::string> labels;
    for (long v = 0; v <= ell; ++v) {
        labels.push_back(cm.lifts.col_labels[v]);
        for (int r = 0; r < cm.lifts.rows(); ++r)
            restricted[r][v] = dense[r][v];
    }
    PresentedModule src =
        PresentedModule::with_orders(labels, std::vector<long>(ell + 1, cm.mod_exp));
    return kernel(restricted, src, sector_target(cm), "u");
}

}  // namespace detail

// Finite-truncation resolution of U^{4m+2} = ker(delta1|W^{1,m}) / K''
// for m > 0, m = 13 mod 27, with a stabilization certificate (V vs V+4)
// and a computational verification of the direct-sum split.
inline ResolveUResult resolve_u(long m, long V) {
    if (m <= 0 || mod_pos(m, 27) != 13)
        throw std::domain_error("resolve_u: requires m > 0 with m = 13 mod 27");
    ResolveUResult out;
    out.m = m;
    out.V = V;
    out.ell = ell_max(1, m);
    if (V < out.ell + 2)
        throw std::domain_error("resolve_u: truncation too small for the sector");

    ModulePresentation u_prev;
    for (long vv : {V, V + 4}) {
        ConnectingMatrix cm = build_connecting_matrix(1, m, vv);
        ComputedModule full = kernel(cm.reduced(), detail::sector_source(cm),
                                     detail::sector_target(cm), "ker");
        ComputedModule u = detail::resolve_u_at(cm, out.ell);

        // K'' within this truncation
        ModulePresentation kpp;
        Mat kpp_vectors = mat_zero(cm.lifts.cols(), 0);
        for (long v : unit3_positions(1, m, vv, out.ell))
            if (v > out.ell) {
                kpp.gens.push_back({"3D_" + std::to_string(v) + "^" + std::to_string(m), 1});
                std::vector<LocalScalar> vec(cm.lifts.cols());
                vec[v] = LocalScalar(pow3(cm.mod_exp - 1));
                kpp_vectors = mat_hconcat(kpp_vectors, mat_column(vec));
            }
        bool split = full.invariants() == kpp.invariants().merged(u.invariants());
        if (vv == V) {
            out.u = u.pres;
            out.kernel_full = full.pres;
            out.split_ok = split;
        } else {
            out.stable = out.split_ok && split && u.pres.invariants() == out.u.invariants();
        }
        if (!split)
            throw VerificationError("resolve_u: K'' + U does not match the kernel at V=" +
                                    std::to_string(vv));
    }
    if (!out.stable)
        throw NonStabilizationError("resolve_u: U changed between V and V+4 (m=" +
                                    std::to_string(m) + ")");
    return out;
}

// ---------------------------------------------------------------------------
// closed forms of the five cases and their verification

struct CaseReport {
    int case_id = 0;
    int eps = 0;
    long m = 0;
    long V = 0;
    ModulePresentation closed_ker, closed_coker;
    ModulePresentation computed_ker, computed_coker;
    bool ker_match = false;
    bool coker_match = false;
    bool labels_match = false;
    std::string note;
};

inline int case_id_of(int eps, long m) {
    if (eps == 0)
        return m < 0 ? 1 : 2;
    if (m <= 0)
        return 3;
    return mod_pos(m, 27) == 13 ? 5 : 4;
}

inline CaseReport case_analysis(int eps, long m, long V) {
    if (eps == 0 && m == 0)
        throw std::domain_error("case_analysis: sector (0,0) is handled by delta0");
    CaseReport rep;
    rep.case_id = case_id_of(eps, m);
    rep.eps = eps;
    rep.m = m;
    rep.V = V;

    ConnectingMatrix cm = build_connecting_matrix(eps, m, V);
    const long k = cm.mod_exp;
    const long ell = ell_max(eps, m);
    const long fl = floor_div(m - 1, 2);
    const char cname = eps ? 'D' : 'C';
    PresentedModule src = detail::sector_source(cm);
    PresentedModule tgt = detail::sector_target(cm);
    Mat dense = cm.reduced();
    KernelCokernel kc = kernel_cokernel(dense, src, tgt);
    rep.computed_ker = kc.ker.pres;
    rep.computed_coker = kc.coker.pres;

    bool positive = eps == 0 ? m > 0 : m > 0;
    long zero_col = positive ? ell : -1;  // v = ell: zero (cases 2,4) or star (case 5)

    // --- closed-form kernel, with explicit generator vectors
    Mat ker_gens = mat_zero(cm.lifts.cols(), 0);
    auto push_ker = [&](long v, long order_exp, const LocalScalar& scale) {
        std::string label = gamma_factor(eps, m, v) == 3 ? "3" : "";
        label += std::string(1, cname) + "_" + std::to_string(v) + "^" + std::to_string(m);
        rep.closed_ker.gens.push_back({label, order_exp});
        std::vector<LocalScalar> vec(cm.lifts.cols());
        vec[v] = scale;
        ker_gens = mat_hconcat(ker_gens, mat_column(vec));
    };
    if (rep.case_id == 5) {
        ResolveUResult ru = resolve_u(m, V);
        for (long v : unit3_positions(eps, m, V, ell))
            if (v > ell)
                push_ker(v, 1, LocalScalar(pow3(k - 1)));
        for (const auto& g : ru.u.gens)
            rep.closed_ker.gens.push_back({"U:" + g.label, g.order_exp});
        rep.note = "kernel = K'' + U (U resolved at truncation)";
        rep.ker_match = rep.computed_ker.invariants() == rep.closed_ker.invariants();
    } else {
        if (positive && ell <= V)
            push_ker(ell, k, LocalScalar::one());
        for (long v : unit3_positions(eps, m, V, zero_col))
            push_ker(v, 1, LocalScalar(pow3(k - 1)));
        rep.ker_match = rep.computed_ker.invariants() == rep.closed_ker.invariants();
    }

    // --- closed-form cokernel
    // leading rows of the honest staircase columns; everything else keeps
    // its full cyclic order, and gamma = 3 columns contribute an order-3
    // class carried by the unscaled image
    std::map<long, long> lead_of;  // w -> v
    for (long v = 0; v <= V; ++v) {
        LeadingTerm lt = leading_term(eps, m, v);
        if (lt.kind == LeadingTerm::Row)
            lead_of[lt.w] = v;
    }
    Mat coker_gens = mat_zero(cm.lifts.rows(), 0);
    std::vector<long> pattern = unit3_positions(eps, m, V, zero_col);
    for (long v : pattern) {
        rep.closed_coker.gens.push_back(
            {"d1(" + std::string(1, cname) + "_" + std::to_string(v) + "^" +
                 std::to_string(m) + ")",
             1});
        CokerHProjection col = delta1_column_unscaled(eps, m, v);
        std::vector<LocalScalar> vec(cm.lifts.rows());
        for (const auto& [w, c] : col.lift)
            vec[w] = LocalScalar(c.reduce_mod(k));
        coker_gens = mat_hconcat(coker_gens, mat_column(vec));
    }
    for (long w = 0; w <= cm.W; ++w) {
        if (lead_of.count(w))
            continue;
        rep.closed_coker.gens.push_back(
            {EigenClass::from_mv(eps == 1, m, w).enum_label(), k});
        std::vector<LocalScalar> vec(cm.lifts.rows());
        vec[w] = LocalScalar::one();
        coker_gens = mat_hconcat(coker_gens, mat_column(vec));
    }
    if (rep.case_id == 5) {
        // single extra relation: the image of D_ell vanishes, expressed in
        // the closed-form generators through the alternative row basis
        Mat basis = mat_zero(cm.lifts.rows(), 0);
        std::vector<int> gen_slot;  // index into closed_coker gens, -1 if absorbed
        std::map<long, int> pattern_pos;
        for (std::size_t p = 0; p < pattern.size(); ++p)
            pattern_pos[pattern[p]] = static_cast<int>(p);
        for (long w = 0; w <= cm.W; ++w) {
            std::vector<LocalScalar> vec(cm.lifts.rows());
            if (lead_of.count(w)) {
                long v = lead_of[w];
                CokerHProjection col = delta1_column_unscaled(eps, m, v);
                for (const auto& [ww, c] : col.lift)
                    vec[ww] = LocalScalar(c.reduce_mod(k));
                gen_slot.push_back(pattern_pos.count(v) ? pattern_pos[v] : -1);
            } else {
                vec[w] = LocalScalar::one();
                long offset = static_cast<long>(pattern.size());
                long nonlead_index = 0;
                for (long ww = 0; ww < w; ++ww)
                    if (!lead_of.count(ww))
                        ++nonlead_index;
                gen_slot.push_back(static_cast<int>(offset + nonlead_index));
            }
            basis = mat_hconcat(basis, mat_column(vec));
        }
        CokerHProjection star = delta1_column_unscaled(eps, m, ell);
        std::vector<LocalScalar> starvec(cm.lifts.rows());
        for (const auto& [w, c] : star.lift)
            starvec[w] = LocalScalar(c.reduce_mod(k));
        auto y = solve_linear(basis, starvec);
        if (!y)
            throw std::logic_error("case_analysis: alternative row basis not unimodular");
        Relation rel;
        rel.label = "d1(D_" + std::to_string(ell) + "^" + std::to_string(m) + ") = 0";
        rel.coeffs.assign(rep.closed_coker.gens.size(), LocalScalar::zero());
        for (std::size_t c = 0; c < y->size(); ++c)
            if (gen_slot[c] >= 0)
                rel.coeffs[gen_slot[c]] += (*y)[c];
        rep.closed_coker.relations.push_back(rel);
    }
    rep.coker_match = rep.computed_coker.invariants() == rep.closed_coker.invariants();

    // --- generator-level verification
    bool labels_ok = true;
    Echelon coker_rel = col_echelon(mat_hconcat(dense, tgt.rel), false);
    // kernel generators really lie in the kernel and generate it
    for (int g = 0; g < mat_cols(ker_gens); ++g) {
        std::vector<LocalScalar> img = mat_apply(dense, mat_col_of(ker_gens, g));
        for (const auto& c : img)
            if (!c.is_zero() && c.reduce_mod(k) != 0)
                labels_ok = false;
    }
    if (rep.case_id != 5)
        labels_ok = labels_ok &&
                    submodule_invariants(ker_gens, src.rel) == rep.computed_ker.invariants();
    // cokernel: named classes have the stated orders and generate
    for (std::size_t g = 0; g < rep.closed_coker.gens.size(); ++g) {
        long expected = rep.closed_coker.gens[g].order_exp;
        if (rep.case_id == 5 && !rep.closed_coker.relations.empty()) {
            // orders are only lower bounds once the extra relation enters
            continue;
        }
        long got = element_order_exp(coker_rel, mat_col_of(coker_gens, static_cast<int>(g)));
        if (got != expected)
            labels_ok = false;
    }
    labels_ok = labels_ok && submodule_invariants(coker_gens, mat_hconcat(dense, tgt.rel)) ==
                                 rep.computed_coker.invariants();
    rep.labels_match = labels_ok;
    return rep;
}

}  // namespace qtwo

#endif
