#ifndef QTWO_HOMOLOGY_HPP
#define QTWO_HOMOLOGY_HPP

// Exact linear algebra over Z_(3) and Z/3^k: Smith normal form, kernels and
// cokernels of maps between finitely generated modules, cohomology of
// three-term complexes, and the six-term long-exact-sequence assembly.
//
// Over a discrete valuation ring elimination needs a single pass: pick the
// entry of minimal 3-adic valuation as pivot and clear its row and column.
// Quotients by the pivot stay in the ring because the pivot's valuation is
// minimal, and the Smith diagonal comes out weakly increasing for the same
// reason.
//
// Two elimination engines share that idea.  col_echelon / snf_invariants
// use the combined operation  col_j <- unit(p) * col_j - (entry/3^{val p}) * col_k,
// which divides only by powers of 3 and so never manufactures denominators;
// these carry the large-matrix work (kernels, lattice bases, solves,
// invariant factors).  smith_normal_form keeps full U, V transforms with
// the units absorbed into the diagonal, which is what the certificate tests
// and the small reduced sector matrices want.
//
// Convention: a Mat is a dense row-major matrix built with mat_zero(r, c).
// A matrix with zero rows forgets its column count, so the module-level
// routines take dimensions from their PresentedModule arguments and
// special-case empty sources and targets.

#include "arith.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtwo {

using Mat = std::vector<std::vector<LocalScalar>>;

inline Mat mat_zero(int rows, int cols) {
    return Mat(rows, std::vector<LocalScalar>(cols));
}

inline Mat mat_identity(int n) {
    Mat m = mat_zero(n, n);
    for (int i = 0; i < n; ++i)
        m[i][i] = LocalScalar::one();
    return m;
}

inline int mat_rows(const Mat& m) { return static_cast<int>(m.size()); }
inline int mat_cols(const Mat& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

inline Mat mat_mul(const Mat& a, const Mat& b) {
    int n = mat_rows(a), k = mat_cols(a), p = mat_cols(b);
    Mat c = mat_zero(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) {
            if (a[i][j].is_zero())
                continue;
            for (int l = 0; l < p; ++l) {
                if (b[j][l].is_zero())
                    continue;
                c[i][l] += a[i][j] * b[j][l];
            }
        }
    return c;
}

inline std::vector<LocalScalar> mat_apply(const Mat& a, const std::vector<LocalScalar>& x) {
    std::vector<LocalScalar> y(mat_rows(a));
    for (int i = 0; i < mat_rows(a); ++i)
        for (int j = 0; j < mat_cols(a); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero())
                y[i] += a[i][j] * x[j];
    return y;
}

inline Mat mat_hconcat(const Mat& a, const Mat& b) {
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    if (mat_rows(a) != mat_rows(b))
        throw std::invalid_argument("mat_hconcat: row mismatch");
    Mat c = a;
    for (int i = 0; i < mat_rows(a); ++i)
        c[i].insert(c[i].end(), b[i].begin(), b[i].end());
    return c;
}

inline Mat mat_column(const std::vector<LocalScalar>& v) {
    Mat c = mat_zero(static_cast<int>(v.size()), 1);
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        c[i][0] = v[i];
    return c;
}

inline std::vector<LocalScalar> mat_col_of(const Mat& m, int j) {
    std::vector<LocalScalar> v(mat_rows(m));
    for (int i = 0; i < mat_rows(m); ++i)
        v[i] = m[i][j];
    return v;
}

// Sparse matrix with row/column labels; no explicit zeros stored.
struct LabeledMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::map<std::pair<int, int>, LocalScalar> entries;

    int rows() const { return static_cast<int>(row_labels.size()); }
    int cols() const { return static_cast<int>(col_labels.size()); }

    void set(int r, int c, const LocalScalar& v) {
        if (v.is_zero())
            entries.erase({r, c});
        else
            entries[{r, c}] = v;
    }
    LocalScalar at(int r, int c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? LocalScalar::zero() : it->second;
    }
    Mat dense() const {
        Mat m = mat_zero(rows(), cols());
        for (const auto& [rc, v] : entries)
            m[rc.first][rc.second] = v;
        return m;
    }
};

// ---------------------------------------------------------------------------
// column echelon (denominator-free engine)

struct Echelon {
    Mat e;                                    // column-reduced copy of the input
    Mat t;                                    // input * t = e, if requested
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
    int rank = 0;
};

// Column echelon by min-valuation pivoting.  After step k every column
// beyond k vanishes on the pivot row of step k, so columns past the final
// rank are identically zero and greedy back-substitution along the pivot
// order is exact.  Quotients by the pivot are ring elements because the
// pivot valuation is minimal over the remaining submatrix.
inline Echelon col_echelon(Mat m, bool want_t, int cols_hint = -1) {
    const int nr = mat_rows(m);
    const int nc = m.empty() ? (cols_hint < 0 ? 0 : cols_hint) : mat_cols(m);
    Echelon out;
    if (want_t)
        out.t = mat_identity(nc);
    if (nr == 0 || nc == 0) {
        out.e = std::move(m);
        return out;
    }
    std::vector<bool> row_used(nr, false);
    int k = 0;
    while (k < nc) {
        int pr = -1, pc = -1;
        Val3 best = Val3::infinity();
        for (int i = 0; i < nr; ++i) {
            if (row_used[i])
                continue;
            for (int j = k; j < nc; ++j) {
                if (m[i][j].is_zero())
                    continue;
                Val3 v = m[i][j].val3();
                if (v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr < 0)
            break;
        if (pc != k) {
            for (int i = 0; i < nr; ++i)
                std::swap(m[i][pc], m[i][k]);
            if (want_t)
                for (int i = 0; i < nc; ++i)
                    std::swap(out.t[i][pc], out.t[i][k]);
        }
        LocalScalar pivot = m[pr][k];
        for (int j = k + 1; j < nc; ++j) {
            if (m[pr][j].is_zero())
                continue;
            LocalScalar q = m[pr][j] / pivot;  // col_j -= q * col_k
            for (int i = 0; i < nr; ++i)
                if (!m[i][k].is_zero())
                    m[i][j] -= q * m[i][k];
            if (want_t)
                for (int i = 0; i < nc; ++i)
                    if (!out.t[i][k].is_zero())
                        out.t[i][j] -= q * out.t[i][k];
        }
        row_used[pr] = true;
        out.pivots.push_back({pr, k});
        ++k;
    }
    out.rank = k;
    out.e = std::move(m);
    return out;
}

// Basis of {x : m x = 0} over Z_(3), as columns.
inline Mat free_kernel(const Mat& m, int cols_hint = -1) {
    Echelon ech = col_echelon(m, true, cols_hint);
    int nc = mat_cols(ech.t);
    Mat k = mat_zero(nc, nc - ech.rank);
    for (int j = ech.rank; j < nc; ++j)
        for (int i = 0; i < nc; ++i)
            k[i][j - ech.rank] = ech.t[i][j];
    return k;
}

// Coefficients on the echelon columns expressing b, if b lies in the span.
inline std::optional<std::vector<LocalScalar>> echelon_coords(const Echelon& ech,
                                                              std::vector<LocalScalar> b) {
    std::vector<LocalScalar> coeff(ech.rank);
    for (int p = 0; p < ech.rank; ++p) {
        auto [pr, pc] = ech.pivots[p];
        if (b[pr].is_zero())
            continue;
        LocalScalar piv = ech.e[pr][pc];
        if (b[pr].val3() < piv.val3())
            return std::nullopt;
        LocalScalar q = b[pr] / piv;
        coeff[pc] = q;
        for (int i = 0; i < static_cast<int>(b.size()); ++i)
            if (!ech.e[i][pc].is_zero())
                b[i] -= q * ech.e[i][pc];
    }
    for (const auto& v : b)
        if (!v.is_zero())
            return std::nullopt;
    return coeff;
}

// Solve m x = b over Z_(3) if possible.
inline std::optional<std::vector<LocalScalar>> solve_linear(const Echelon& ech,
                                                            const std::vector<LocalScalar>& b) {
    auto coeff = echelon_coords(ech, b);
    if (!coeff)
        return std::nullopt;
    if (ech.t.empty())
        throw std::logic_error("solve_linear: echelon lacks the transform");
    std::vector<LocalScalar> full(mat_cols(ech.t));
    for (int i = 0; i < ech.rank; ++i)
        full[i] = (*coeff)[i];
    return mat_apply(ech.t, full);
}
inline std::optional<std::vector<LocalScalar>> solve_linear(const Mat& m,
                                                            const std::vector<LocalScalar>& b) {
    return solve_linear(col_echelon(m, true), b);
}

// Invariant factors (exponents of 3) of a matrix over Z_(3), transforms not
// tracked.  Same combined operations on both sides.
struct DiagInfo {
    std::vector<long> exps;  // weakly increasing
    int rank = 0;
};

inline DiagInfo snf_invariants(Mat m) {
    const int nr = mat_rows(m), nc = mat_cols(m);
    DiagInfo out;
    int k = 0;
    const int kmax = std::min(nr, nc);
    while (k < kmax) {
        int pr = -1, pc = -1;
        Val3 best = Val3::infinity();
        for (int i = k; i < nr; ++i)
            for (int j = k; j < nc; ++j) {
                if (m[i][j].is_zero())
                    continue;
                Val3 v = m[i][j].val3();
                if (v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0)
            break;
        std::swap(m[pr], m[k]);
        if (pc != k)
            for (int i = k; i < nr; ++i)
                std::swap(m[i][pc], m[i][k]);
        LocalScalar pivot = m[k][k];
        for (int i = k + 1; i < nr; ++i) {
            if (m[i][k].is_zero())
                continue;
            LocalScalar q = m[i][k] / pivot;
            for (int j = k; j < nc; ++j)
                if (!m[k][j].is_zero())
                    m[i][j] -= q * m[k][j];
        }
        // column clearing touches row k only: column k is the pivot alone now
        for (int j = k + 1; j < nc; ++j)
            m[k][j] = LocalScalar::zero();
        out.exps.push_back(best.v);
        ++k;
    }
    out.rank = static_cast<int>(out.exps.size());
    for (int i = 1; i < out.rank; ++i)
        if (out.exps[i] < out.exps[i - 1])
            throw std::logic_error("snf_invariants: diagonal not weakly increasing");
    return out;
}

// ---------------------------------------------------------------------------
// Smith normal form with certified transforms

struct SnfResult {
    Mat u, uinv;             // row operations:    u * m * v = d
    Mat v, vinv;             // column operations: m = uinv * d * vinv
    std::vector<long> diag;  // exponents: d[k][k] = 3^diag[k], weakly increasing
    int rank = 0;
    LocalScalar det_u, det_v;  // units of Z_(3)

    Mat d(int rows, int cols) const {
        Mat m = mat_zero(rows, cols);
        for (int k = 0; k < rank; ++k)
            m[k][k] = LocalScalar(pow3(diag[k]));
        return m;
    }
};

inline SnfResult smith_normal_form(Mat m) {
    const int nr = mat_rows(m), nc = mat_cols(m);
    SnfResult res;
    res.u = mat_identity(nr);
    res.uinv = mat_identity(nr);
    res.v = mat_identity(nc);
    res.vinv = mat_identity(nc);
    res.det_u = LocalScalar::one();
    res.det_v = LocalScalar::one();

    auto swap_rows = [&](int a, int b) {
        if (a == b)
            return;
        std::swap(m[a], m[b]);
        std::swap(res.u[a], res.u[b]);
        for (int j = 0; j < nr; ++j)
            std::swap(res.uinv[j][a], res.uinv[j][b]);
        res.det_u = -res.det_u;
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b)
            return;
        for (int i = 0; i < nr; ++i)
            std::swap(m[i][a], m[i][b]);
        for (int i = 0; i < nc; ++i)
            std::swap(res.v[i][a], res.v[i][b]);
        std::swap(res.vinv[a], res.vinv[b]);
        res.det_v = -res.det_v;
    };
    auto row_sub = [&](int a, int b, const LocalScalar& q) {  // row[a] -= q * row[b]
        for (int j = 0; j < nc; ++j)
            if (!m[b][j].is_zero())
                m[a][j] -= q * m[b][j];
        for (int j = 0; j < nr; ++j)
            if (!res.u[b][j].is_zero())
                res.u[a][j] -= q * res.u[b][j];
        for (int j = 0; j < nr; ++j)
            if (!res.uinv[j][a].is_zero())
                res.uinv[j][b] += q * res.uinv[j][a];
    };
    auto col_sub = [&](int a, int b, const LocalScalar& q) {  // col[a] -= q * col[b]
        for (int i = 0; i < nr; ++i)
            if (!m[i][b].is_zero())
                m[i][a] -= q * m[i][b];
        for (int i = 0; i < nc; ++i)
            if (!res.v[i][b].is_zero())
                res.v[i][a] -= q * res.v[i][b];
        for (int i = 0; i < nc; ++i)
            if (!res.vinv[a][i].is_zero())
                res.vinv[b][i] += q * res.vinv[a][i];
    };
    auto row_scale = [&](int a, const LocalScalar& s) {  // s a unit
        LocalScalar sinv = LocalScalar::one() / s;
        for (int j = 0; j < nc; ++j)
            if (!m[a][j].is_zero())
                m[a][j] *= s;
        for (int j = 0; j < nr; ++j)
            if (!res.u[a][j].is_zero())
                res.u[a][j] *= s;
        for (int j = 0; j < nr; ++j)
            if (!res.uinv[j][a].is_zero())
                res.uinv[j][a] *= sinv;
        res.det_u *= s;
    };

    int k = 0;
    const int kmax = std::min(nr, nc);
    while (k < kmax) {
        int pr = -1, pc = -1;
        Val3 best = Val3::infinity();
        for (int i = k; i < nr; ++i)
            for (int j = k; j < nc; ++j) {
                if (m[i][j].is_zero())
                    continue;
                Val3 v = m[i][j].val3();
                if (v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0)
            break;
        swap_rows(k, pr);
        swap_cols(k, pc);
        row_scale(k, LocalScalar::one() / m[k][k].unit_part());
        LocalScalar pivot = m[k][k];  // exactly 3^best now
        for (int i = k + 1; i < nr; ++i)
            if (!m[i][k].is_zero())
                row_sub(i, k, m[i][k] / pivot);
        for (int j = k + 1; j < nc; ++j)
            if (!m[k][j].is_zero())
                col_sub(j, k, m[k][j] / pivot);
        res.diag.push_back(best.v);
        ++k;
    }
    res.rank = static_cast<int>(res.diag.size());
    for (int i = 1; i < res.rank; ++i)
        if (res.diag[i] < res.diag[i - 1])
            throw std::logic_error("smith_normal_form: diagonal not weakly increasing");
    return res;
}

// ---------------------------------------------------------------------------
// presentations

// Isomorphism-invariant summary of a finitely generated Z_(3)-module.
struct ModuleInvariants {
    long free_rank = 0;
    std::vector<long> torsion;  // exponents k of Z/3^k summands, ascending

    friend bool operator==(const ModuleInvariants& a, const ModuleInvariants& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
    friend bool operator!=(const ModuleInvariants& a, const ModuleInvariants& b) {
        return !(a == b);
    }
    bool trivial() const { return free_rank == 0 && torsion.empty(); }

    ModuleInvariants merged(const ModuleInvariants& o) const {
        ModuleInvariants r;
        r.free_rank = free_rank + o.free_rank;
        r.torsion = torsion;
        r.torsion.insert(r.torsion.end(), o.torsion.begin(), o.torsion.end());
        std::sort(r.torsion.begin(), r.torsion.end());
        return r;
    }

    std::string str() const {
        if (trivial())
            return "0";
        std::string s;
        auto app = [&s](const std::string& part) {
            if (!s.empty())
                s += " + ";
            s += part;
        };
        if (free_rank == 1)
            app("Z(3)");
        else if (free_rank > 1)
            app("Z(3)^" + std::to_string(free_rank));
        std::size_t i = 0;
        while (i < torsion.size()) {
            std::size_t j = i;
            while (j < torsion.size() && torsion[j] == torsion[i])
                ++j;
            std::string part = "Z/3";
            if (torsion[i] > 1)
                part += "^" + std::to_string(torsion[i]);
            if (j - i > 1)
                part = "(" + part + ")^" + std::to_string(j - i);
            app(part);
            i = j;
        }
        return s;
    }
};

// One named generator: order_exp = -1 for a free summand, else order 3^k.
struct Summand {
    std::string label;
    long order_exp = -1;
};

// An extra relation among named generators, used where a presentation is
// not in diagonal form (the single relation in the cokernel at t = 4m+2,
// m > 0, m = 13 mod 27 is the one case).
struct Relation {
    std::string label;
    std::vector<LocalScalar> coeffs;  // one per generator
};

struct ModulePresentation {
    std::vector<Summand> gens;
    std::vector<Relation> relations;

    bool diagonal() const { return relations.empty(); }

    ModuleInvariants invariants() const {
        if (diagonal()) {
            ModuleInvariants inv;
            for (const auto& g : gens) {
                if (g.order_exp < 0)
                    ++inv.free_rank;
                else if (g.order_exp > 0)
                    inv.torsion.push_back(g.order_exp);
            }
            std::sort(inv.torsion.begin(), inv.torsion.end());
            return inv;
        }
        int n = static_cast<int>(gens.size());
        if (n == 0)
            return {};
        Mat rel = mat_zero(n, 0);
        for (int i = 0; i < n; ++i)
            if (gens[i].order_exp >= 0) {
                std::vector<LocalScalar> col(n);
                col[i] = LocalScalar(pow3(gens[i].order_exp));
                rel = mat_hconcat(rel, mat_column(col));
            }
        for (const auto& r : relations)
            rel = mat_hconcat(rel, mat_column(r.coeffs));
        DiagInfo d = snf_invariants(rel);
        ModuleInvariants inv;
        inv.free_rank = n - d.rank;
        for (long e : d.exps)
            if (e > 0)
                inv.torsion.push_back(e);
        std::sort(inv.torsion.begin(), inv.torsion.end());
        return inv;
    }

    std::string str() const {
        std::string s;
        for (const auto& g : gens) {
            if (!s.empty())
                s += " + ";
            if (g.order_exp < 0)
                s += "Z(3){" + g.label + "}";
            else
                s += "Z/3" + (g.order_exp > 1 ? "^" + std::to_string(g.order_exp) : "") + "{" +
                     g.label + "}";
        }
        if (s.empty())
            s = "0";
        for (const auto& r : relations)
            s += " / (" + r.label + ")";
        return s;
    }
};

// A module given as Z^n modulo the span of relation columns, with labeled
// standard generators.  Working form for the kernel/cokernel machinery.
struct PresentedModule {
    std::vector<std::string> labels;
    Mat rel;  // n x r, always constructed with n rows

    int n() const { return static_cast<int>(labels.size()); }

    static PresentedModule free_module(std::vector<std::string> labels) {
        PresentedModule p;
        p.rel = mat_zero(static_cast<int>(labels.size()), 0);
        p.labels = std::move(labels);
        return p;
    }
    // orders[i] = -1 for free, else exponent k (relation 3^k e_i = 0)
    static PresentedModule with_orders(std::vector<std::string> labels,
                                       const std::vector<long>& orders) {
        int n = static_cast<int>(labels.size());
        PresentedModule p;
        p.labels = std::move(labels);
        p.rel = mat_zero(n, 0);
        for (int i = 0; i < n; ++i)
            if (orders[i] >= 0) {
                std::vector<LocalScalar> col(n);
                col[i] = LocalScalar(pow3(orders[i]));
                p.rel = mat_hconcat(p.rel, mat_column(col));
            }
        return p;
    }
};

// A subquotient produced by the machinery: diagonal summands, and when
// generator extraction was requested, generator vectors in the ambient
// module's coordinates.
struct ComputedModule {
    ModulePresentation pres;
    Mat gen_vectors;  // ambient_dim x gens.size(); empty in invariants-only mode

    ModuleInvariants invariants() const { return pres.invariants(); }
};

namespace detail {

// Basis of the column lattice of p (columns may be redundant), as an
// echelon whose coordinate solves are cheap.
inline Echelon lattice_basis(const Mat& p) {
    return col_echelon(p, false);
}

inline std::optional<int> single_support(const std::vector<LocalScalar>& vec) {
    int idx = -1;
    for (int i = 0; i < static_cast<int>(vec.size()); ++i) {
        if (vec[i].is_zero())
            continue;
        if (idx >= 0)
            return std::nullopt;
        idx = i;
    }
    if (idx < 0)
        return std::nullopt;
    return idx;
}

inline void synth_gens(ModulePresentation& pres, const DiagInfo& d, int ambient_rank,
                       const std::string& prefix) {
    int k = 0;
    for (long e : d.exps)
        if (e > 0)
            pres.gens.push_back({prefix + std::to_string(k++), e});
    for (int i = d.rank; i < ambient_rank; ++i)
        pres.gens.push_back({prefix + std::to_string(k++), -1});
}

// Present the quotient (lattice spanned by lb's echelon columns) / (span of
// quot columns).  With want_gens the generators come out as ambient vectors
// through the transform-bearing Smith form; without it only the invariant
// factors are computed.
inline ComputedModule lattice_quotient(const Echelon& lb, const Mat& quot,
                                       const std::vector<std::string>& ambient_labels,
                                       const std::string& gen_prefix, bool want_gens) {
    int ambient = mat_rows(lb.e);
    int r = lb.rank;
    Mat x = mat_zero(r, mat_cols(quot));
    for (int j = 0; j < mat_cols(quot); ++j) {
        auto sol = echelon_coords(lb, mat_col_of(quot, j));
        if (!sol)
            throw std::logic_error("lattice_quotient: column outside lattice");
        for (int i = 0; i < r; ++i)
            x[i][j] = (*sol)[i];
    }
    ComputedModule out;
    if (!want_gens) {
        detail::synth_gens(out.pres, snf_invariants(x), r, gen_prefix);
        return out;
    }
    SnfResult sx = smith_normal_form(x);
    out.gen_vectors = mat_zero(ambient, 0);
    int k = 0;
    auto add_gen = [&](int idx, long order_exp) {
        std::vector<LocalScalar> y(r);
        for (int i = 0; i < r; ++i)
            y[i] = sx.uinv[i][idx];
        std::vector<LocalScalar> vec(ambient);
        for (int i = 0; i < ambient; ++i)
            for (int c = 0; c < r; ++c)
                if (!lb.e[i][c].is_zero() && !y[c].is_zero())
                    vec[i] += lb.e[i][c] * y[c];
        std::string label;
        if (auto si = single_support(vec); si && vec[*si].is_unit())
            label = ambient_labels[*si];
        else
            label = gen_prefix + std::to_string(k);
        out.pres.gens.push_back({label, order_exp});
        out.gen_vectors = mat_hconcat(out.gen_vectors, mat_column(vec));
        ++k;
    };
    for (int i = 0; i < sx.rank; ++i)
        if (sx.diag[i] > 0)
            add_gen(i, sx.diag[i]);
    for (int i = sx.rank; i < r; ++i)
        add_gen(i, -1);
    return out;
}

// Lattice {x : m x lies in col(tgt.rel)}, as an echelon basis.
inline Echelon preimage_lattice(const Mat& m, int src_n, const PresentedModule& tgt) {
    if (tgt.n() == 0)
        return col_echelon(mat_identity(src_n), false);
    Mat b = mat_hconcat(m, tgt.rel);
    Mat kfull = free_kernel(b);
    Mat proj = mat_zero(src_n, mat_cols(kfull));
    for (int i = 0; i < src_n; ++i)
        for (int j = 0; j < mat_cols(kfull); ++j)
            proj[i][j] = kfull[i][j];
    return lattice_basis(proj);
}

}  // namespace detail

// Cokernel of f : S -> T given by matrix m (tgt.n() x src_n).
inline ComputedModule cokernel(const Mat& m, const PresentedModule& tgt,
                               const std::string& gen_prefix = "c", bool want_gens = true) {
    if (tgt.n() == 0)
        return {};
    Mat a = mat_hconcat(m, tgt.rel);
    if (a.empty())
        a = mat_zero(tgt.n(), 0);
    ComputedModule out;
    if (!want_gens) {
        DiagInfo d = snf_invariants(a);
        detail::synth_gens(out.pres, d, tgt.n(), gen_prefix);
        return out;
    }
    SnfResult s = smith_normal_form(a);
    out.gen_vectors = mat_zero(tgt.n(), 0);
    int k = 0;
    auto add_gen = [&](int col_of_uinv, long order_exp) {
        std::vector<LocalScalar> vec(tgt.n());
        for (int i = 0; i < tgt.n(); ++i)
            vec[i] = s.uinv[i][col_of_uinv];
        std::string label;
        if (auto idx = detail::single_support(vec); idx && vec[*idx].is_unit())
            label = tgt.labels[*idx];
        else
            label = gen_prefix + std::to_string(k);
        out.pres.gens.push_back({label, order_exp});
        out.gen_vectors = mat_hconcat(out.gen_vectors, mat_column(vec));
        ++k;
    };
    for (int i = 0; i < s.rank; ++i)
        if (s.diag[i] > 0)
            add_gen(i, s.diag[i]);
    for (int i = s.rank; i < tgt.n(); ++i)
        add_gen(i, -1);
    return out;
}

// Kernel of f : S -> T: the preimage lattice of the relations of T, modulo
// the relations of S.
inline ComputedModule kernel(const Mat& m, const PresentedModule& src, const PresentedModule& tgt,
                             const std::string& gen_prefix = "k", bool want_gens = true) {
    if (src.n() == 0)
        return {};
    Echelon lb = detail::preimage_lattice(m, src.n(), tgt);
    return detail::lattice_quotient(lb, src.rel, src.labels, gen_prefix, want_gens);
}

struct KernelCokernel {
    ComputedModule ker;
    ComputedModule coker;
};

inline KernelCokernel kernel_cokernel(const Mat& m, const PresentedModule& src,
                                      const PresentedModule& tgt, bool want_gens = true) {
    return {kernel(m, src, tgt, "k", want_gens), cokernel(m, tgt, "c", want_gens)};
}

inline KernelCokernel kernel_cokernel(const LabeledMatrix& m, const std::vector<long>& src_orders,
                                      const std::vector<long>& tgt_orders) {
    PresentedModule src = PresentedModule::with_orders(m.col_labels, src_orders);
    PresentedModule tgt = PresentedModule::with_orders(m.row_labels, tgt_orders);
    return kernel_cokernel(m.dense(), src, tgt);
}

// Order of the class of x in Z^n / col(rel): smallest e with 3^e x in the
// column span; -1 means infinite order.
inline long element_order_exp(const Echelon& rel_ech, const std::vector<LocalScalar>& x) {
    for (long e = 0; e <= 64; ++e) {
        std::vector<LocalScalar> y(x.size());
        LocalScalar s(pow3(e));
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = s * x[i];
        if (echelon_coords(rel_ech, y))
            return e;
    }
    return -1;
}

// Invariants of the submodule of Z^n/col(rel) generated by the columns of g.
inline ModuleInvariants submodule_invariants(const Mat& g, const Mat& rel) {
    int ng = mat_cols(g);
    if (ng == 0)
        return {};
    Mat b = mat_hconcat(g, rel);
    Mat kfull = free_kernel(b);
    Mat y = mat_zero(ng, mat_cols(kfull));
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < mat_cols(kfull); ++j)
            y[i][j] = kfull[i][j];
    DiagInfo d = snf_invariants(y);
    ModuleInvariants inv;
    inv.free_rank = ng - d.rank;
    for (long e : d.exps)
        if (e > 0)
            inv.torsion.push_back(e);
    std::sort(inv.torsion.begin(), inv.torsion.end());
    return inv;
}

// ---------------------------------------------------------------------------
// three-term complexes and the long exact sequence

// M0 --d1--> M1 --d2--> M2 with d2 d1 = 0 (verified, not assumed).
struct ThreeTermComplex {
    PresentedModule m0, m1, m2;
    Mat d1;  // m1.n() x m0.n()
    Mat d2;  // m2.n() x m1.n()
};

struct Cohomology {
    ComputedModule h0, h1, h2;
};

namespace detail {

// Gaussian cancellation: a unit entry d[r][c] joining two free generators
// spans an acyclic direct summand of the complex (this uses d2 d1 = 0), so
// both generators can be removed after a rank-one update.  Repeating until
// no unit entries remain shrinks the complex drastically while preserving
// all three cohomology groups on the nose.
struct MorseComplex {
    Mat d1, d2;
    std::vector<long> ord0, ord1, ord2;  // -1 free, else torsion exponent
    std::vector<char> alive0, alive1, alive2;

    static MorseComplex of(const ThreeTermComplex& c) {
        MorseComplex m;
        m.d1 = c.d1;
        m.d2 = c.d2;
        auto orders_of = [](const PresentedModule& p) {
            std::vector<long> ord(p.n(), -1);
            for (int j = 0; j < mat_cols(p.rel); ++j)
                for (int i = 0; i < p.n(); ++i)
                    if (!p.rel[i][j].is_zero())
                        ord[i] = p.rel[i][j].val3().v;
            return ord;
        };
        m.ord0 = orders_of(c.m0);
        m.ord1 = orders_of(c.m1);
        m.ord2 = orders_of(c.m2);
        m.alive0.assign(c.m0.n(), 1);
        m.alive1.assign(c.m1.n(), 1);
        m.alive2.assign(c.m2.n(), 1);
        return m;
    }

    // cancel (row r, col c) of d with both endpoint generators free;
    // alive_r/alive_c are the liveness arrays of the target/source
    static void cancel(Mat& d, std::vector<char>& alive_r, std::vector<char>& alive_c, int r,
                       int c) {
        LocalScalar u = d[r][c];
        std::vector<int> rows, cols;
        for (int i = 0; i < mat_rows(d); ++i)
            if (alive_r[i] && i != r && !d[i][c].is_zero())
                rows.push_back(i);
        for (int j = 0; j < mat_cols(d); ++j)
            if (alive_c[j] && j != c && !d[r][j].is_zero())
                cols.push_back(j);
        for (int i : rows) {
            LocalScalar f = d[i][c] / u;
            for (int j : cols)
                d[i][j] -= f * d[r][j];
        }
        alive_r[r] = 0;
        alive_c[c] = 0;
    }

    void reduce() {
        for (;;) {
            // best unit pivot by fill estimate, searching d2 then d1
            int which = 0, br = -1, bc = -1;
            long best_fill = -1;
            auto consider = [&](const Mat& d, const std::vector<char>& ar,
                                const std::vector<char>& ac, const std::vector<long>& or_,
                                const std::vector<long>& oc, int tag) {
                std::vector<int> row_nnz(mat_rows(d), 0), col_nnz(mat_cols(d), 0);
                for (int i = 0; i < mat_rows(d); ++i) {
                    if (!ar[i])
                        continue;
                    for (int j = 0; j < mat_cols(d); ++j)
                        if (ac[j] && !d[i][j].is_zero()) {
                            ++row_nnz[i];
                            ++col_nnz[j];
                        }
                }
                for (int i = 0; i < mat_rows(d); ++i) {
                    if (!ar[i] || or_[i] >= 0)
                        continue;
                    for (int j = 0; j < mat_cols(d); ++j) {
                        if (!ac[j] || oc[j] >= 0 || d[i][j].is_zero() || !d[i][j].is_unit())
                            continue;
                        long fill = static_cast<long>(row_nnz[i] - 1) * (col_nnz[j] - 1);
                        if (best_fill < 0 || fill < best_fill) {
                            best_fill = fill;
                            which = tag;
                            br = i;
                            bc = j;
                        }
                    }
                }
            };
            consider(d2, alive2, alive1, ord2, ord1, 2);
            consider(d1, alive1, alive0, ord1, ord0, 1);
            if (br < 0)
                return;
            if (which == 2) {
                cancel(d2, alive2, alive1, br, bc);
                // M1 generator bc is gone; its d1 row needs no update (the
                // dropped coordinate of d1 vanishes because d2 d1 = 0)
            } else {
                cancel(d1, alive1, alive0, br, bc);
                // M1 generator br is gone from the source of d2
            }
        }
    }

    ThreeTermComplex residual() const {
        ThreeTermComplex out;
        std::vector<int> i0, i1, i2;
        for (int i = 0; i < static_cast<int>(alive0.size()); ++i)
            if (alive0[i])
                i0.push_back(i);
        for (int i = 0; i < static_cast<int>(alive1.size()); ++i)
            if (alive1[i])
                i1.push_back(i);
        for (int i = 0; i < static_cast<int>(alive2.size()); ++i)
            if (alive2[i])
                i2.push_back(i);
        auto labels = [](const std::vector<int>& idx, const char* stem) {
            std::vector<std::string> out;
            for (int i : idx)
                out.push_back(std::string(stem) + std::to_string(i));
            return out;
        };
        auto orders = [](const std::vector<int>& idx, const std::vector<long>& ord) {
            std::vector<long> out;
            for (int i : idx)
                out.push_back(ord[i]);
            return out;
        };
        out.m0 = PresentedModule::with_orders(labels(i0, "g0_"), orders(i0, ord0));
        out.m1 = PresentedModule::with_orders(labels(i1, "g1_"), orders(i1, ord1));
        out.m2 = PresentedModule::with_orders(labels(i2, "g2_"), orders(i2, ord2));
        out.d1 = mat_zero(static_cast<int>(i1.size()), static_cast<int>(i0.size()));
        for (std::size_t a = 0; a < i1.size(); ++a)
            for (std::size_t b = 0; b < i0.size(); ++b)
                out.d1[a][b] = d1[i1[a]][i0[b]];
        out.d2 = mat_zero(static_cast<int>(i2.size()), static_cast<int>(i1.size()));
        for (std::size_t a = 0; a < i2.size(); ++a)
            for (std::size_t b = 0; b < i1.size(); ++b)
                out.d2[a][b] = d2[i2[a]][i1[b]];
        return out;
    }
};

}  // namespace detail

inline ThreeTermComplex morse_reduce(const ThreeTermComplex& c) {
    detail::MorseComplex m = detail::MorseComplex::of(c);
    m.reduce();
    return m.residual();
}

inline Cohomology complex_cohomology(const ThreeTermComplex& c, bool want_gens = true) {
    Mat comp = mat_mul(c.d2, c.d1);
    Echelon rel2 = col_echelon(c.m2.rel, false);
    for (int j = 0; j < mat_cols(comp); ++j) {
        std::vector<LocalScalar> col = mat_col_of(comp, j);
        bool nonzero = false;
        for (const auto& v : col)
            nonzero = nonzero || !v.is_zero();
        if (!nonzero)
            continue;
        if (!echelon_coords(rel2, col))
            throw std::logic_error("complex_cohomology: d2*d1 != 0 on basis vector " +
                                   c.m0.labels[j]);
    }

    // Generator extraction works on the complex as given; the
    // invariants-only path first collapses acyclic unit pairs.
    const ThreeTermComplex* work = &c;
    ThreeTermComplex reduced;
    if (!want_gens) {
        reduced = morse_reduce(c);
        work = &reduced;
    }

    Cohomology h;
    h.h0 = kernel(work->d1, work->m0, work->m1, "h0_", want_gens);
    h.h2 = cokernel(work->d2, work->m2, "h2_", want_gens);
    if (work->m1.n() == 0)
        return h;
    Echelon lb = detail::preimage_lattice(work->d2, work->m1.n(), work->m2);
    Mat quot = mat_hconcat(work->m1.rel, work->d1);
    h.h1 = detail::lattice_quotient(lb, quot, work->m1.labels, "h1_", want_gens);
    return h;
}

// Inputs for the six-term sequence
//   0 -> H0 -> ker g -> ker h -> H1 -> coker g -> coker h -> H2 -> 0
// in one internal degree t.  H1 = coker(delta0) + ker(delta1); the splitting
// needs coker(delta0) to vanish outside t = 0, which is checked, not assumed.
struct LesInput {
    long t = 0;
    PresentedModule ker_g, ker_h, coker_g, coker_h;
    Mat delta0;  // ker_h.n() x ker_g.n()
    Mat delta1;  // coker_h.n() x coker_g.n()
};

inline Cohomology les_assemble(const LesInput& in, bool want_gens = true) {
    Cohomology h;
    h.h0 = kernel(in.delta0, in.ker_g, in.ker_h, "h0_", want_gens);
    h.h2 = cokernel(in.delta1, in.coker_h, "h2_", want_gens);
    ComputedModule coker_d0 = cokernel(in.delta0, in.ker_h, "cd0_", want_gens);
    ComputedModule ker_d1 = kernel(in.delta1, in.coker_g, in.coker_h, "kd1_", want_gens);
    if (in.t != 0 && !coker_d0.invariants().trivial())
        throw std::logic_error("les_assemble: coker delta0 nontrivial outside degree 0 (t=" +
                               std::to_string(in.t) + ")");
    ComputedModule h1;
    h1.pres.gens = coker_d0.pres.gens;
    for (const auto& g : ker_d1.pres.gens)
        h1.pres.gens.push_back(g);
    h.h1 = h1;
    return h;
}

}  // namespace qtwo

#endif
