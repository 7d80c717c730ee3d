#ifndef QTWO_SERIALIZE_HPP
#define QTWO_SERIALIZE_HPP

// JSON views of the computational objects.  Formats are stable: ring
// elements are sorted term lists with decimal-string coefficients, page
// entries carry (s, t, chart coordinate, summands, relations, provenance),
// matrices carry row/column labels and decimal-string entries.

#include "bring.hpp"
#include "connecting.hpp"
#include "homology.hpp"
#include "spectral.hpp"
#include "tmf.hpp"

#include <json.hpp>

#include <string>

namespace qtwo {

using Json = nlohmann::ordered_json;

inline Json to_json(const LocalScalar& x) {
    return Json{{"num", x.num().str()}, {"den", x.den().str()}};
}

// sorted term list: [{"i":..,"j":..,"e":..,"num":"..","den":".."}]
inline Json to_json(const RingElement& x) {
    Json terms = Json::array();
    for (const auto& [m, c] : x.terms()) {
        Json t;
        t["i"] = m.i;
        t["j"] = m.j;
        t["e"] = m.e;
        t["num"] = c.num().str();
        t["den"] = c.den().str();
        terms.push_back(t);
    }
    return terms;
}

inline Json to_json(const ZeroLineClass& z) {
    Json j;
    j["kind"] = "zeroline";
    j["n"] = z.n;
    j["eps"] = z.eps;
    j["ell"] = z.ell;
    j["gamma"] = z.gamma;
    return j;
}

inline Json to_json(const TorsionClass& tc) {
    Json j;
    j["kind"] = "torsion";
    j["name"] = tc.name();
    j["s"] = tc.s;
    j["tTop"] = tc.t_top;
    return j;
}

inline Json summand_json(const Summand& g) {
    Json j;
    if (g.order_exp < 0)
        j["order"] = "free";
    else
        j["order"] = pow3(g.order_exp).convert_to<long long>();
    j["label"] = g.label;
    return j;
}

inline Json to_json(const ModulePresentation& p) {
    Json j;
    j["summands"] = Json::array();
    for (const auto& g : p.gens)
        j["summands"].push_back(summand_json(g));
    j["relations"] = Json::array();
    for (const auto& r : p.relations) {
        Json rel;
        rel["label"] = r.label;
        rel["coeffs"] = Json::array();
        for (const auto& c : r.coeffs)
            rel["coeffs"].push_back(c.str());
        j["relations"].push_back(rel);
    }
    j["invariants"] = p.invariants().str();
    return j;
}

inline Json to_json(const LabeledMatrix& m) {
    Json j;
    j["rows"] = m.row_labels;
    j["cols"] = m.col_labels;
    j["entries"] = Json::array();
    for (const auto& [rc, v] : m.entries) {
        Json e;
        e["row"] = rc.first;
        e["col"] = rc.second;
        e["num"] = v.num().str();
        e["den"] = v.den().str();
        j["entries"].push_back(e);
    }
    return j;
}

inline Json page_entry_json(const Bidegree& bd, const E2Entry& e) {
    Json j;
    j["s"] = bd.s;
    j["t"] = bd.t;
    j["chartX"] = bd.chart_x();
    j["summands"] = Json::array();
    for (const auto& g : e.pres.gens)
        j["summands"].push_back(summand_json(g));
    j["relations"] = Json::array();
    for (const auto& r : e.pres.relations)
        j["relations"].push_back(r.label);
    j["provenance"] = e.provenance;
    return j;
}

inline Json to_json(const E2Page& page) {
    Json j;
    j["tMin"] = page.t_min;
    j["tMax"] = page.t_max;
    j["trunc"] = page.V;
    j["provenance"] = page.provenance;
    j["entries"] = Json::array();
    for (const auto& [bd, e] : page.entries)
        j["entries"].push_back(page_entry_json(bd, e));
    return j;
}

inline Json to_json(const CrossCheckReport& rep) {
    Json j;
    j["tMin"] = rep.t_min;
    j["tMax"] = rep.t_max;
    j["trunc"] = rep.V;
    j["allMatch"] = rep.all_match;
    j["stabilized"] = rep.stabilized;
    j["rows"] = Json::array();
    for (const auto& r : rep.rows) {
        Json row;
        row["s"] = r.bd.s;
        row["t"] = r.bd.t;
        row["direct"] = r.direct_inv;
        row["filtration"] = r.filtration_inv;
        row["theorem"] = r.theorem_inv;
        row["directEqFiltration"] = r.direct_eq_filtration;
        row["matchesTheorem"] = r.matches_theorem;
        if (r.u_placeholder)
            row["uPlaceholder"] = true;
        if (r.rel_placeholder)
            row["relationPlaceholder"] = true;
        j["rows"].push_back(row);
    }
    j["failures"] = rep.failures;
    return j;
}

inline Json to_json(const CaseReport& r) {
    Json j;
    j["case"] = r.case_id;
    j["eps"] = r.eps;
    j["m"] = r.m;
    j["trunc"] = r.V;
    j["closedKernel"] = to_json(r.closed_ker);
    j["closedCokernel"] = to_json(r.closed_coker);
    j["computedKernel"] = to_json(r.computed_ker);
    j["computedCokernel"] = to_json(r.computed_coker);
    j["kernelMatch"] = r.ker_match;
    j["cokernelMatch"] = r.coker_match;
    j["labelsMatch"] = r.labels_match;
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

inline Json to_json(const ResolveUResult& r) {
    Json j;
    j["m"] = r.m;
    j["t"] = 4 * r.m + 2;
    j["trunc"] = r.V;
    j["U"] = to_json(r.u);
    j["kernel"] = to_json(r.kernel_full);
    j["stable"] = r.stable;
    j["splitVerified"] = r.split_ok;
    return j;
}

inline Json to_json(const DifferentialCandidate& c) {
    Json j;
    j["r"] = c.r;
    j["source"] = Json{{"s", c.source.s}, {"t", c.source.t}};
    j["target"] = Json{{"s", c.target.s}, {"t", c.target.t}};
    j["possiblyNonzero"] = c.possibly_nonzero;
    if (!c.reason.empty())
        j["reason"] = c.reason;
    return j;
}

}  // namespace qtwo

#endif
