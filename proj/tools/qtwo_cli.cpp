// Command-line driver: compute the E2 page over a degree window by both
// routes, run verification suites, dump connecting-map sectors, and resolve
// the truncation-level value of the undetermined summand U.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 non-stabilized truncation.

#include "qtwo/qtwo.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonStabilized = 3;

long default_trunc() {
    if (const char* env = std::getenv("Q2BKSS_TRUNC")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return 24;
}

void write_out(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n')
            std::cout << "\n";
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << payload;
}

std::string page_text(const qtwo::E2Page& page) {
    std::string out;
    long last_t = page.t_min - 1;
    for (const auto& [bd, entry] : page.entries) {
        if (bd.t != last_t) {
            out += "t = " + std::to_string(bd.t) + "\n";
            last_t = bd.t;
        }
        out += "  E2^{" + std::to_string(bd.s) + "," + std::to_string(bd.t) +
               "} = " + entry.pres.str() + "\n";
    }
    if (out.empty())
        out = "(window empty)\n";
    return out;
}

int cmd_e2(long t_min, long t_max, long trunc, const std::string& format,
           const std::string& out_path, bool chart_only) {
    if (t_min > t_max) {
        std::cerr << "e2: --t-min must not exceed --t-max\n";
        return kExitUsage;
    }
    if (trunc < 8) {
        std::cerr << "e2: truncation must be at least 8\n";
        return kExitUsage;
    }
    qtwo::CrossCheckReport rep = qtwo::cross_check(t_min, t_max, trunc, true);
    qtwo::E2Page direct = qtwo::e2_direct(t_min, t_max, trunc, true);
    qtwo::E2Page filt = qtwo::e2_filtration(t_min, t_max, trunc, true, true);

    if (format == "svg" || chart_only) {
        write_out(out_path, qtwo::chart_svg(filt));
    } else if (format == "json") {
        qtwo::Json j;
        j["pages"] = qtwo::Json::array();
        j["pages"].push_back(qtwo::to_json(direct));
        j["pages"].push_back(qtwo::to_json(filt));
        j["crossCheck"] = qtwo::to_json(rep);
        write_out(out_path, j.dump(2));
    } else {
        std::string text = "E2 page for t in [" + std::to_string(t_min) + ", " +
                           std::to_string(t_max) + "], trunc = " + std::to_string(trunc) + "\n";
        text += page_text(filt);
        text += "cross-check: direct = filtration = closed form: ";
        text += rep.all_match ? "match" : "MISMATCH";
        text += rep.stabilized ? ", stabilized (V vs V+4)\n" : ", NOT STABILIZED\n";
        for (const auto& f : rep.failures)
            text += "  " + f + "\n";
        write_out(out_path, text);
    }
    if (!rep.all_match)
        return kExitVerifyFail;
    if (!rep.stabilized)
        return kExitNonStabilized;
    return kExitOk;
}

int cmd_verify(const std::string& suite, long trunc, long t_min, long t_max,
               const std::string& format, const std::string& out_path) {
    if (suite != "arith" && suite != "ring" && suite != "tmf" && suite != "delta" &&
        suite != "e2" && suite != "all") {
        std::cerr << "verify: unknown suite '" << suite << "'\n";
        return kExitUsage;
    }
    std::vector<qtwo::CheckResult> results = qtwo::run_suite(suite, trunc, t_min, t_max, true);
    bool all = true;
    for (const auto& r : results)
        all = all && r.pass;
    if (format == "json") {
        qtwo::Json j;
        j["suite"] = suite;
        j["trunc"] = trunc;
        j["pass"] = all;
        j["checks"] = qtwo::Json::array();
        for (const auto& r : results) {
            qtwo::Json c;
            c["name"] = r.name;
            c["pass"] = r.pass;
            if (!r.detail.empty())
                c["detail"] = r.detail;
            j["checks"].push_back(c);
        }
        write_out(out_path, j.dump(2));
    } else {
        std::string text;
        for (const auto& r : results) {
            text += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.name;
            if (!r.detail.empty())
                text += "  [" + r.detail + "]";
            text += "\n";
        }
        text += std::string(all ? "OK" : "FAILED") + " (" + std::to_string(results.size()) +
                " checks)\n";
        write_out(out_path, text);
    }
    return all ? kExitOk : kExitVerifyFail;
}

int cmd_delta(int eps, long m, const std::string& show, long trunc, const std::string& format,
              const std::string& out_path) {
    if (eps != 0 && eps != 1) {
        std::cerr << "delta: --eps must be 0 or 1\n";
        return kExitUsage;
    }
    try {
        if (eps == 0 && m == 0) {
            qtwo::Delta0Analysis a = qtwo::delta0_ker_coker(trunc);
            if (format == "json") {
                qtwo::Json j;
                j["sector"] = "delta0 (eps=0, m=0)";
                j["trunc"] = trunc;
                j["matrix"] = qtwo::to_json(a.matrix);
                j["kernel"] = qtwo::to_json(a.ker.pres);
                j["cokernel"] = qtwo::to_json(a.coker.pres);
                write_out(out_path, j.dump(2));
            } else {
                std::string text = "delta0 on pi_0, trunc = " + std::to_string(trunc) + "\n";
                text += "kernel:   " + a.ker.pres.str() + "\n";
                text += "cokernel: " + a.coker.pres.str() + "\n";
                write_out(out_path, text);
            }
            return kExitOk;
        }
        qtwo::CaseReport rep = qtwo::case_analysis(eps, m, trunc);
        qtwo::ConnectingMatrix cm = qtwo::build_connecting_matrix(eps, m, trunc);
        if (format == "json") {
            qtwo::Json j = qtwo::to_json(rep);
            if (show == "matrix" || show == "all")
                j["matrix"] = qtwo::to_json(cm.lifts);
            write_out(out_path, j.dump(2));
        } else {
            std::string text = "delta1 on W^{" + std::to_string(eps) + "," + std::to_string(m) +
                               "}, case " + std::to_string(rep.case_id) +
                               ", trunc = " + std::to_string(trunc) + "\n";
            if (show == "matrix" || show == "all") {
                text += "matrix (" + std::to_string(cm.lifts.rows()) + " x " +
                        std::to_string(cm.lifts.cols()) + ", entries mod 3^" +
                        std::to_string(cm.mod_exp) + "):\n";
                for (int r = 0; r < cm.lifts.rows(); ++r) {
                    text += "  " + cm.lifts.row_labels[r] + ":";
                    for (int c = 0; c < cm.lifts.cols(); ++c)
                        text += " " + cm.lifts.at(r, c).reduce_mod(cm.mod_exp).str();
                    text += "\n";
                }
            }
            if (show == "kernel" || show == "case" || show == "all") {
                text += "kernel (closed):   " + rep.closed_ker.str() + "\n";
                text += "kernel (computed): " + rep.computed_ker.str() + "\n";
            }
            if (show == "cokernel" || show == "case" || show == "all") {
                text += "cokernel (closed):   " + rep.closed_coker.str() + "\n";
                text += "cokernel (computed): " + rep.computed_coker.str() + "\n";
            }
            text += std::string("match: kernel=") + (rep.ker_match ? "yes" : "NO") +
                    " cokernel=" + (rep.coker_match ? "yes" : "NO") +
                    " labels=" + (rep.labels_match ? "yes" : "NO") + "\n";
            write_out(out_path, text);
        }
        return rep.ker_match && rep.coker_match ? kExitOk : kExitVerifyFail;
    } catch (const qtwo::NonStabilizationError& e) {
        std::cerr << "delta: " << e.what() << "\n";
        return kExitNonStabilized;
    }
}

int cmd_resolve_u(long m, long trunc, const std::string& format, const std::string& out_path) {
    if (m <= 0 || qtwo::mod_pos(m, 27) != 13) {
        std::cerr << "resolve-u: m must be positive with m = 13 mod 27\n";
        return kExitUsage;
    }
    try {
        qtwo::ResolveUResult r = qtwo::resolve_u(m, trunc);
        if (format == "json") {
            write_out(out_path, qtwo::to_json(r).dump(2));
        } else {
            std::string text = "U^" + std::to_string(4 * m + 2) + " at trunc " +
                               std::to_string(trunc) + ":\n";
            text += "  U = " + r.u.invariants().str() + "   (" + r.u.str() + ")\n";
            text += "  ker delta1|W^{1," + std::to_string(m) +
                    "} = " + r.kernel_full.invariants().str() + "\n";
            text += std::string("  stabilization (V vs V+4): ") + (r.stable ? "yes" : "NO") +
                    ", split K'' + U verified: " + (r.split_ok ? "yes" : "NO") + "\n";
            write_out(out_path, text);
        }
        return r.stable && r.split_ok ? kExitOk : kExitNonStabilized;
    } catch (const qtwo::NonStabilizationError& e) {
        std::cerr << "resolve-u: " << e.what() << "\n";
        return kExitNonStabilized;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Bousfield-Kan E2-term computations for Q(2) at p = 3"};
    app.require_subcommand(1);

    long trunc = default_trunc();
    long t_min = -8, t_max = 8;
    std::string format = "text", out_path, suite = "all", show = "case";
    int eps = 0;
    long m = 0;

    CLI::App* e2 = app.add_subcommand("e2", "compute the E2 page over a degree window");
    e2->add_option("--t-min", t_min, "lower internal degree");
    e2->add_option("--t-max", t_max, "upper internal degree");
    e2->add_option("--trunc", trunc, "truncation parameter V");
    e2->add_option("--format", format, "text | json | svg");
    e2->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite, "arith | ring | tmf | delta | e2 | all");
    verify->add_option("--trunc", trunc, "truncation parameter V");
    verify->add_option("--t-min", t_min, "lower degree for the e2 suite");
    verify->add_option("--t-max", t_max, "upper degree for the e2 suite");
    verify->add_option("--format", format, "text | json");
    verify->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* delta = app.add_subcommand("delta", "dump a connecting-map sector");
    delta->add_option("--eps", eps, "0 for the C/A sector, 1 for the D/B sector")->required();
    delta->add_option("--m", m, "sector index m")->required();
    delta->add_option("--show", show, "matrix | kernel | cokernel | case | all");
    delta->add_option("--trunc", trunc, "truncation parameter V");
    delta->add_option("--format", format, "text | json");
    delta->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* resolveu = app.add_subcommand("resolve-u", "resolve U^{4m+2} at finite truncation");
    resolveu->add_option("--m", m, "m > 0 with m = 13 mod 27")->required();
    resolveu->add_option("--trunc", trunc, "truncation parameter V");
    resolveu->add_option("--format", format, "text | json");
    resolveu->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* chart = app.add_subcommand("chart", "emit the SVG chart of the E2 page");
    chart->add_option("--t-min", t_min, "lower internal degree");
    chart->add_option("--t-max", t_max, "upper internal degree");
    chart->add_option("--trunc", trunc, "truncation parameter V");
    chart->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (e2->parsed())
            return cmd_e2(t_min, t_max, trunc, format, out_path, false);
        if (verify->parsed())
            return cmd_verify(suite, trunc, t_min, t_max, format, out_path);
        if (delta->parsed())
            return cmd_delta(eps, m, show, trunc, format, out_path);
        if (resolveu->parsed())
            return cmd_resolve_u(m, trunc, format, out_path);
        if (chart->parsed())
            return cmd_e2(t_min, t_max, trunc, "svg", out_path, true);
    } catch (const qtwo::NonStabilizationError& e) {
        std::cerr << e.what() << "\n";
        return kExitNonStabilized;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
