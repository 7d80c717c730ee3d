#ifndef QTWO_CHART_HPP
#define QTWO_CHART_HPP

// SVG chart of an E2 page: filtration s on the vertical axis, t - s on the
// horizontal axis.  A filled square is a free summand, a filled circle a
// copy of Z/3, and a circle with a 3^k annotation a copy of Z/3^k;
// multiplicities are printed next to the glyph.  The one structurally
// possible differential shape d2 : (0, t) -> (2, t-1) is drawn once as an
// example arrow when it fits in the window.

#include "spectral.hpp"

#include <sstream>
#include <string>

namespace qtwo {

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string chart_svg(const E2Page& page) {
    const int cell = 48;
    const int margin = 56;
    long x_min = page.t_min - 2;
    long x_max = page.t_max;
    const int s_max = 3;
    const int width = margin * 2 + cell * static_cast<int>(x_max - x_min + 1);
    const int height = margin * 2 + cell * (s_max + 1);
    auto px = [&](long x) { return margin + cell * static_cast<int>(x - x_min) + cell / 2; };
    auto py = [&](int s) { return height - margin - cell * s - cell / 2; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin << "\" y=\"" << margin / 2
        << "\" font-size=\"14\" font-family=\"monospace\">E2 page, trunc=" << page.V
        << " (" << detail::xml_escape(page.provenance) << "); x = t - s, y = s</text>\n";

    // grid and axis labels
    for (int s = 0; s <= s_max; ++s) {
        svg << "<text x=\"" << margin / 3 << "\" y=\"" << py(s) + 4
            << "\" font-size=\"12\" font-family=\"monospace\">" << s << "</text>\n";
        svg << "<line x1=\"" << margin << "\" y1=\"" << py(s) + cell / 2 << "\" x2=\""
            << width - margin << "\" y2=\"" << py(s) + cell / 2
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    }
    for (long x = x_min; x <= x_max; ++x) {
        if (mod_pos(x, 4) == 0)
            svg << "<text x=\"" << px(x) - 8 << "\" y=\"" << height - margin / 2
                << "\" font-size=\"12\" font-family=\"monospace\">" << x << "</text>\n";
    }

    // entries
    for (const auto& [bd, entry] : page.entries) {
        long x = bd.chart_x();
        if (x < x_min || x > x_max || bd.s > s_max)
            continue;
        ModuleInvariants inv = entry.pres.invariants();
        int cx = px(x), cy = py(bd.s);
        int slot = 0;
        auto place = [&]() {
            int dx = (slot % 2) * 18 - 9;
            int dy = (slot / 2) * 16 - 8;
            ++slot;
            return std::pair<int, int>(cx + dx, cy + dy);
        };
        if (inv.free_rank > 0) {
            auto [gx, gy] = place();
            svg << "<rect x=\"" << gx - 5 << "\" y=\"" << gy - 5
                << "\" width=\"10\" height=\"10\" fill=\"black\"/>\n";
            if (inv.free_rank > 1)
                svg << "<text x=\"" << gx + 7 << "\" y=\"" << gy + 4
                    << "\" font-size=\"10\" font-family=\"monospace\">x" << inv.free_rank
                    << "</text>\n";
        }
        std::size_t i = 0;
        while (i < inv.torsion.size()) {
            std::size_t j = i;
            while (j < inv.torsion.size() && inv.torsion[j] == inv.torsion[i])
                ++j;
            long count = static_cast<long>(j - i);
            auto [gx, gy] = place();
            if (inv.torsion[i] == 1) {
                svg << "<circle cx=\"" << gx << "\" cy=\"" << gy
                    << "\" r=\"4\" fill=\"black\"/>\n";
            } else {
                svg << "<circle cx=\"" << gx << "\" cy=\"" << gy
                    << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
                svg << "<text x=\"" << gx - 4 << "\" y=\"" << gy - 7
                    << "\" font-size=\"9\" font-family=\"monospace\">3^" << inv.torsion[i]
                    << "</text>\n";
            }
            if (count > 1)
                svg << "<text x=\"" << gx + 7 << "\" y=\"" << gy + 4
                    << "\" font-size=\"10\" font-family=\"monospace\">x" << count << "</text>\n";
            i = j;
        }
    }

    // the example d2 arrow (0,8) -> (2,7): chart move (8,0) -> (5,2)
    if (x_min <= 5 && 8 <= x_max) {
        svg << "<defs><marker id=\"arr\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
               "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#b03030\"/>"
               "</marker></defs>\n";
        svg << "<line x1=\"" << px(8) << "\" y1=\"" << py(0) << "\" x2=\"" << px(5) << "\" y2=\""
            << py(2)
            << "\" stroke=\"#b03030\" stroke-width=\"1.5\" marker-end=\"url(#arr)\"/>\n";
        svg << "<text x=\"" << px(8) + 6 << "\" y=\"" << (py(0) + py(2)) / 2
            << "\" font-size=\"10\" font-family=\"monospace\" fill=\"#b03030\">d2</text>\n";
    }

    // legend
    int ly = margin / 2 + 18;
    svg << "<rect x=\"" << width - margin - 232 << "\" y=\"" << ly - 5
        << "\" width=\"10\" height=\"10\" fill=\"black\"/>"
        << "<text x=\"" << width - margin - 218 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"monospace\">Z(3)</text>"
        << "<circle cx=\"" << width - margin - 160 << "\" cy=\"" << ly
        << "\" r=\"4\" fill=\"black\"/>"
        << "<text x=\"" << width - margin - 150 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"monospace\">Z/3</text>"
        << "<circle cx=\"" << width - margin - 98 << "\" cy=\"" << ly
        << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>"
        << "<text x=\"" << width - margin - 88 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"monospace\">Z/3^k</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qtwo

#endif
