#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "quotmmp/fan.hpp"

namespace quotmmp {

namespace {

struct Ray {
    DivisorClass cls;
    double angle = 0;  // drawing angle, radians
};

std::string fmt(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

// Escape for XML text nodes.
std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

// The fan lives between the two effective edges, spanning more than a half
// plane in (alpha, beta) coordinates; for the picture the true angles are
// remapped affinely onto the closed upper half plane, widest ray left.
std::string report_to_svg(const MMPReport& rep) {
    const double width = 760, height = 460;
    const double cx = width / 2, cy = height - 60, len = 330;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<style>text{font-family:sans-serif;font-size:12px}.t{font-size:14px;font-weight:bold}"
           ".c{font-size:11px;fill:#444}</style>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::string title = "n=" + std::to_string(rep.n) + " r=" + std::to_string(rep.r) +
                        " d=" + std::to_string(rep.d);
    if (rep.degenerate) {
        svg << "<text class=\"t\" x=\"20\" y=\"30\">" << esc(title)
            << ": Picard rank 1, R = " << esc(rep.degenerate_model) << "</text>\n</svg>\n";
        return svg.str();
    }
    svg << "<text class=\"t\" x=\"20\" y=\"30\">" << esc(title) << "</text>\n";

    // Collect every distinct ray: effective edges, movable edges, chamber rays.
    std::vector<DivisorClass> classes{rep.eff.ray1, rep.eff.ray2, rep.mov.ray1, rep.mov.ray2};
    for (const auto& ch : rep.chambers) {
        classes.push_back(ch.nef.ray1);
        classes.push_back(ch.nef.ray2);
    }
    for (const auto& w : rep.walls) classes.push_back(w.ray);
    std::vector<Ray> rays;
    for (const DivisorClass& c : classes) {
        DivisorClass p = c.primitive();
        bool seen = false;
        for (const Ray& r : rays)
            if (r.cls == p) seen = true;
        if (!seen) rays.push_back({p, 0});
    }

    auto true_angle = [](const DivisorClass& c) {
        return std::atan2(static_cast<double>(c.b), static_cast<double>(c.a));
    };
    double lo = true_angle(rep.eff.ray1), hi = lo;
    for (const Ray& r : rays) {
        lo = std::min(lo, true_angle(r.cls));
        hi = std::max(hi, true_angle(r.cls));
    }
    const double pi = 3.14159265358979323846;
    double margin = 10.0 * pi / 180.0;
    auto draw_angle = [&](const DivisorClass& c) {
        double t = (true_angle(c) - lo) / (hi - lo);  // 0 .. 1
        return margin + t * (pi - 2 * margin);        // right .. left
    };
    for (Ray& r : rays) r.angle = draw_angle(r.cls);

    auto tip_x = [&](double a, double l) { return cx + l * std::cos(a); };
    auto tip_y = [&](double a, double l) { return cy - l * std::sin(a); };

    // Shaded chamber wedges.
    const char* fills[] = {"#dce9f7", "#f7e8dc"};
    int fi = 0;
    for (const auto& ch : rep.chambers) {
        double a1 = draw_angle(ch.nef.ray1), a2 = draw_angle(ch.nef.ray2);
        if (a1 > a2) std::swap(a1, a2);
        svg << "<path d=\"M" << fmt(cx) << "," << fmt(cy) << " L" << fmt(tip_x(a1, len * 0.92))
            << "," << fmt(tip_y(a1, len * 0.92)) << " A" << fmt(len * 0.92) << ","
            << fmt(len * 0.92) << " 0 0 0 " << fmt(tip_x(a2, len * 0.92)) << ","
            << fmt(tip_y(a2, len * 0.92)) << " Z\" fill=\"" << fills[fi++ % 2]
            << "\" stroke=\"none\"/>\n";
        double mid = (a1 + a2) / 2;
        svg << "<text class=\"c\" x=\"" << fmt(tip_x(mid, len * 0.55)) << "\" y=\""
            << fmt(tip_y(mid, len * 0.55)) << "\" text-anchor=\"middle\">Nef("
            << esc(ch.model) << ")</text>\n";
    }

    // Rays with labels; effective edges drawn dashed when outside Mov.
    for (const Ray& r : rays) {
        bool eff_edge = (r.cls == rep.eff.ray1 || r.cls == rep.eff.ray2);
        bool movable = cone_contains(rep.mov, r.cls, false);
        svg << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy) << "\" x2=\""
            << fmt(tip_x(r.angle, len)) << "\" y2=\"" << fmt(tip_y(r.angle, len))
            << "\" stroke=\"" << (eff_edge && !movable ? "#b44" : "#222")
            << "\" stroke-width=\"1.5\""
            << (eff_edge && !movable ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        double lx = tip_x(r.angle, len + 14), ly = tip_y(r.angle, len + 14);
        svg << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly)
            << "\" text-anchor=\"middle\">" << esc(r.cls.label()) << "</text>\n";
    }

    svg << "<text class=\"c\" x=\"20\" y=\"" << fmt(height - 20) << "\">Mov(R) = &lt;"
        << esc(rep.mov.ray1.label()) << ", " << esc(rep.mov.ray2.label())
        << "&gt;; Eff(R) = &lt;" << esc(rep.eff.ray1.label()) << ", "
        << esc(rep.eff.ray2.label()) << "&gt;; -K_R = " << esc((-rep.canonical).label())
        << (rep.log_fano ? " (log Fano)" : "") << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace quotmmp
