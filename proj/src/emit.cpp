#include "betatile/emit.hpp"

#include <cinttypes>
#include <cstdio>

namespace betatile {

json json_rat(const Rat& q) {
    return json{{"exact", q.get_str()}, {"decimal", rat_to_decimal(q)}};
}

json json_interval(const QInterval& iv) {
    return json{{"enclosure", {iv.lo.get_str(), iv.hi.get_str()}},
                {"decimal", {rat_to_decimal(iv.lo), rat_to_decimal(iv.hi)}}};
}

json json_element(const FieldElement& x) {
    std::vector<std::string> coeffs;
    for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
    QInterval iv = x.dominant_interval();
    return json{{"exact", coeffs},
                {"pretty", x.to_string()},
                {"decimal", rat_to_decimal(iv.mid())}};
}

json json_field(const BetaField& f) {
    std::vector<std::string> poly;
    for (int i = f.degree(); i >= 0; --i) poly.push_back(f.min_poly()[i].get_str());
    json places = json::array();
    for (const auto& pl : f.conjugate_places()) {
        places.push_back(json{{"complex", pl.complex},
                              {"re", json_interval(pl.box.re)},
                              {"im", json_interval(pl.box.im)}});
    }
    return json{{"min_poly", poly},
                {"degree", f.degree()},
                {"beta", json_interval(f.beta_interval())},
                {"conjugates", places},
                {"norm", f.norm().get_str()},
                {"alphabet_max", f.alphabet_max()},
                {"precision_bits", f.precision_bits()}};
}

json json_parry(const ParryData& p) {
    json v = json::array(), vh = json::array();
    for (const auto& e : p.V) v.push_back(json_element(e));
    for (const auto& e : p.V_hat) vh.push_back(json_element(e));
    json basis = json::array();
    for (const auto& row : p.L_basis) {
        std::vector<std::string> r;
        for (const auto& c : row) r.push_back(c.get_str());
        basis.push_back(r);
    }
    json succ = json::array();
    for (size_t i = 0; i < p.V.size(); ++i)
        succ.push_back(json{{"v", json_element(p.V[i])},
                            {"v_hat", json_element(p.hat(static_cast<int>(i)))}});
    return json{{"d_one", p.d_one},
                {"d_one_finite", p.d_one_finite},
                {"quasi_greedy", {{"preperiod", p.quasi_preperiod}, {"period", p.quasi_period}}},
                {"V", v},
                {"V_hat", vh},
                {"successor", succ},
                {"L_basis", basis},
                {"L_rank", p.L_rank},
                {"qm_holds", p.qm_holds}};
}

json json_cloud(const TileCloud& c, bool include_points) {
    json out{{"base_point", json_element(c.base_point)},
             {"level", c.level},
             {"kind", c.kind == TileKind::Rauzy ? "rauzy" : "integral"},
             {"count", c.points.size()}};
    if (include_points) {
        json pts = json::array();
        for (size_t i = 0; i < c.points.size(); ++i) {
            json p = json_element(c.points[i]);
            json arch = json::array();
            const BetaField& f = *c.field;
            for (int pl = 0; pl < f.num_conjugate_places(); ++pl) {
                CBox b = c.points[i].conjugate_box(pl);
                arch.push_back(json{{"re", rat_to_decimal(b.re.mid())},
                                    {"im", rat_to_decimal(b.im.mid())}});
            }
            p["arch"] = arch;
            if (!c.addresses.empty()) {
                p["address"] = c.addresses[i];
                p["address_value"] =
                    rat_to_decimal(address_value(c.addresses[i], f.norm_abs()));
            }
            pts.push_back(std::move(p));
        }
        out["points"] = pts;
    }
    return out;
}

json json_graph(const BoundaryGraph& g) {
    json nodes = json::array();
    for (const auto& n : g.nodes)
        nodes.push_back(json{{"v", json_element(g.parry->V[n.v])},
                             {"x", json_element(n.x)},
                             {"w", json_element(g.parry->V[n.w])}});
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back(json{{"from", e.from}, {"to", e.to}, {"a", e.a}, {"b", e.b}});
    return json{{"nodes", nodes}, {"edges", edges}, {"node_count", g.nodes.size()},
                {"edge_count", g.edges.size()}};
}

json json_gamma(const GammaResult& r) {
    json out;
    switch (r.method) {
        case GammaMethod::QuadraticFormula: out["method"] = "quadratic"; break;
        case GammaMethod::Thm5Numeric: out["method"] = "numeric-bound"; break;
        case GammaMethod::Scan: out["method"] = "scan"; break;
    }
    if (r.exact_value) out["exact_value"] = json_element(*r.exact_value);
    out["enclosure"] = json_interval(r.enclosure);
    out["exact"] = r.exact;
    if (r.largest_verified) out["largest_verified"] = json_rat(*r.largest_verified);
    if (r.first_non_pp) out["first_non_pp"] = json_rat(*r.first_non_pp);
    if (r.rationals_tested) out["rationals_tested"] = r.rationals_tested;
    out["positive_conjugate_shortcut"] = r.shortcut_positive_conjugate;
    return out;
}

json json_purity(const PurityReport& r) {
    json orbit = json::array();
    for (const auto& e : r.orbit) orbit.push_back(json_element(e));
    return json{{"x", json_element(r.x)},
                {"purely_periodic", r.purely_periodic},
                {"preperiod", r.preperiod},
                {"period", r.period},
                {"orbit", orbit}};
}

json json_covering(const CoveringReport& r) {
    json hist = json::object();
    for (const auto& [count, n] : r.histogram) hist[std::to_string(count)] = n;
    return json{{"histogram", hist},
                {"samples", r.samples},
                {"out_of_stripe", r.out_of_stripe},
                {"modal_count", r.modal_count},
                {"modal_fraction", r.modal_fraction},
                {"tiles_considered", r.tiles_considered}};
}

namespace {

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#44aa99"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string svg_tile_patch(const ParryData& parry, const std::vector<TileCloud>& clouds,
                           const std::string& config_comment) {
    const BetaField& f = *parry.field;
    ClassExtents ext = class_extents(parry);
    long nabs = f.norm_abs().get_si();

    struct RectRow {
        double x0, x1, y0, y1;
        int color;
    };
    std::vector<RectRow> rects;
    double min_x = 1e30, max_x = -1e30;
    int color = 0;
    for (const auto& c : clouds) {
        double addr_h = 1.0;
        for (int j = 0; j < c.level && nabs > 1; ++j) addr_h /= static_cast<double>(nabs);
        for (size_t i = 0; i < c.points.size(); ++i) {
            QInterval box = point_outer_box_real(parry, ext, c, i)[0];
            double x0 = box.lo.get_d(), x1 = box.hi.get_d();
            double y0 = 0.0, y1 = 1.0;
            if (!c.addresses.empty()) {
                y0 = address_value(c.addresses[i], f.norm_abs()).get_d();
                y1 = y0 + addr_h;
            }
            rects.push_back({x0, x1, y0, y1, color});
            min_x = std::min(min_x, x0);
            max_x = std::max(max_x, x1);
        }
        color = (color + 1) % 8;
    }
    if (rects.empty()) {
        min_x = 0;
        max_x = 1;
    }

    double w = 900, h = 600, pad = 30;
    double sx = (w - 2 * pad) / std::max(1e-9, max_x - min_x);
    double sy = h - 2 * pad;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" +
           fmt(h) + "\">\n";
    out += "<!-- " + config_comment + " -->\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& r : rects) {
        double px = pad + (r.x0 - min_x) * sx;
        double pw = std::max(0.3, (r.x1 - r.x0) * sx);
        double py = pad + (1.0 - r.y1) * sy;
        double ph = std::max(0.3, (r.y1 - r.y0) * sy);
        out += "<rect x=\"" + fmt(px) + "\" y=\"" + fmt(py) + "\" width=\"" + fmt(pw) +
               "\" height=\"" + fmt(ph) + "\" fill=\"" + kPalette[r.color] +
               "\" fill-opacity=\"0.65\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string svg_natext(const ParryData& parry, const std::vector<DomainSlice>& slices,
                       const std::string& config_comment) {
    double w = 900, h = 600, pad = 30;
    double min_y = 1e30, max_y = -1e30;
    struct Pt { double x0, x1, y; int color; };
    std::vector<Pt> pts;
    int color = 0;
    for (const auto& s : slices) {
        double x0 = s.v.approx(), x1 = s.v_hat.approx();
        for (const auto& p : s.points) {
            double y = p.conj_approx(0);
            pts.push_back({x0, x1, y, color});
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
        color = (color + 1) % 8;
    }
    if (pts.empty()) {
        min_y = 0;
        max_y = 1;
    }
    double sx = (w - 2 * pad);
    double sy = (h - 2 * pad) / std::max(1e-9, max_y - min_y);
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" +
           fmt(h) + "\">\n";
    out += "<!-- " + config_comment + " -->\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& p : pts) {
        double px = pad + p.x0 * sx;
        double pw = std::max(0.4, (p.x1 - p.x0) * sx);
        double py = pad + (max_y - p.y) * sy;
        out += "<rect x=\"" + fmt(px) + "\" y=\"" + fmt(py - 0.6) + "\" width=\"" + fmt(pw) +
               "\" height=\"1.2\" fill=\"" + std::string(kPalette[p.color]) +
               "\" fill-opacity=\"0.5\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace betatile
