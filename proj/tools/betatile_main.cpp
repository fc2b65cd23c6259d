// betatile: Pisot beta-numeration tilings at desk scale.
//
// Subcommands: analyze, parry, tiles, boundary-graph, gamma, purper, natext.

#include "betatile/emit.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

using namespace betatile;

namespace {

struct GlobalOpts {
    std::string poly = "1,-2,-2";
    unsigned bits = 128;
    int level = 6;
    std::string json_path, svg_path, dot_path;
};

IntPoly parse_poly(const std::string& s) {
    // leading coefficient first, constant term last, e.g. "1,-3,-2"
    std::vector<Int> desc;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        desc.push_back(Int(tok));
    }
    if (desc.size() < 2) fail(ErrorCode::BadInput, "polynomial needs at least two coefficients");
    IntPoly asc(desc.rbegin(), desc.rend());
    return asc;
}

Rat parse_rat(const std::string& tok) {
    Rat r(tok);
    r.canonicalize();
    return r;
}

FieldElement parse_element(const BetaField& f, const std::string& s) {
    std::vector<Rat> coeffs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        coeffs.push_back(parse_rat(tok));
    }
    if (static_cast<int>(coeffs.size()) > f.degree())
        fail(ErrorCode::BadInput, "too many coefficients for the field degree");
    return f.element(std::move(coeffs));
}

json config_header(const GlobalOpts& g, const json& extra = json::object()) {
    json cfg{{"poly", g.poly}, {"bits", g.bits}, {"level", g.level}};
    for (auto it = extra.begin(); it != extra.end(); ++it) cfg[it.key()] = it.value();
    return json{{"tool", "betatile"}, {"version", "0.1.0"}, {"config", cfg}};
}

void write_output(const json& doc, const std::string& path) {
    std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        out << text;
    }
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        out << text;
    }
}

const char* verdict_name(TilingVerdict v) {
    switch (v) {
        case TilingVerdict::Tiling: return "Tiling";
        case TilingVerdict::NotTiling: return "NotTiling";
        case TilingVerdict::Undecided: return "Undecided";
    }
    return "?";
}

int cmd_analyze(const GlobalOpts& g, int w_depth, int w_ncap, long gamma_maxden) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    ParryData parry = parry_data(field);
    json doc = config_header(g, json{{"w_depth", w_depth}, {"w_ncap", w_ncap},
                                     {"gamma_max_den", gamma_maxden}});
    doc["field"] = json_field(field);
    doc["parry"] = json_parry(parry);

    BoundaryGraph graph = build_boundary_graph(parry);
    TilingResult tiling = decide_tiling(field, graph);
    doc["boundary_graph"] = json{{"node_count", graph.nodes.size()},
                                 {"edge_count", graph.edges.size()},
                                 {"rho", json_interval(tiling.rho)},
                                 {"beta", json_interval(tiling.beta)},
                                 {"verdict", verdict_name(tiling.verdict)}};

    WReport w = check_W(parry, w_depth, w_ncap);
    json witnesses = json::array();
    for (size_t i = 0; i < w.P.size(); ++i) {
        json entry{{"x", json_element(w.P[i])}};
        if (w.witnesses[i]) {
            entry["y"] = json_element(w.witnesses[i]->y);
            entry["n"] = w.witnesses[i]->n;
        } else {
            entry["status"] = "Unknown";
        }
        witnesses.push_back(std::move(entry));
    }
    doc["weak_finiteness"] = json{{"P_size", w.P.size()},
                                  {"all_found", w.all_found},
                                  {"witnesses", witnesses}};
    if (w.all_found) {
        ExclusivePoint ep = exclusive_point(parry, w);
        doc["exclusive_point"] =
            json{{"z", json_element(ep.z)}, {"steps", ep.total_steps},
                 {"identities_verified", ep.identities.size()}};
    }

    // gamma: exact formula in the quadratic a >= b >= 1 range, scan otherwise
    const IntPoly& mp = field.min_poly();
    if (field.degree() == 2 && mp[1] <= -1 && mp[0] <= -1 && -mp[1] >= -mp[0]) {
        long a = -mp[1].get_si(), b = -mp[0].get_si();
        doc["gamma"] = json_gamma(gamma_quadratic(a, b, g.bits));
    } else {
        doc["gamma"] = json_gamma(gamma_scan(field, gamma_maxden));
    }

    write_output(doc, g.json_path);
    switch (tiling.verdict) {
        case TilingVerdict::Tiling: return 0;
        case TilingVerdict::Undecided: return 2;
        case TilingVerdict::NotTiling: return 3;
    }
    return 2;
}

int cmd_parry(const GlobalOpts& g) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    ParryData parry = parry_data(field);
    json doc = config_header(g);
    doc["field"] = json_field(field);
    doc["parry"] = json_parry(parry);
    write_output(doc, g.json_path);
    return 0;
}

int cmd_tiles(const GlobalOpts& g, const std::string& x_str, const std::string& kind,
              const std::string& target, int translates, int addr_depth) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    ParryData parry = parry_data(field);
    json doc = config_header(g, json{{"x", x_str}, {"kind", kind}, {"target", target},
                                     {"translates", translates}, {"addr_depth", addr_depth}});
    std::vector<TileCloud> clouds;

    if (target == "cloud") {
        FieldElement x = parse_element(field, x_str);
        clouds.push_back(kind == "integral" ? integral_cloud(x, g.level)
                                            : rauzy_cloud(x, g.level));
        doc["cloud"] = json_cloud(clouds.back());
    } else if (target == "aper" || target == "int") {
        // patch beta^-2 R(0): one tile per element of T^-2(0)
        std::vector<FieldElement> bases{field.zero()};
        for (int j = 0; j < 2; ++j) {
            std::vector<FieldElement> next;
            for (const auto& y : bases) {
                auto pre = t_preimages(y, target == "int");
                next.insert(next.end(), pre.begin(), pre.end());
            }
            bases = std::move(next);
        }
        std::sort(bases.begin(), bases.end(), FieldElementLess{});
        bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
        json list = json::array();
        for (const auto& b : bases) {
            clouds.push_back(target == "int" ? integral_cloud(b, g.level)
                                             : rauzy_cloud(b, g.level));
            list.push_back(json_cloud(clouds.back(), false));
        }
        doc["tiles"] = list;
    } else if (target == "per") {
        // translate set: integer combinations of the L basis within the range
        std::vector<FieldElement> ts;
        std::vector<FieldElement> gens;
        for (const auto& row : parry.L_basis) {
            std::vector<Rat> c(row.size());
            for (size_t i = 0; i < row.size(); ++i) c[i] = Rat(row[i]);
            gens.push_back(field.element(std::move(c)));
        }
        std::function<void(size_t, FieldElement)> combine = [&](size_t i, FieldElement acc) {
            if (i == gens.size()) {
                ts.push_back(acc);
                return;
            }
            for (int n = -translates; n <= translates; ++n)
                combine(i + 1, acc + gens[i] * Rat(n));
        };
        combine(0, field.zero());
        std::sort(ts.begin(), ts.end(), FieldElementLess{});
        clouds = periodic_patch(parry, ts, g.level);
        doc["tiles"] = json{{"translate_count", ts.size()},
                            {"level", g.level},
                            {"qm_holds", parry.qm_holds}};
    } else if (target == "natext") {
        auto slices = domain_slices(parry, g.level);
        json list = json::array();
        for (const auto& s : slices)
            list.push_back(json{{"v", json_element(s.v)},
                                {"v_hat", json_element(s.v_hat)},
                                {"points", s.points.size()}});
        doc["slices"] = list;
        if (!g.svg_path.empty())
            write_text(svg_natext(parry, slices, "target=natext poly=" + g.poly), g.svg_path);
        write_output(doc, g.json_path);
        return 0;
    } else {
        fail(ErrorCode::BadInput, "unknown target: " + target);
    }

    if (!g.svg_path.empty())
        write_text(svg_tile_patch(parry, clouds, "target=" + target + " poly=" + g.poly),
                   g.svg_path);
    write_output(doc, g.json_path);
    return 0;
}

int cmd_boundary(const GlobalOpts& g, int refine_steps) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    ParryData parry = parry_data(field);
    BoundaryGraph graph = build_boundary_graph(parry);
    TilingResult tiling = decide_tiling(field, graph);
    json doc = config_header(g, json{{"refine_steps", refine_steps}});
    doc["graph"] = json_graph(graph);
    doc["rho"] = json_interval(spectral_radius_enclosure(graph, refine_steps));
    doc["beta"] = json_interval(tiling.beta);
    doc["verdict"] = verdict_name(tiling.verdict);
    if (!g.dot_path.empty()) write_text(export_dot(graph), g.dot_path);
    write_output(doc, g.json_path);
    return 0;
}

int cmd_gamma(const GlobalOpts& g, const std::string& method, long maxden) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    json doc = config_header(g, json{{"method", method}, {"max_den", maxden}});
    if (method == "quadratic") {
        const IntPoly& mp = field.min_poly();
        if (field.degree() != 2 || mp[1] >= 0 || mp[0] >= 0 || -mp[1] < -mp[0])
            fail(ErrorCode::BadParameters,
                 "quadratic formula needs beta^2 = a beta + b with a >= b >= 1");
        doc["gamma"] = json_gamma(gamma_quadratic(-mp[1].get_si(), -mp[0].get_si(), g.bits));
    } else if (method == "scan") {
        doc["gamma"] = json_gamma(gamma_scan(field, maxden));
    } else if (method == "thm5") {
        ParryData parry = parry_data(field);
        GammaSandwich s = gamma_lower_bound_thm5(parry, g.level);
        GammaResult r;
        r.method = GammaMethod::Thm5Numeric;
        r.exact = false;
        r.enclosure = QInterval{s.lo, s.hi};
        doc["gamma"] = json_gamma(r);
        doc["gamma"]["level"] = s.level;
        doc["gamma"]["found_escape"] = s.found_escape;
        if (!s.found_escape) doc["gamma"]["advisory"] = "LevelTooLow";
    } else {
        fail(ErrorCode::BadInput, "unknown method: " + method);
    }
    write_output(doc, g.json_path);
    return 0;
}

int cmd_purper(const GlobalOpts& g, const std::string& x_str) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    FieldElement x = parse_element(field, x_str);
    PurityReport rep = is_purely_periodic(x);
    json doc = config_header(g, json{{"x", x_str}});
    doc["purity"] = json_purity(rep);
    write_output(doc, g.json_path);
    return 0;
}

int cmd_natext(const GlobalOpts& g, long samples, const std::string& window_str,
               uint64_t seed) {
    BetaField field = BetaField::make(parse_poly(g.poly), g.bits);
    ParryData parry = parry_data(field);
    auto colon = window_str.find(':');
    if (colon == std::string::npos) fail(ErrorCode::BadInput, "window must be lo:hi");
    QInterval window{parse_rat(window_str.substr(0, colon)),
                     parse_rat(window_str.substr(colon + 1))};
    json doc = config_header(g, json{{"samples", samples}, {"window", window_str},
                                     {"seed", seed}});
    CoveringReport rep = covering_degree_estimate(parry, g.level, samples, window, seed);
    doc["covering"] = json_covering(rep);
    if (!g.svg_path.empty()) {
        auto slices = domain_slices(parry, std::min(g.level, 8));
        write_text(svg_natext(parry, slices, "natext poly=" + g.poly), g.svg_path);
    }
    write_output(doc, g.json_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pisot beta-numeration tilings: Parry data, Rauzy-fractal "
                 "approximants, boundary graphs, purely periodic expansions"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--poly", g.poly,
                   "minimal polynomial, leading coefficient first, constant last");
    app.add_option("--bits", g.bits, "enclosure precision bits");
    app.add_option("--level", g.level, "tile approximation level");
    app.add_option("--json", g.json_path, "write JSON to file (default stdout)");
    app.add_option("--svg", g.svg_path, "write SVG to file");
    app.add_option("--dot", g.dot_path, "write DOT to file");

    auto* analyze = app.add_subcommand("analyze", "full report with tiling verdict");
    int w_depth = 8, w_ncap = 16;
    long gamma_maxden = 60;
    analyze->add_option("--w-depth", w_depth, "weak-finiteness witness depth");
    analyze->add_option("--w-ncap", w_ncap, "weak-finiteness iteration cap");
    analyze->add_option("--max-den", gamma_maxden, "gamma scan denominator cap");

    app.add_subcommand("parry", "Parry data: expansion of 1, V, V-hat, L, (QM)");

    auto* tiles = app.add_subcommand("tiles", "tile clouds and figure patches");
    std::string x_str = "0", kind = "rauzy", target = "cloud";
    int translates = 3, addr_depth = 10;
    tiles->add_option("--x", x_str, "base point (comma-separated rational coefficients)");
    tiles->add_option("--kind", kind, "cloud kind: rauzy | integral");
    tiles->add_option("--target", target, "cloud | aper | per | int | natext");
    tiles->add_option("--translates", translates, "periodic patch range");
    tiles->add_option("--addr-depth", addr_depth, "address digits in dumps");

    auto* bg = app.add_subcommand("boundary-graph", "boundary graph, rho, verdict");
    int refine_steps = 64;
    bg->add_option("--refine-steps", refine_steps, "power-iteration steps");

    auto* gamma = app.add_subcommand("gamma", "gamma(beta) values and bounds");
    std::string method = "scan";
    long maxden = 100;
    gamma->add_option("--method", method, "quadratic | scan | thm5");
    gamma->add_option("--max-den", maxden, "scan denominator cap");

    auto* purper = app.add_subcommand("purper", "purely-periodic expansion oracle");
    std::string px = "0";
    purper->add_option("--x", px, "point of [0,1) (rational coefficients)");

    auto* natext = app.add_subcommand("natext", "natural extension diagnostics");
    long samples = 10000;
    std::string window_str = "0:1";
    uint64_t seed = 1;
    natext->add_option("--samples", samples, "sample count");
    natext->add_option("--window", window_str, "arch window lo:hi");
    natext->add_option("--seed", seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(g, w_depth, w_ncap, gamma_maxden);
        if (app.get_subcommand("parry")->parsed()) return cmd_parry(g);
        if (tiles->parsed()) return cmd_tiles(g, x_str, kind, target, translates, addr_depth);
        if (bg->parsed()) return cmd_boundary(g, refine_steps);
        if (gamma->parsed()) return cmd_gamma(g, method, maxden);
        if (purper->parsed()) return cmd_purper(g, px);
        if (natext->parsed()) return cmd_natext(g, samples, window_str, seed);
    } catch (const Error& e) {
        json err{{"error", {{"code", error_code_name(e.code)}, {"message", e.what()}}}};
        std::cout << err.dump(2) << std::endl;
        return 1;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << std::endl;
        return 1;
    }
    return 1;
}
