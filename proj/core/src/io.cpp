#include "coneq/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace coneq::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
    return out;
}

bool parse_number(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return false;
    *out = v;
    return true;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw_bad_input(std::string("malformed JSON in ") + what);
    return j;
}

Vec json_vec(const json& j, const char* what) {
    if (!j.is_array()) throw_bad_input(std::string(what) + ": expected an array of numbers");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) throw_bad_input(std::string(what) + ": expected numeric entries");
        v.push_back(x.get<double>());
    }
    return v;
}

std::vector<Vec> json_matrix(const json& j, const char* what) {
    if (!j.is_array()) throw_bad_input(std::string(what) + ": expected an array of arrays");
    std::vector<Vec> m;
    for (const auto& row : j) m.push_back(json_vec(row, what));
    return m;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_bad_input("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_bad_input("cannot write file: " + path);
    out << content;
}

CsvData read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_bad_input("cannot open file: " + path);

    CsvData data;
    std::string line;
    bool first = true;
    bool has_weight_col = false;
    std::size_t ncols = 0;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> toks = split_csv_row(t);

        if (first) {
            first = false;
            bool numeric = true;
            double tmp;
            for (const auto& s : toks) {
                if (!parse_number(s, &tmp)) numeric = false;
            }
            ncols = toks.size();
            if (!numeric) {  // header row
                has_weight_col = !toks.empty() && lower(toks.back()) == "weight";
                continue;
            }
        }

        if (toks.size() != ncols) {
            throw_bad_input(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(ncols) + " columns, got " + std::to_string(toks.size()));
        }
        Vec row;
        row.reserve(toks.size());
        for (const auto& s : toks) {
            double v;
            if (!parse_number(s, &v)) {
                throw_bad_input(path + ":" + std::to_string(lineno) + ": non-numeric value '" + s +
                                "'");
            }
            row.push_back(v);
        }
        if (has_weight_col) {
            data.weights.push_back(row.back());
            row.pop_back();
        }
        data.points.push_back(std::move(row));
    }
    if (data.points.empty()) throw_bad_input(path + ": no data rows");
    return data;
}

DistributionModel model_from_csv(const std::string& path) {
    CsvData d = read_points_csv(path);
    if (d.weights.empty()) return EmpiricalSample(std::move(d.points));
    return EmpiricalSample(std::move(d.points), std::move(d.weights));
}

GaussianModel parse_gaussian_json(const std::string& text) {
    json j = parse_json(text, "gaussian spec");
    if (!j.contains("mu") || !j.contains("sigma")) {
        throw_bad_input("gaussian spec needs fields 'mu' and 'sigma'");
    }
    return GaussianModel(json_vec(j["mu"], "mu"), json_matrix(j["sigma"], "sigma"));
}

GaussianModel read_gaussian_json(const std::string& path) {
    return parse_gaussian_json(read_file(path));
}

ConvexCone parse_cone_spec(const std::string& spec0, std::size_t fallback_dim, double tol) {
    std::string spec = trim(spec0);
    if (spec.empty()) throw_bad_input("empty cone spec");

    if (spec == "orthant") return ConvexCone::orthant(fallback_dim, tol);
    if (spec == "zero") return ConvexCone::zero(fallback_dim, tol);
    if (spec.rfind("halfspace:", 0) == 0) {
        std::vector<std::string> toks = split_csv_row(spec.substr(10));
        Vec w;
        for (const auto& s : toks) {
            double v;
            if (!parse_number(s, &v)) throw_bad_input("halfspace spec: non-numeric component");
            w.push_back(v);
        }
        if (w.empty()) throw_bad_input("halfspace spec: no components");
        return ConvexCone::halfspace(w, tol);
    }

    std::string text = spec[0] == '{' ? spec : read_file(spec);
    json j = parse_json(text, "cone spec");
    if (!j.contains("dim") || !j.contains("generators")) {
        throw_bad_input("cone spec needs fields 'dim' and 'generators'");
    }
    std::size_t dim = j["dim"].get<std::size_t>();
    std::vector<Vec> gens = json_matrix(j["generators"], "generators");
    if (j.contains("dual_generators")) {
        return ConvexCone(dim, std::move(gens),
                          json_matrix(j["dual_generators"], "dual_generators"), tol);
    }
    return ConvexCone(dim, std::move(gens), tol);
}

GeneratorSet parse_genset_json(const std::string& text) {
    json j = parse_json(text, "generator set");
    if (!j.contains("G")) throw_bad_input("generator set needs field 'G'");
    GeneratorSet g{json_matrix(j["G"], "G")};
    if (g.points.empty()) throw_bad_input("generator set must be nonempty");
    for (const Vec& p : g.points) {
        if (!all_finite(p)) throw_bad_input("generator set has non-finite points");
    }
    return g;
}

GeneratorSet read_genset_json(const std::string& path) {
    return parse_genset_json(read_file(path));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string region_to_json(const Region& r, double p, const std::vector<Vec>* polygon) {
    json j;
    j["p"] = p;
    switch (r.kind()) {
        case Region::Kind::Whole:
            j["variant"] = "whole";
            j["halfspaces"] = json::array();
            break;
        case Region::Kind::Empty:
            j["variant"] = "empty";
            j["halfspaces"] = json::array();
            break;
        case Region::Kind::HRep: {
            j["variant"] = "hrep";
            json hs = json::array();
            for (const Halfspace& h : r.halfspaces()) {
                hs.push_back(json{{"w", vec_json(h.normal)}, {"b", h.offset}});
            }
            j["halfspaces"] = std::move(hs);
            break;
        }
        case Region::Kind::GenRep: {
            j["variant"] = "genrep";
            json gs = json::array();
            for (const Vec& g : r.generators()) gs.push_back(vec_json(g));
            j["generators"] = std::move(gs);
            j["halfspaces"] = json::array();
            break;
        }
    }
    if (polygon) {
        json poly = json::array();
        for (const Vec& v : *polygon) poly.push_back(vec_json(v));
        j["polygon"] = std::move(poly);
    }
    return j.dump(2);
}

Region region_from_json(const std::string& text, const ConvexCone& cone) {
    json j = parse_json(text, "region");
    std::string variant = j.value("variant", "hrep");
    if (variant == "whole") return Region::whole(cone);
    if (variant == "empty") return Region::empty(cone);
    if (variant == "genrep") return Region::genrep(cone, json_matrix(j.at("generators"), "generators"));
    std::vector<Halfspace> hs;
    for (const auto& h : j.at("halfspaces")) {
        hs.push_back(Halfspace{json_vec(h.at("w"), "w"), h.at("b").get<double>()});
    }
    return Region::hrep(cone, std::move(hs));
}

double region_json_level(const std::string& text) {
    json j = parse_json(text, "region");
    return j.at("p").get<double>();
}

std::string svg_regions(const std::vector<Vec>& sample,
                        const std::vector<std::pair<double, std::vector<Vec>>>& polygons,
                        const BBox& box) {
    const int w = 640, h = 640, margin = 48;
    const double x0 = box.lo[0], x1 = box.hi[0];
    const double y0 = box.lo[1], y1 = box.hi[1];
    const double sx = (w - 2.0 * margin) / (x1 - x0);
    const double sy = (h - 2.0 * margin) / (y1 - y0);

    auto px = [&](double x) { return margin + (x - x0) * sx; };
    auto py = [&](double y) { return h - margin - (y - y0) * sy; };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        return std::string(buf);
    };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"white\"/>\n";

    int ci = 0;
    for (const auto& [p, poly] : polygons) {
        const char* color = palette[ci % 8];
        if (!poly.empty()) {
            svg << "  <path d=\"M " << num(px(poly[0][0])) << ' ' << num(py(poly[0][1]));
            for (std::size_t i = 1; i < poly.size(); ++i) {
                svg << " L " << num(px(poly[i][0])) << ' ' << num(py(poly[i][1]));
            }
            svg << " Z\" fill=\"" << color << "\" fill-opacity=\"0.10\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        }
        svg << "  <text x=\"" << margin + 6 << "\" y=\"" << margin + 16 + 16 * ci
            << "\" font-size=\"12\" fill=\"" << color << "\">p = " << format_double(p)
            << "</text>\n";
        ++ci;
    }

    for (const Vec& pt : sample) {
        if (pt[0] < x0 || pt[0] > x1 || pt[1] < y0 || pt[1] > y1) continue;
        svg << "  <circle cx=\"" << num(px(pt[0])) << "\" cy=\"" << num(py(pt[1]))
            << "\" r=\"3\" fill=\"#333333\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace coneq::io
