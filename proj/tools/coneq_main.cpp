#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coneq/galois.hpp"
#include "coneq/io.hpp"
#include "coneq/parallel.hpp"
#include "coneq/random_set.hpp"
#include "selftest.hpp"

namespace {

using json = nlohmann::json;
using namespace coneq;

struct GlobalOpts {
    double tol = kDefaultTol;
    int resolution = ConeCdf::kDefaultResolution;
    int grid = 41;
};

struct ModelOpts {
    std::string data_csv;
    std::string gaussian;
};

DistributionModel load_model(const ModelOpts& m) {
    if (!m.data_csv.empty() && !m.gaussian.empty()) {
        throw_bad_config("--data and --gaussian are mutually exclusive");
    }
    if (!m.data_csv.empty()) return io::model_from_csv(m.data_csv);
    if (!m.gaussian.empty()) {
        std::string text = m.gaussian[0] == '{' ? m.gaussian : io::read_file(m.gaussian);
        return io::parse_gaussian_json(text);
    }
    throw_bad_config("one of --data or --gaussian is required");
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json config_echo(const std::string& command, const GlobalOpts& g, const ModelOpts& m,
                 const std::string& cone_spec) {
    json c;
    c["command"] = command;
    c["tol"] = g.tol;
    c["resolution"] = g.resolution;
    c["grid"] = g.grid;
    if (!m.data_csv.empty()) c["data"] = m.data_csv;
    if (!m.gaussian.empty()) c["gaussian"] = m.gaussian;
    if (!cone_spec.empty()) c["cone"] = cone_spec;
    return c;
}

void emit(const std::string& path, const json& payload) {
    std::string text = payload.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_file(path, text);
    }
}

json region_json(const Region& r, double p, const std::vector<Vec>* polygon) {
    return json::parse(io::region_to_json(r, p, polygon));
}

BBox parse_bbox(const std::string& spec) {
    std::vector<double> v;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 4) throw_bad_input("--bbox expects x0,y0,x1,y1");
    if (v[0] >= v[2] || v[1] >= v[3]) throw_bad_input("--bbox is empty");
    return BBox{{v[0], v[1]}, {v[2], v[3]}};
}

GeneratorSet load_genset(const std::string& spec) {
    std::string text = spec[0] == '{' ? spec : io::read_file(spec);
    return io::parse_genset_json(text);
}

int run_cdf(const GlobalOpts& g, const ModelOpts& m, const std::string& cone_spec,
            const std::string& query_csv, const std::string& out, bool force_zero_cone) {
    DistributionModel model = load_model(m);
    std::size_t d = model_dim(model);
    ConvexCone cone = force_zero_cone ? ConvexCone::zero(d, g.tol)
                                      : io::parse_cone_spec(cone_spec, d, g.tol);
    ConeCdf cdf(model, cone, g.resolution);

    io::CsvData queries = io::read_points_csv(query_csv);
    std::vector<LowerCdfResult> results(queries.points.size());
    detail::parallel_for(queries.points.size(), [&](std::size_t i) {
        results[i] = cdf.lower_cdf_detail(queries.points[i]);
    });

    json out_json;
    out_json["config"] = config_echo(force_zero_cone ? "depth" : "cdf", g, m, cone_spec);
    out_json["config"]["query"] = query_csv;
    json arr = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        arr.push_back(json{{"point", vec_json(queries.points[i])},
                           {"value", results[i].value},
                           {"argmin_direction", vec_json(results[i].argmin)}});
    }
    out_json["results"] = std::move(arr);
    emit(out, out_json);
    return 0;
}

int run_quantile(const GlobalOpts& g, const ModelOpts& m, const std::string& cone_spec,
                 std::vector<double> levels, const std::string& bbox_spec,
                 const std::string& svg_path, const std::string& out) {
    DistributionModel model = load_model(m);
    std::size_t d = model_dim(model);
    ConvexCone cone = io::parse_cone_spec(cone_spec, d, g.tol);
    QuantileFn qf(ConeCdf(model, cone, g.resolution));

    if (levels.empty()) levels = {0.25, 0.5, 0.75};
    std::sort(levels.begin(), levels.end());

    std::optional<BBox> box;
    if (d == 2) {
        box = bbox_spec.empty() ? default_probe_grid(model, g.grid).box : parse_bbox(bbox_spec);
    } else if (!bbox_spec.empty() || !svg_path.empty()) {
        throw_bad_config("--bbox/--svg need a 2-d model");
    }

    json out_json;
    out_json["config"] = config_echo("quantile", g, m, cone_spec);
    out_json["config"]["p"] = levels;
    if (box) {
        out_json["config"]["bbox"] =
            json{box->lo[0], box->lo[1], box->hi[0], box->hi[1]};
    }

    std::vector<std::pair<double, std::vector<Vec>>> polygons;
    json regions = json::array();
    for (double p : levels) {
        Region r = qf.lower_quantile(p);
        if (box) {
            std::vector<Vec> poly = vertices_2d(r, *box);
            regions.push_back(region_json(r, p, &poly));
            polygons.emplace_back(p, std::move(poly));
        } else {
            regions.push_back(region_json(r, p, nullptr));
        }
    }
    out_json["regions"] = std::move(regions);

    if (!svg_path.empty()) {
        std::vector<Vec> sample;
        if (const auto* s = std::get_if<EmpiricalSample>(&model)) sample = s->points();
        io::write_file(svg_path, io::svg_regions(sample, polygons, *box));
    }
    emit(out, out_json);
    return 0;
}

int run_closure(const GlobalOpts& g, const ModelOpts& m, const std::string& cone_spec,
                const std::string& genset_spec, const std::string& out) {
    DistributionModel model = load_model(m);
    std::size_t d = model_dim(model);
    ConvexCone cone = io::parse_cone_spec(cone_spec, d, g.tol);
    QuantileFn qf(ConeCdf(model, cone, g.resolution));
    GeneratorSet gs = load_genset(genset_spec);
    ProbeGrid probes = default_probe_grid(model, g.grid);

    ClosureReport rep = closure_report(qf, gs, probes);

    json out_json;
    out_json["config"] = config_echo("closure", g, m, cone_spec);
    out_json["config"]["genset"] = genset_spec;
    json input = json::array();
    for (const Vec& p : gs.points) input.push_back(vec_json(p));
    out_json["input"] = std::move(input);
    out_json["value"] = rep.value;
    out_json["psi_closure"] = region_json(rep.scalar, rep.value, nullptr);
    out_json["phi_closure"] = region_json(rep.directional, rep.value, nullptr);
    out_json["is_psi_fixed"] = rep.scalar_fixed;
    out_json["is_phi_fixed"] = rep.directional_fixed;
    emit(out, out_json);
    return 0;
}

int run_rank(const GlobalOpts& g, const ModelOpts& m, const std::string& cone_spec,
             const std::string& g1_spec, const std::string& g2_spec, const std::string& out) {
    DistributionModel model = load_model(m);
    std::size_t d = model_dim(model);
    ConvexCone cone = io::parse_cone_spec(cone_spec, d, g.tol);
    ConeCdf cdf(model, cone, g.resolution);
    GeneratorSet g1 = load_genset(g1_spec);
    GeneratorSet g2 = load_genset(g2_spec);

    Ordering total = rank_sets_scalar(cdf, g1, g2);
    DirectionalComparison dir = rank_sets_directional(cdf, g1, g2);

    auto total_name = [](Ordering o) {
        switch (o) {
            case Ordering::Less: return "less";
            case Ordering::Equal: return "equal";
            case Ordering::Greater: return "greater";
        }
        return "";
    };
    auto dir_name = [](DirectionalComparison::Outcome o) {
        switch (o) {
            case DirectionalComparison::Outcome::LessOrEqual: return "less-or-equal";
            case DirectionalComparison::Outcome::GreaterOrEqual: return "greater-or-equal";
            case DirectionalComparison::Outcome::Equal: return "equal";
            case DirectionalComparison::Outcome::Incomparable: return "incomparable";
        }
        return "";
    };

    json out_json;
    out_json["config"] = config_echo("rank", g, m, cone_spec);
    out_json["config"]["g1"] = g1_spec;
    out_json["config"]["g2"] = g2_spec;
    out_json["psi"] = json{{"order", total_name(total)},
                           {"values", json{inf_extension(cdf, g1), inf_extension(cdf, g2)}}};
    out_json["phi"] = json{{"outcome", dir_name(dir.outcome())}};
    emit(out, out_json);
    return 0;
}

int run_simulate(const GlobalOpts& g, const ModelOpts& m, const std::string& cone_spec,
                 const std::string& k_csv, long n, std::uint64_t seed,
                 const std::string& trace_csv, const std::string& out) {
    DistributionModel model = load_model(m);
    std::size_t d = model_dim(model);
    ConvexCone cone = io::parse_cone_spec(cone_spec, d, g.tol);
    QuantileFn qf(ConeCdf(model, cone, g.resolution));
    CompactTestSet k = make_test_set(io::read_points_csv(k_csv).points);

    std::vector<std::pair<double, bool>> trace;
    CapacityEstimate est =
        capacity_mc_trace(qf, k, n, SeededRng(seed), trace_csv.empty() ? nullptr : &trace);

    if (!trace_csv.empty()) {
        std::string text = "u,hit\n";
        for (const auto& [u, hit] : trace) {
            text += io::format_double(u);
            text += hit ? ",1\n" : ",0\n";
        }
        io::write_file(trace_csv, text);
    }

    json out_json;
    out_json["config"] = config_echo("simulate", g, m, cone_spec);
    out_json["config"]["K"] = k_csv;
    out_json["config"]["n"] = n;
    out_json["config"]["seed"] = seed;
    out_json["exact"] = est.exact;
    out_json["mc_estimate"] = est.mc_estimate;
    out_json["n_draws"] = est.n_draws;
    out_json["n_hits"] = est.n_hits;
    out_json["std_error"] = est.std_error;
    out_json["seed"] = est.seed;
    emit(out, out_json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lower cone distribution functions, set-valued quantile regions, and "
                 "random-set capacity functionals"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--tol", g.tol, "Geometric sign-test tolerance")->capture_default_str();
    app.add_option("--resolution", g.resolution, "Direction-grid resolution")
        ->capture_default_str();
    app.add_option("--grid", g.grid, "Probe-grid points per axis")->capture_default_str();

    ModelOpts m;
    std::string cone_spec = "orthant";
    std::string query_csv, out_path, bbox_spec, svg_path, genset_spec, g1_spec, g2_spec, k_csv,
        trace_csv;
    std::vector<double> levels;
    long n_draws = 20000;
    std::uint64_t seed = 0;

    auto add_model_opts = [&](CLI::App* sub, bool with_cone = true) {
        sub->add_option("--data", m.data_csv, "Sample CSV (optional weight column)");
        sub->add_option("--gaussian", m.gaussian, "Gaussian JSON file or inline spec");
        if (with_cone) {
            sub->add_option("--cone", cone_spec,
                            "Cone: orthant | zero | halfspace:w1,w2,... | JSON file or inline");
        }
        sub->add_option("--json", out_path, "Output path ('-' for stdout)");
    };

    CLI::App* cdf = app.add_subcommand("cdf", "Lower cone distribution function at query points");
    add_model_opts(cdf);
    cdf->add_option("--query", query_csv, "Query points CSV")->required();

    CLI::App* depth = app.add_subcommand("depth", "Halfspace depth (zero cone) at query points");
    add_model_opts(depth, /*with_cone=*/false);
    depth->add_option("--query", query_csv, "Query points CSV")->required();

    CLI::App* quant = app.add_subcommand("quantile", "Set-valued lower quantile regions");
    add_model_opts(quant);
    quant->add_option("--p", levels, "Quantile level (repeatable)");
    quant->add_option("--bbox", bbox_spec, "Plot window x0,y0,x1,y1");
    quant->add_option("--svg", svg_path, "SVG output path");

    CLI::App* closure = app.add_subcommand("closure", "Closure report for a generator set");
    add_model_opts(closure);
    closure->add_option("--genset", genset_spec, "Generator set JSON file or inline")->required();

    CLI::App* rank = app.add_subcommand("rank", "Rank two generator sets");
    add_model_opts(rank);
    rank->add_option("--g1", g1_spec, "First generator set")->required();
    rank->add_option("--g2", g2_spec, "Second generator set")->required();

    CLI::App* sim = app.add_subcommand("simulate", "Capacity functional by seeded Monte Carlo");
    add_model_opts(sim);
    sim->add_option("--K", k_csv, "Compact test set CSV")->required();
    sim->add_option("--n", n_draws, "Number of draws")->capture_default_str();
    sim->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sim->add_option("--trace", trace_csv, "Per-draw trace CSV (u, hit)");

    CLI::App* self = app.add_subcommand("selftest", "Run the invariant battery on fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cdf->parsed()) return run_cdf(g, m, cone_spec, query_csv, out_path, false);
        if (depth->parsed()) return run_cdf(g, m, cone_spec, query_csv, out_path, true);
        if (quant->parsed())
            return run_quantile(g, m, cone_spec, levels, bbox_spec, svg_path, out_path);
        if (closure->parsed()) return run_closure(g, m, cone_spec, genset_spec, out_path);
        if (rank->parsed()) return run_rank(g, m, cone_spec, g1_spec, g2_spec, out_path);
        if (sim->parsed())
            return run_simulate(g, m, cone_spec, k_csv, n_draws, seed, trace_csv, out_path);
        if (self->parsed()) return coneq_cli::run_selftest(std::cout) ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case Error::Kind::BadInput:
            case Error::Kind::BadConfig:
                return 2;
            default:
                return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
