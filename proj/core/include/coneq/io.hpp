#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coneq/distribution.hpp"
#include "coneq/galois.hpp"
#include "coneq/geometry.hpp"
#include "coneq/quantile.hpp"

namespace coneq::io {

// CSV of one point per row, d numeric columns. A header row is detected
// by non-numeric tokens; a final header column named "weight" (any case)
// marks per-row weights. Comma separated, surrounding blanks ignored.
struct CsvData {
    std::vector<Vec> points;
    std::vector<double> weights;  // empty when no weight column
};

CsvData read_points_csv(const std::string& path);

DistributionModel model_from_csv(const std::string& path);

// {"mu": [...], "sigma": [[...], ...]}
GaussianModel parse_gaussian_json(const std::string& text);
GaussianModel read_gaussian_json(const std::string& path);

// Cone specification: a preset string ("orthant", "zero",
// "halfspace:w1,w2,..."), inline JSON, or a path to a JSON file with
// {"dim": d, "generators": [[...], ...], "dual_generators": optional}.
ConvexCone parse_cone_spec(const std::string& spec, std::size_t fallback_dim,
                           double tol = kDefaultTol);

// {"G": [[...], ...]}
GeneratorSet parse_genset_json(const std::string& text);
GeneratorSet read_genset_json(const std::string& path);

// Region <-> JSON. Schema: {"p": p, "variant": "whole"|"empty"|"hrep",
// "halfspaces": [{"w": [...], "b": b}, ...], "polygon": [[x, y], ...]?}.
std::string region_to_json(const Region& r, double p, const std::vector<Vec>* polygon);
Region region_from_json(const std::string& text, const ConvexCone& cone);
double region_json_level(const std::string& text);

// SVG plot of sample points and nested region boundaries (d = 2).
std::string svg_regions(const std::vector<Vec>& sample,
                        const std::vector<std::pair<double, std::vector<Vec>>>& polygons,
                        const BBox& box);

std::string format_double(double v);  // 17 significant digits, round-trip safe

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace coneq::io
