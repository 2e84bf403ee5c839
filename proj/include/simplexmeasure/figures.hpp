#pragma once

#include <utility>
#include <vector>

#include "simplexmeasure/measures.hpp"
#include "simplexmeasure/pushforward.hpp"

// Data grids behind the figure outputs: density curves over the bivariate
// chart and isometric ternary heatmaps for trivariate data. No plotting; the
// grids are meant to be rendered by external tools.

namespace simplexmeasure {

struct GridSpec {
  GridSpec(Dim n_in, int resolution_in, double margin_in = 0.0);
  Dim n;
  int resolution;
  double margin;
};

// Cell-center lattice of the chart simplex: per-axis centers of `resolution`
// cells of [margin, 1-margin], keeping points whose last barycentric
// coordinate also stays above the margin. Every point lies in the open chart
// simplex.
std::vector<ChartPoint> chart_grid(const GridSpec& spec);

struct CurvePoint {
  double p = 0.0;  // fraction of the first coordinate
  double g = 0.0;  // transformed density wrt Lebesgue measure on (0,1)
};

// Transformed density of a bivariate family as a function of the first
// coordinate's fraction, at p = k/resolution for k = 1 .. resolution-1.
std::vector<CurvePoint> bivariate_curve(const DensityFamily& f, int resolution);

struct TernaryPoint {
  double u = 0.0;
  double v = 0.0;
  double g = 0.0;  // transformed density wrt the manifold measure
};

// Isometric embedding of barycentric coordinates onto the plane equilateral
// triangle with unit side: (u, v) = (b2 + b3/2, sqrt(3)/2 * b3).
std::pair<double, double> ternary_embed(const SimplexPoint& b);

// Interior barycentric lattice (i, j, k)/resolution, i+j+k = resolution,
// embedded isometrically; the lattice is closed under coordinate
// permutations. Trivariate families only.
std::vector<TernaryPoint> ternary_heatmap(const DensityFamily& f, int resolution);

}  // namespace simplexmeasure
