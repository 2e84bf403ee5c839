#include "simplexmeasure/figures.hpp"

#include <cmath>

namespace simplexmeasure {

GridSpec::GridSpec(Dim n_in, int resolution_in, double margin_in)
    : n(n_in), resolution(resolution_in), margin(margin_in) {
  if (resolution < 2) throw DomainError("GridSpec: resolution must be >= 2");
  if (!(margin >= 0.0 && margin < 0.5)) throw DomainError("GridSpec: margin must lie in [0, 0.5)");
}

std::vector<ChartPoint> chart_grid(const GridSpec& spec) {
  const int n = spec.n.value();
  const int r = spec.resolution;
  const double lo = spec.margin;
  const double width = 1.0 - 2.0 * spec.margin;
  std::vector<double> centers(r);
  for (int k = 0; k < r; ++k) centers[k] = lo + width * (k + 0.5) / r;

  std::vector<ChartPoint> out;
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  for (;;) {
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      x[d] = centers[idx[d]];
      s += x[d];
    }
    if (1.0 - s > spec.margin) out.push_back(ChartPoint(x));
    int d = n - 1;
    while (d >= 0 && ++idx[d] == r) idx[d--] = 0;
    if (d < 0) break;
  }
  return out;
}

std::vector<CurvePoint> bivariate_curve(const DensityFamily& f, int resolution) {
  if (family_dim(f).value() != 1) {
    throw DimensionError("bivariate_curve: requires a bivariate family (n = 1)");
  }
  if (resolution < 2) throw DomainError("bivariate_curve: resolution must be >= 2");
  const TransformedDensity td = closed_form(f);
  std::vector<CurvePoint> out;
  out.reserve(resolution - 1);
  for (int k = 1; k < resolution; ++k) {
    const double p = static_cast<double>(k) / resolution;
    out.push_back({p, lebesgue_chart_density(td, ChartPoint({p}))});
  }
  return out;
}

std::pair<double, double> ternary_embed(const SimplexPoint& b) {
  if (b.dim().value() != 2) throw DimensionError("ternary_embed: requires 3 barycentric coordinates");
  const auto& v = b.coords();
  return {v[1] + 0.5 * v[2], 0.5 * std::sqrt(3.0) * v[2]};
}

std::vector<TernaryPoint> ternary_heatmap(const DensityFamily& f, int resolution) {
  if (family_dim(f).value() != 2) {
    throw DimensionError("ternary_heatmap: requires a trivariate family (n = 2)");
  }
  if (resolution < 3) throw DomainError("ternary_heatmap: resolution must be >= 3");
  const TransformedDensity td = closed_form(f);
  if (td.is_atom()) throw DomainError("ternary_heatmap: atom measures have no density grid");
  std::vector<TernaryPoint> out;
  for (int i = 1; i <= resolution - 2; ++i) {
    for (int j = 1; j <= resolution - 1 - i; ++j) {
      const int k = resolution - i - j;
      const double b1 = static_cast<double>(i) / resolution;
      const double b2 = static_cast<double>(j) / resolution;
      const double b3 = static_cast<double>(k) / resolution;
      const double g = td(ChartPoint({b1, b2}));
      out.push_back({b2 + 0.5 * b3, 0.5 * std::sqrt(3.0) * b3, g});
    }
  }
  return out;
}

}  // namespace simplexmeasure
