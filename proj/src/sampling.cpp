#include "simplexmeasure/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"

namespace simplexmeasure {

namespace {

constexpr double kPieceDiameter = 0.004;  // target diameter of expected-mass pieces
constexpr int kMarginalCells = 512;       // CDF grid cells per marginal

// Regularized incomplete gamma functions, series + continued fraction.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Tabulated inverse CDF of the radius r of the radial reciprocal family.
// With w = r^{n+1}, the radius CDF is I(w)/I(inf) for I(w) the integral of
// 1/(1+v^s); knots are log-spaced in r across quantiles 1e-9 .. 1-1e-9.
struct RadialTable {
  std::vector<double> radius;
  std::vector<double> cdf;
};

RadialTable build_radial_table(double s, Dim n) {
  constexpr int kKnots = 4096;
  constexpr double kTailQuantile = 1e-9;
  const double ambient = static_cast<double>(n.ambient());
  const double total = std::numbers::pi / (s * std::sin(std::numbers::pi / s));

  const double w_lo = kTailQuantile * total;
  const double w_hi = std::pow((s - 1.0) * kTailQuantile * total, -1.0 / (s - 1.0));
  const double r_lo = std::pow(w_lo, 1.0 / ambient);
  const double r_hi = std::pow(w_hi, 1.0 / ambient);

  QuadratureSpec cell_spec;
  cell_spec.abs_tol = 1e-14;
  cell_spec.rel_tol = 1e-11;
  cell_spec.max_subdivisions = 60;
  const Integrand1D dens = [s](double v) { return 1.0 / (1.0 + std::pow(v, s)); };

  RadialTable table;
  table.radius.resize(kKnots);
  table.cdf.resize(kKnots);
  const double log_lo = std::log(r_lo);
  const double step = (std::log(r_hi) - log_lo) / (kKnots - 1);
  double prev_w = 0.0;
  double acc = 0.0;
  for (int i = 0; i < kKnots; ++i) {
    const double r = std::exp(log_lo + step * i);
    const double w = std::pow(r, ambient);
    acc += integrate_interval(dens, prev_w, w, cell_spec).value;
    table.radius[i] = r;
    table.cdf[i] = acc / total;
    prev_w = w;
  }
  return table;
}

double radial_draw(const RadialTable& table, double u) {
  if (u <= table.cdf.front()) return table.radius.front();
  if (u >= table.cdf.back()) return table.radius.back();
  const auto it = std::lower_bound(table.cdf.begin(), table.cdf.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - table.cdf.begin());
  const std::size_t lo = hi - 1;
  const double span = table.cdf[hi] - table.cdf[lo];
  const double frac = span > 0.0 ? (u - table.cdf[lo]) / span : 0.5;
  return table.radius[lo] + frac * (table.radius[hi] - table.radius[lo]);
}

void append_samples(const DensityFamily& f, SeededGenerator& gen, long count,
                    const RadialTable* radial, std::vector<OrthantPoint>& out) {
  const int ambient = family_dim(f).ambient();
  std::vector<double> y(ambient);
  for (long i = 0; i < count; ++i) {
    std::visit(
        [&](const auto& fam) {
          using T = std::decay_t<decltype(fam)>;
          if constexpr (std::is_same_v<T, LogNormal>) {
            Eigen::VectorXd z(ambient);
            for (int j = 0; j < ambient; ++j) z(j) = gen.normal();
            const Eigen::VectorXd w = fam.sigma.cholesky_lower() * z;
            for (int j = 0; j < ambient; ++j) y[j] = std::exp(fam.mu[j] + w(j));
          } else if constexpr (std::is_same_v<T, MultiGamma>) {
            for (int j = 0; j < ambient; ++j) y[j] = gen.gamma(fam.alpha[j]) / fam.beta[j];
          } else if constexpr (std::is_same_v<T, MultiChi>) {
            // chi = sqrt of gamma(k/2, scale 2)
            for (int j = 0; j < ambient; ++j) y[j] = std::sqrt(2.0 * gen.gamma(0.5 * fam.k[j]));
          } else if constexpr (std::is_same_v<T, RadialReciprocal>) {
            double s = 0.0;
            for (int j = 0; j < ambient; ++j) {
              y[j] = gen.exponential();
              s += y[j];
            }
            const double r = radial_draw(*radial, gen.uniform01());
            for (int j = 0; j < ambient; ++j) y[j] = r * y[j] / s;
          } else {
            for (int j = 0; j < ambient; ++j) y[j] = fam.point.coords()[j];
          }
        },
        f);
    out.emplace_back(y);
  }
}

// Triangular subdivision of the chart simplex for n = 2: per cell (i, j) of
// the square lattice a lower triangle, plus an upper triangle when it still
// fits under the diagonal. m*m equal-area bins in total.
struct TriangleBins {
  int per_axis = 0;
  std::vector<std::array<std::array<double, 2>, 3>> vertices;
  std::vector<int> lower_index;
  std::vector<int> upper_index;

  explicit TriangleBins(int m) : per_axis(m), lower_index(m * m, -1), upper_index(m * m, -1) {
    const double h = 1.0 / m;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m - i; ++j) {
        lower_index[i * m + j] = static_cast<int>(vertices.size());
        vertices.push_back({{{i * h, j * h}, {(i + 1) * h, j * h}, {i * h, (j + 1) * h}}});
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m - 1 - i; ++j) {
        upper_index[i * m + j] = static_cast<int>(vertices.size());
        vertices.push_back(
            {{{(i + 1) * h, j * h}, {i * h, (j + 1) * h}, {(i + 1) * h, (j + 1) * h}}});
      }
    }
  }

  int count() const { return static_cast<int>(vertices.size()); }

  int locate(double x1, double x2) const {
    int i = std::min(per_axis - 1, static_cast<int>(x1 * per_axis));
    int j = std::min(per_axis - 1, static_cast<int>(x2 * per_axis));
    const double f1 = x1 * per_axis - i;
    const double f2 = x2 * per_axis - j;
    const int idx = (f1 + f2 <= 1.0) ? lower_index[i * per_axis + j] : upper_index[i * per_axis + j];
    return idx;
  }
};

double triangle_area(const std::array<std::array<double, 2>, 3>& t) {
  const double ax = t[1][0] - t[0][0], ay = t[1][1] - t[0][1];
  const double bx = t[2][0] - t[0][0], by = t[2][1] - t[0][1];
  return 0.5 * std::abs(ax * by - ay * bx);
}

double triangle_mass(const std::function<double(double, double)>& dens,
                     const std::array<std::array<double, 2>, 3>& t, int depth) {
  if (depth == 0) {
    const double cx = (t[0][0] + t[1][0] + t[2][0]) / 3.0;
    const double cy = (t[0][1] + t[1][1] + t[2][1]) / 3.0;
    return dens(cx, cy) * triangle_area(t);
  }
  const std::array<double, 2> m01 = {0.5 * (t[0][0] + t[1][0]), 0.5 * (t[0][1] + t[1][1])};
  const std::array<double, 2> m12 = {0.5 * (t[1][0] + t[2][0]), 0.5 * (t[1][1] + t[2][1])};
  const std::array<double, 2> m20 = {0.5 * (t[2][0] + t[0][0]), 0.5 * (t[2][1] + t[0][1])};
  double acc = 0.0;
  acc += triangle_mass(dens, {{t[0], m01, m20}}, depth - 1);
  acc += triangle_mass(dens, {{m01, t[1], m12}}, depth - 1);
  acc += triangle_mass(dens, {{m20, m12, t[2]}}, depth - 1);
  acc += triangle_mass(dens, {{m01, m12, m20}}, depth - 1);
  return acc;
}

double interp_cdf(const std::vector<double>& grid, const std::vector<double>& cdf, double c) {
  if (c <= grid.front()) return 0.0;
  if (c >= grid.back()) return 1.0;
  const auto it = std::upper_bound(grid.begin(), grid.end(), c);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double frac = (c - grid[lo]) / (grid[hi] - grid[lo]);
  return cdf[lo] + frac * (cdf[hi] - cdf[lo]);
}

double ks_statistic(std::vector<double>& values, const std::vector<double>& grid,
                    const std::vector<double>& cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double fv = interp_cdf(grid, cdf, values[k]);
    d = std::max(d, std::abs(fv - static_cast<double>(k) / n));
    d = std::max(d, std::abs(fv - static_cast<double>(k + 1) / n));
  }
  return d;
}

}  // namespace

double chi_square_pvalue(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  const double a = 0.5 * dof;
  const double x = 0.5 * statistic;
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

std::vector<OrthantPoint> sample(const DensityFamily& f, SeededGenerator& gen, long count) {
  if (count < 1) throw DomainError("sample: count must be >= 1");
  std::vector<OrthantPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  RadialTable table;
  const RadialTable* table_ptr = nullptr;
  if (const auto* radial = std::get_if<RadialReciprocal>(&f)) {
    table = build_radial_table(radial->s, radial->n);
    table_ptr = &table;
  }
  append_samples(f, gen, count, table_ptr, out);
  return out;
}

MCReport mc_verify(const DensityFamily& f, const TransformedDensity& td, SeededGenerator& gen,
                   long count, int bins, const MCThresholds& thresholds) {
  if (is_dirac(f) || td.is_atom()) {
    throw DomainError("mc_verify: needs a family with a transformed density, not an atom");
  }
  const Dim n = family_dim(f);
  if (!(n == td.dim())) throw DimensionError("mc_verify: family and density dimensions differ");
  if (n.value() > 2) throw DomainError("mc_verify: bin schemes are defined for n <= 2");
  if (bins < 2) throw DomainError("mc_verify: need at least 2 bins");

  const int ambient = n.ambient();
  MCReport report;
  report.sample_count = static_cast<std::uint64_t>(count);

  // Bin layout.
  int bin_count = bins;
  int per_axis = bins;
  TriangleBins triangles(1);
  if (n.value() == 2) {
    per_axis = std::max(2, static_cast<int>(std::llround(std::sqrt(static_cast<double>(bins)))));
    triangles = TriangleBins(per_axis);
    bin_count = triangles.count();
    report.bin_spec = "triangles:" + std::to_string(per_axis) + "x" + std::to_string(per_axis);
  } else {
    report.bin_spec = "intervals:" + std::to_string(bins);
  }
  if (static_cast<double>(count) < kExpectedCountFloor * bin_count) {
    throw DomainError("mc_verify: insufficient samples for bin floor");
  }

  // Sample in batches, histogram the chart coordinates, record marginals.
  std::vector<long> observed(bin_count, 0);
  std::vector<std::vector<double>> marginals(ambient);
  for (auto& m : marginals) m.reserve(static_cast<std::size_t>(count));
  constexpr long kBatch = 65536;
  std::vector<OrthantPoint> batch;
  long remaining = count;
  RadialTable table;
  const RadialTable* table_ptr = nullptr;
  if (const auto* radial = std::get_if<RadialReciprocal>(&f)) {
    table = build_radial_table(radial->s, radial->n);
    table_ptr = &table;
  }
  while (remaining > 0) {
    const long take = std::min(kBatch, remaining);
    batch.clear();
    batch.reserve(static_cast<std::size_t>(take));
    append_samples(f, gen, take, table_ptr, batch);
    for (const auto& y : batch) {
      const auto& v = y.coords();
      const double s = std::accumulate(v.begin(), v.end(), 0.0);
      double b0 = v[0] / s;
      for (int j = 0; j < ambient; ++j) marginals[j].push_back(v[j] / s);
      int idx;
      if (n.value() == 1) {
        idx = std::min(bin_count - 1, static_cast<int>(b0 * bin_count));
        idx = std::max(0, idx);
      } else {
        idx = triangles.locate(b0, v[1] / s);
      }
      ++observed[idx];
    }
    remaining -= take;
  }

  // Expected bin masses from the claimed density.
  std::vector<double> expected(bin_count, 0.0);
  if (n.value() == 1) {
    QuadratureSpec bin_spec;
    bin_spec.abs_tol = 1e-13;
    bin_spec.rel_tol = 1e-9;
    const Integrand1D dens = [&td](double x) {
      return lebesgue_chart_density(td, ChartPoint({x}));
    };
    const double h = 1.0 / bins;
    for (int k = 0; k < bins; ++k) {
      expected[k] = static_cast<double>(count) *
                    integrate_interval(dens, k * h, (k + 1) * h, bin_spec).value;
    }
  } else {
    const std::function<double(double, double)> dens = [&td](double x1, double x2) {
      return lebesgue_chart_density(td, ChartPoint({x1, x2}));
    };
    const double diam = std::numbers::sqrt2 / per_axis;
    const int depth = std::max(0, static_cast<int>(std::ceil(std::log2(diam / kPieceDiameter))));
    for (int k = 0; k < bin_count; ++k) {
      expected[k] =
          static_cast<double>(count) * triangle_mass(dens, triangles.vertices[k], depth);
    }
  }

  // Chi-square and sup relative error over bins above the expected-count floor.
  double stat = 0.0, sup = 0.0;
  long included = 0;
  for (int k = 0; k < bin_count; ++k) {
    if (expected[k] < kExpectedCountFloor) continue;
    ++included;
    const double diff = static_cast<double>(observed[k]) - expected[k];
    stat += diff * diff / expected[k];
    sup = std::max(sup, std::abs(diff) / expected[k]);
  }
  report.chi_square_statistic = stat;
  report.chi_square_dof = included > 1 ? static_cast<std::uint64_t>(included - 1) : 0;
  report.sup_relative_bin_error = sup;

  // Marginal CDF grids of each barycentric coordinate.
  std::vector<double> grid(kMarginalCells + 1);
  for (int j = 0; j <= kMarginalCells; ++j) grid[j] = static_cast<double>(j) / kMarginalCells;
  std::vector<std::vector<double>> cdfs(ambient, std::vector<double>(kMarginalCells + 1, 0.0));
  if (n.value() == 1) {
    QuadratureSpec cell_spec;
    cell_spec.abs_tol = 1e-12;
    cell_spec.rel_tol = 1e-8;
    const Integrand1D dens = [&td](double x) {
      return lebesgue_chart_density(td, ChartPoint({x}));
    };
    double acc = 0.0;
    for (int j = 0; j < kMarginalCells; ++j) {
      acc += integrate_interval(dens, grid[j], grid[j + 1], cell_spec).value;
      cdfs[0][j + 1] = acc;
    }
    for (int j = 0; j <= kMarginalCells; ++j) {
      cdfs[1][j] = acc - cdfs[0][kMarginalCells - j];
    }
    for (auto& c : cdfs)
      for (double& v : c) v /= acc;
  } else {
    QuadratureSpec slice_spec;
    slice_spec.abs_tol = 1e-10;
    slice_spec.rel_tol = 1e-7;
    slice_spec.max_subdivisions = 100;
    const double w = chart_weight(n);
    for (int axis = 0; axis < ambient; ++axis) {
      const auto slice_density = [&](double c) -> double {
        const Integrand1D g = [&, c](double v) {
          if (axis == 0) return w * td(ChartPoint({c, v}));
          if (axis == 1) return w * td(ChartPoint({v, c}));
          return w * td(ChartPoint({v, 1.0 - c - v}));
        };
        const double len = 1.0 - c;
        if (len <= 0.0) return 0.0;
        return integrate_interval(g, 0.0, len, slice_spec).value;
      };
      double acc = 0.0;
      const double h = 1.0 / kMarginalCells;
      for (int j = 0; j < kMarginalCells; ++j) {
        acc += slice_density(grid[j] + 0.5 * h) * h;
        cdfs[axis][j + 1] = acc;
      }
      for (double& v : cdfs[axis]) v /= acc;
    }
  }

  report.per_marginal_ks.resize(ambient);
  for (int j = 0; j < ambient; ++j) {
    report.per_marginal_ks[j] = ks_statistic(marginals[j], grid, cdfs[j]);
  }

  const double pvalue = chi_square_pvalue(report.chi_square_statistic,
                                          static_cast<double>(report.chi_square_dof));
  const double ks_bound = thresholds.ks_coefficient / std::sqrt(static_cast<double>(count));
  bool verdict = pvalue >= thresholds.chi_square_alpha &&
                 report.sup_relative_bin_error <= thresholds.sup_relative_bin_error;
  for (double d : report.per_marginal_ks) verdict = verdict && d <= ks_bound;
  report.verdict = verdict;
  return report;
}

std::string MCReport::to_json() const {
  nlohmann::ordered_json j;
  j["sample_count"] = sample_count;
  j["bin_spec"] = bin_spec;
  j["sup_relative_bin_error"] = sup_relative_bin_error;
  j["chi_square_statistic"] = chi_square_statistic;
  j["chi_square_dof"] = chi_square_dof;
  j["per_marginal_ks"] = per_marginal_ks;
  j["verdict"] = verdict ? "pass" : "fail";
  return j.dump(2);
}

}  // namespace simplexmeasure
