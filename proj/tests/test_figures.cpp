#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "simplexmeasure/figures.hpp"
#include "test_support.hpp"

using namespace simplexmeasure;
using test_support::close;

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec(Dim(1), 1), DomainError);
  CHECK_THROWS_AS(GridSpec(Dim(1), 10, 0.5), DomainError);
  CHECK_THROWS_AS(GridSpec(Dim(1), 10, -0.1), DomainError);
}

TEST_CASE("chart grids stay inside the open chart simplex") {
  const auto line = chart_grid(GridSpec(Dim(1), 5));
  CHECK(line.size() == 5);
  CHECK(close(line[0].coords()[0], 0.1, 1e-15));
  CHECK(close(line[4].coords()[0], 0.9, 1e-15));

  for (const double margin : {0.0, 0.1, 0.3}) {
    const auto grid = chart_grid(GridSpec(Dim(2), 7, margin));
    CHECK(!grid.empty());
    for (const auto& x : grid) {
      CHECK(interior_chart_point(x));
      double s = 0.0;
      for (const double v : x.coords()) {
        CHECK(v > margin);
        s += v;
      }
      CHECK(1.0 - s > margin);
    }
  }
}

TEST_CASE("bivariate curve of a gamma family") {
  const DensityFamily gamma = MultiGamma({2.0, 3.0}, {1.0, 2.0});
  const auto curve = bivariate_curve(gamma, 400);
  CHECK(curve.size() == 399);
  CHECK(close(curve[0].p, 1.0 / 400.0, 1e-15));
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    mass += 0.5 * (curve[i].g + curve[i + 1].g) * (curve[i + 1].p - curve[i].p);
  }
  CHECK(close(mass, 1.0, 5e-3));

  CHECK_THROWS_AS(bivariate_curve(MultiGamma({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}), 100),
                  DimensionError);
}

TEST_CASE("ternary embedding maps the vertices to the unit triangle") {
  const auto a1 = ternary_embed(SimplexPoint({1.0, 0.0, 0.0}));
  CHECK(close(a1.first, 0.0, 1e-15));
  CHECK(close(a1.second, 0.0, 1e-15));
  const auto a2 = ternary_embed(SimplexPoint({0.0, 1.0, 0.0}));
  CHECK(close(a2.first, 1.0, 1e-15));
  CHECK(close(a2.second, 0.0, 1e-15));
  const auto a3 = ternary_embed(SimplexPoint({0.0, 0.0, 1.0}));
  CHECK(close(a3.first, 0.5, 1e-15));
  CHECK(close(a3.second, 0.5 * std::sqrt(3.0), 1e-15));
  CHECK_THROWS_AS(ternary_embed(SimplexPoint({0.5, 0.5})), DimensionError);
}

TEST_CASE("ternary heatmap of an isotropic log-normal is permutation symmetric") {
  const DensityFamily f =
      LogNormal({0.0, 0.0, 0.0}, CovMatrix(Eigen::MatrixXd::Identity(3, 3) * 0.7));
  constexpr int kRes = 24;
  const auto grid = ternary_heatmap(f, kRes);
  CHECK(grid.size() == static_cast<std::size_t>((kRes - 1) * (kRes - 2) / 2));

  // group the density values by the sorted barycentric triple
  std::map<std::array<int, 3>, std::vector<double>> groups;
  std::size_t idx = 0;
  for (int i = 1; i <= kRes - 2; ++i) {
    for (int j = 1; j <= kRes - 1 - i; ++j) {
      std::array<int, 3> key{i, j, kRes - i - j};
      std::sort(key.begin(), key.end());
      groups[key].push_back(grid[idx++].g);
    }
  }
  double worst = 0.0;
  for (const auto& [key, values] : groups) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    worst = std::max(worst, *hi - *lo);
  }
  CHECK(worst <= 1e-10);

  CHECK_THROWS_AS(ternary_heatmap(MultiGamma({1.0, 1.0}, {1.0, 1.0}), 10), DimensionError);
}

TEST_CASE("figure calls reject atom sources") {
  const DensityFamily dirac3 = DiracAt(UpperPoint({1.0, 2.0, 3.0}));
  CHECK_THROWS_AS(ternary_heatmap(dirac3, 10), DomainError);
  const DensityFamily dirac2 = DiracAt(UpperPoint({1.0, 2.0}));
  CHECK_THROWS_AS(bivariate_curve(dirac2, 10), DomainError);
}
