#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "simplexmeasure/geometry.hpp"
#include "test_support.hpp"

using namespace simplexmeasure;
using test_support::close;
using test_support::random_interior_chart;

TEST_CASE("homogeneous transform on example points") {
  const SimplexPoint b = homogeneous_transform(UpperPoint({1.0, 1.0, 2.0}));
  CHECK(b.coords() == std::vector<double>{0.25, 0.25, 0.5});

  const SimplexPoint sym = homogeneous_transform(UpperPoint({2.0, 2.0}));
  CHECK(sym.coords() == std::vector<double>{0.5, 0.5});

  // negative coordinate with positive sum lands outside the open simplex
  const SimplexPoint outside = homogeneous_transform(UpperPoint({0.3, -0.1}));
  CHECK(close(outside.coords()[0], 1.5, 1e-12));
  CHECK(close(outside.coords()[1], -0.5, 1e-12));
  CHECK(!interior_simplex_point(outside));
}

TEST_CASE("upper points require at least two coordinates and positive sum") {
  CHECK_THROWS_AS(UpperPoint({3.0}), DimensionError);
  CHECK_THROWS_AS(UpperPoint({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(OrthantPoint({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Dim(0), DomainError);
}

TEST_CASE("chart embedding and coordinates") {
  CHECK(chart_embed(ChartPoint({0.2, 0.3})).coords() == std::vector<double>{0.2, 0.3, 0.5});
  CHECK(chart_embed(ChartPoint({0.0, 0.0})).coords() == std::vector<double>{0.0, 0.0, 1.0});

  const SimplexPoint outside = chart_embed(ChartPoint({0.7, 0.7}));
  CHECK(close(outside.coords()[2], -0.4, 1e-12));

  CHECK(chart_coords(SimplexPoint({0.2, 0.3, 0.5})).coords() == std::vector<double>{0.2, 0.3});
  CHECK(chart_coords(SimplexPoint({1.0, 0.0, 0.0})).coords() == std::vector<double>{1.0, 0.0});
  CHECK(chart_coords(SimplexPoint({0.25, 0.25, 0.5})).coords() ==
        std::vector<double>{0.25, 0.25});
  CHECK_THROWS_AS(SimplexPoint({0.5, 0.6}), DomainError);
}

TEST_CASE("trivialization on example points") {
  CHECK(trivialize({ChartPoint({0.2, 0.3}), 0.0}).coords() ==
        std::vector<double>{0.2, 0.3, 0.5});

  const UpperPoint doubled = trivialize({ChartPoint({0.2, 0.3}), std::log(2.0)});
  CHECK(close(doubled.coords()[0], 0.4, 1e-15));
  CHECK(close(doubled.coords()[1], 0.6, 1e-15));
  CHECK(close(doubled.coords()[2], 1.0, 1e-15));

  const UpperPoint halved = trivialize({ChartPoint({0.5}), -std::log(2.0)});
  CHECK(close(halved.coords()[0], 0.25, 1e-15));
  CHECK(close(halved.coords()[1], 0.25, 1e-15));

  CHECK_THROWS_AS(trivialize({ChartPoint({0.5}), 701.0}), OverflowError);
  CHECK_THROWS_AS(trivialize({ChartPoint({0.5}), -701.0}), OverflowError);
}

TEST_CASE("trivialization inverse on example points") {
  const FiberPoint p = trivialize_inv(UpperPoint({0.4, 0.6, 1.0}));
  CHECK(close(p.x.coords()[0], 0.2, 1e-15));
  CHECK(close(p.x.coords()[1], 0.3, 1e-15));
  CHECK(close(p.t, std::log(2.0), 1e-15));

  const FiberPoint q = trivialize_inv(UpperPoint({0.25, 0.25, 0.5}));
  CHECK(close(q.t, 0.0, 1e-15));

  const FiberPoint r = trivialize_inv(UpperPoint({2.0, 2.0}));
  CHECK(close(r.x.coords()[0], 0.5, 1e-15));
  CHECK(close(r.t, std::log(4.0), 1e-15));
}

TEST_CASE("fiber projection") {
  CHECK(project({ChartPoint({0.2, 0.3}), 5.0}).coords() == std::vector<double>{0.2, 0.3});
  CHECK(project({ChartPoint({0.5}), -3.0}).coords() == std::vector<double>{0.5});
  CHECK(project({ChartPoint({0.1, 0.1, 0.1}), 0.0}).coords() ==
        std::vector<double>{0.1, 0.1, 0.1});
}

TEST_CASE("jacobian determinant values") {
  CHECK(trivialize_jacobian_det({ChartPoint({0.3, 0.3}), 0.0}) == 1.0);
  CHECK(close(trivialize_jacobian_det({ChartPoint({0.3, 0.3}), std::log(2.0)}), 8.0, 1e-12));
  CHECK(close(trivialize_jacobian_det({ChartPoint({0.5}), 1.0}), std::exp(2.0), 1e-12));
  CHECK_THROWS_AS(trivialize_jacobian_det({ChartPoint({0.3, 0.3}), 300.0}), OverflowError);
}

TEST_CASE("commuting square, round trips and scale invariance") {
  SeededGenerator gen(7);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 500; ++trial) {
      const ChartPoint x(random_interior_chart(gen, n));
      const double t = -20.0 + 40.0 * gen.uniform01();
      const UpperPoint y = trivialize({x, t});

      const std::vector<double> through = homogeneous_transform(y).coords();
      const std::vector<double> direct = chart_embed(x).coords();
      for (std::size_t i = 0; i < through.size(); ++i) {
        CHECK(close(through[i], direct[i], 1e-12));
      }

      const FiberPoint back = trivialize_inv(y);
      CHECK(close(back.t, t, 1e-12));
      const std::vector<double> y2 = trivialize(back).coords();
      double ymax = 1.0;
      for (const double v : y.coords()) ymax = std::max(ymax, std::abs(v));
      for (std::size_t i = 0; i < y2.size(); ++i) {
        CHECK(std::abs(y2[i] - y.coords()[i]) <= 1e-12 * ymax);
      }

      const double s = std::exp(-4.0 + 8.0 * gen.uniform01());
      std::vector<double> scaled = y.coords();
      for (double& v : scaled) v *= s;
      const std::vector<double> b2 = homogeneous_transform(UpperPoint(scaled)).coords();
      for (std::size_t i = 0; i < b2.size(); ++i) {
        CHECK(close(b2[i], through[i], 1e-12));
      }
    }
  }
}

TEST_CASE("idempotence on the simplex") {
  SeededGenerator gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> b = random_interior_chart(gen, 2);
    b.push_back(1.0 - b[0] - b[1]);
    const std::vector<double> again = homogeneous_transform(UpperPoint(b)).coords();
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(close(again[i], b[i], 1e-12));
  }
}

TEST_CASE("jacobian determinant agrees with central differences") {
  SeededGenerator gen(13);
  for (int n = 1; n <= 4; ++n) {
    const int ambient = n + 1;
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<double> x = random_interior_chart(gen, n);
      const double t = -3.0 + 6.0 * gen.uniform01();
      const double h = 1e-6;
      Eigen::MatrixXd jac(ambient, ambient);
      for (int j = 0; j <= n; ++j) {
        std::vector<double> lo = x, hi = x;
        double t_lo = t, t_hi = t;
        if (j < n) {
          lo[j] -= h;
          hi[j] += h;
        } else {
          t_lo -= h;
          t_hi += h;
        }
        const std::vector<double> y_hi = trivialize({ChartPoint(hi), t_hi}).coords();
        const std::vector<double> y_lo = trivialize({ChartPoint(lo), t_lo}).coords();
        for (int i = 0; i < ambient; ++i) jac(i, j) = (y_hi[i] - y_lo[i]) / (2.0 * h);
      }
      const double analytic = trivialize_jacobian_det({ChartPoint(x), t});
      CHECK(std::abs(jac.determinant() - analytic) <= 1e-6 * analytic);
    }
  }
}

TEST_CASE("membership predicates and simplex constants") {
  CHECK(interior_chart_point(ChartPoint({0.2, 0.3})));
  CHECK(!interior_chart_point(ChartPoint({0.7, 0.7})));
  CHECK(!interior_chart_point(ChartPoint({0.0, 0.3})));
  CHECK(interior_simplex_point(SimplexPoint({0.2, 0.3, 0.5})));
  CHECK(!interior_simplex_point(SimplexPoint({1.0, 0.0, 0.0})));

  CHECK(chart_weight(Dim(2)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(simplex_volume(Dim(3)) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(manifold_volume(Dim(2)) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
}
