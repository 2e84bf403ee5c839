#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>

#include "simplexmeasure/measures.hpp"
#include "test_support.hpp"

using namespace simplexmeasure;
using test_support::close;
using test_support::close_rel;

TEST_CASE("density values of the example families") {
  const DensityFamily gamma = MultiGamma({1.0, 1.0}, {1.0, 1.0});
  CHECK(close(density_at(gamma, OrthantPoint({1.0, 1.0})), std::exp(-2.0), 1e-15));

  const DensityFamily lognormal =
      LogNormal({0.0, 0.0}, CovMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}));
  CHECK(close(density_at(lognormal, OrthantPoint({1.0, 1.0})), 1.0 / (2.0 * std::numbers::pi),
              1e-15));

  const DensityFamily chi = MultiChi({1.0, 1.0});
  CHECK(close(density_at(chi, OrthantPoint({1.0, 1.0})),
              (2.0 / std::numbers::pi) * std::exp(-1.0), 1e-14));
  // cross-check: the one-dimensional chi density with k = 1 carries unit mass
  const IntegralResult chi1_mass = integrate_halfline([](double x) {
    return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * x * x);
  });
  CHECK(close(chi1_mass.value, 1.0, 1e-10));
}

TEST_CASE("density errors") {
  const DensityFamily dirac = DiracAt(UpperPoint({1.0, 2.0}));
  CHECK_THROWS_AS(density_at(dirac, OrthantPoint({1.0, 1.0})), DomainError);
  const DensityFamily gamma = MultiGamma({1.0, 1.0}, {1.0, 1.0});
  const std::array<double, 2> bad{1.0, -1.0};
  CHECK_THROWS_AS(log_density_at(gamma, std::span<const double>(bad)), DomainError);
  const std::array<double, 3> wrong{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(log_density_at(gamma, std::span<const double>(wrong)), DimensionError);
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(MultiGamma({1.0, -1.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(MultiGamma({1.0, 1.0}, {1.0}), DimensionError);
  CHECK_THROWS_AS(MultiChi({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(RadialReciprocal(1.0, Dim(1)), DomainError);
  CHECK_THROWS_AS(LogNormal({0.0, 0.0, 0.0}, CovMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}})),
                  DimensionError);
}

TEST_CASE("radial reciprocal normalizer against the analytic value") {
  CHECK(close_rel(radial_reciprocal_normalizer(2.0, Dim(1)), 4.0 / std::numbers::pi, 1e-10));
  CHECK(close_rel(radial_reciprocal_normalizer(2.0, Dim(2)), 12.0 / std::numbers::pi, 1e-10));
  CHECK(close_rel(radial_reciprocal_normalizer(4.0, Dim(1)),
                  4.0 * std::numbers::sqrt2 / std::numbers::pi, 1e-10));
  CHECK_THROWS_AS(radial_reciprocal_normalizer(1.0, Dim(1)), DomainError);
  CHECK_THROWS_AS(radial_reciprocal_normalizer(0.5, Dim(2)), DomainError);
}

TEST_CASE("log multivariate beta") {
  const std::array<double, 2> ones{1.0, 1.0};
  CHECK(close(log_multivariate_beta(std::span<const double>(ones)), 0.0, 1e-15));
  const std::array<double, 3> triple{1.0, 1.0, 1.0};
  CHECK(close(std::exp(log_multivariate_beta(std::span<const double>(triple))), 0.5, 1e-14));
  const std::array<double, 2> twos{2.0, 2.0};
  CHECK(close(std::exp(log_multivariate_beta(std::span<const double>(twos))), 1.0 / 6.0, 1e-14));
  const std::array<double, 2> bad{1.0, 0.0};
  CHECK_THROWS_AS(log_multivariate_beta(std::span<const double>(bad)), DomainError);
}

TEST_CASE("dirichlet chart density") {
  const std::array<double, 2> uniform{1.0, 1.0};
  CHECK(close(dirichlet_chart_density(std::span<const double>(uniform), ChartPoint({0.3})), 1.0,
              1e-15));
  const std::array<double, 2> twos{2.0, 2.0};
  CHECK(close(dirichlet_chart_density(std::span<const double>(twos), ChartPoint({0.5})), 1.5,
              1e-14));
  const std::array<double, 3> triple{1.0, 1.0, 1.0};
  CHECK(close(dirichlet_chart_density(std::span<const double>(triple), ChartPoint({0.2, 0.3})),
              2.0, 1e-14));
  // boundary and closure behaviour
  CHECK(dirichlet_chart_density(std::span<const double>(twos), ChartPoint({0.0})) == 0.0);
  const std::array<double, 2> fractional{0.5, 2.0};
  CHECK(std::isinf(
      dirichlet_chart_density(std::span<const double>(fractional), ChartPoint({0.0}))));
  CHECK_THROWS_AS(dirichlet_chart_density(std::span<const double>(twos), ChartPoint({1.2})),
                  DomainError);
}

TEST_CASE("reference measures") {
  CHECK(close(reference_density(ReferenceMeasure::upper_halfspace, UpperPoint({1.0, 1.0, 2.0})),
              1.0 / 64.0, 1e-16));
  CHECK(reference_density(ReferenceMeasure::upper_halfspace, UpperPoint({0.5, 0.5})) == 1.0);
  CHECK(reference_density(ReferenceMeasure::lebesgue_orthant, UpperPoint({5.0, 3.0})) == 1.0);
  CHECK_THROWS_AS(reference_density(ReferenceMeasure::simplex_manifold, UpperPoint({1.0, 1.0})),
                  DomainError);
  CHECK(chart_weight(Dim(1)) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
}

TEST_CASE("covariance matrix validation and factorization") {
  CHECK_THROWS_AS(CovMatrix::from_rows({{1.0, 0.5}, {0.4999, 1.0}}), DomainError);
  CHECK_THROWS_AS(CovMatrix::from_rows({{1.0, 2.0}, {2.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(CovMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}), DimensionError);

  const CovMatrix cov = CovMatrix::from_rows({{2.0, 0.5}, {0.5, 1.0}});
  CHECK(close(cov.log_det(), std::log(2.0 * 1.0 - 0.25), 1e-14));
  Eigen::VectorXd v(2);
  v << 1.0, 1.0;
  const Eigen::VectorXd solved = cov.solve(v);
  CHECK(close((cov.matrix() * solved - v).cwiseAbs().maxCoeff(), 0.0, 1e-13));
}

TEST_CASE("radial reciprocal density uses the tail-safe normalizer") {
  const DensityFamily theta = RadialReciprocal(2.0, Dim(1));
  const double near_zero_sum = density_at(theta, OrthantPoint({1e-4, 1e-4}));
  CHECK(close_rel(near_zero_sum, 4.0 / std::numbers::pi, 1e-10));
  // far tail underflows gracefully to zero rather than NaN
  CHECK(density_at(theta, OrthantPoint({1e150, 1e150})) == 0.0);
}

TEST_CASE("bivariate families carry unit mass on the orthant") {
  QuadratureSpec outer;
  outer.abs_tol = 1e-12;
  outer.rel_tol = 1e-8;
  outer.max_subdivisions = 400;
  QuadratureSpec inner;
  inner.abs_tol = 1e-13;
  inner.rel_tol = 1e-9;
  inner.max_subdivisions = 400;
  const std::vector<DensityFamily> families = {
      MultiGamma({2.0, 3.0}, {1.0, 2.0}),
      MultiChi({1.0, 2.0}),
      RadialReciprocal(2.0, Dim(1)),
      LogNormal({0.1, -0.2}, CovMatrix::from_rows({{1.0, 0.3}, {0.3, 0.8}}))};
  for (const auto& f : families) {
    const Integrand1D outer_f = [&](double y1) {
      const Integrand1D inner_f = [&, y1](double y2) {
        const std::array<double, 2> y{y1, y2};
        return std::exp(log_density_at(f, std::span<const double>(y)));
      };
      return integrate_halfline(inner_f, inner).value;
    };
    CHECK(close(integrate_halfline(outer_f, outer).value, 1.0, 1e-6));
  }
}
