#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "simplexmeasure/sampling.hpp"
#include "test_support.hpp"

using namespace simplexmeasure;
using test_support::close;

TEST_CASE("identical seeds give bit-identical sample streams") {
  const DensityFamily gamma = MultiGamma({2.0, 3.0}, {1.0, 1.0});
  SeededGenerator a(99), b(99), c(100);
  const auto sa = sample(gamma, a, 200);
  const auto sb = sample(gamma, b, 200);
  const auto sc = sample(gamma, c, 200);
  bool identical = true, different = false;
  for (int i = 0; i < 200; ++i) {
    identical = identical && sa[i].coords() == sb[i].coords();
    different = different || sa[i].coords() != sc[i].coords();
  }
  CHECK(identical);
  CHECK(different);

  const DensityFamily theta = RadialReciprocal(2.0, Dim(2));
  SeededGenerator t1(5), t2(5);
  CHECK(sample(theta, t1, 50)[49].coords() == sample(theta, t2, 50)[49].coords());
}

TEST_CASE("substreams are decoupled from the parent stream") {
  SeededGenerator parent(123);
  SeededGenerator sub0 = parent.substream(0);
  SeededGenerator sub1 = parent.substream(1);
  CHECK(sub0.seed() != sub1.seed());
  CHECK(sub0.uniform01() != sub1.uniform01());
}

TEST_CASE("dirac sampling repeats the point") {
  const DensityFamily dirac = DiracAt(UpperPoint({1.0, 2.0, 3.0}));
  SeededGenerator gen(1);
  const auto draws = sample(dirac, gen, 3);
  REQUIRE(draws.size() == 3);
  for (const auto& d : draws) CHECK(d.coords() == std::vector<double>{1.0, 2.0, 3.0});

  // a Dirac point outside the orthant cannot be represented as orthant draws
  const DensityFamily mixed = DiracAt(UpperPoint({0.3, -0.1}));
  CHECK_THROWS_AS(sample(mixed, gen, 1), DomainError);
  CHECK_THROWS_AS(sample(dirac, gen, 0), DomainError);
}

TEST_CASE("dirac samples collapse to the same simplex point under scaling") {
  SeededGenerator g1(3), g2(3);
  const auto a = sample(DiracAt(UpperPoint({1.0, 2.0, 1.0})), g1, 1);
  const auto b = sample(DiracAt(UpperPoint({2.0, 4.0, 2.0})), g2, 1);
  const auto ba = homogeneous_transform(a[0].as_upper()).coords();
  const auto bb = homogeneous_transform(b[0].as_upper()).coords();
  for (std::size_t i = 0; i < ba.size(); ++i) CHECK(close(ba[i], bb[i], 1e-15));
}

TEST_CASE("gamma draws have the dirichlet mean after the transform") {
  const DensityFamily gamma = MultiGamma({2.0, 3.0}, {1.0, 1.0});
  SeededGenerator gen(2024);
  const auto draws = sample(gamma, gen, 1000000);
  double mean = 0.0, m2 = 0.0;
  long count = 0;
  for (const auto& y : draws) {
    const double v = y.coords()[0] / (y.coords()[0] + y.coords()[1]);
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  const double se = std::sqrt(m2 / (count - 1.0) / count);
  CHECK(std::abs(mean - 0.4) <= 3.0 * se);
}

TEST_CASE("radial draws match the quadrature mean of the radius law") {
  const double s = 2.0;
  const DensityFamily theta = RadialReciprocal(s, Dim(1));
  const double kappa = radial_reciprocal_normalizer(s, Dim(1));
  // radius density r * kappa / (1 + r^4) over (0, inf), unit mass
  const double expected_mean =
      integrate_halfline([kappa](double r) { return r * r * kappa / (1.0 + r * r * r * r); })
          .value;
  SeededGenerator gen(77);
  const auto draws = sample(theta, gen, 1000000);
  double mean = 0.0, m2 = 0.0;
  long count = 0;
  for (const auto& y : draws) {
    const double v = y.coords()[0] + y.coords()[1];
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  const double se = std::sqrt(m2 / (count - 1.0) / count);
  CHECK(std::abs(mean - expected_mean) <= 3.0 * se);
}

TEST_CASE("mc_verify accepts the uniform gamma pushforward with uniform marginals") {
  const DensityFamily gamma = MultiGamma({1.0, 1.0}, {1.0, 1.0});
  const TransformedDensity td = closed_form(gamma);
  SeededGenerator gen(501);
  const MCReport report = mc_verify(gamma, td, gen, 1000000, 100);
  CHECK(report.verdict);
  const double bound = 1.95 / std::sqrt(1e6);
  REQUIRE(report.per_marginal_ks.size() == 2);
  for (const double d : report.per_marginal_ks) CHECK(d <= bound);
}

TEST_CASE("mc_verify accepts log-normal and chi families at both dimensions") {
  // the standard log-normal benchmark with 100 bins: edge bins carry only a
  // few hundred expected counts, so the 5% sup bound is tight
  const DensityFamily standard =
      LogNormal({0.0, 0.0}, CovMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}));
  SeededGenerator g0(8101);
  const MCReport r0 = mc_verify(standard, closed_form(standard), g0, 1000000, 100);
  INFO("standard log-normal sup ", r0.sup_relative_bin_error);
  CHECK(r0.verdict);
  CHECK(r0.sup_relative_bin_error <= 0.05);

  const std::vector<std::pair<DensityFamily, int>> cases = {
      {LogNormal({0.0, 0.0, 0.0}, CovMatrix(Eigen::MatrixXd::Identity(3, 3) * 0.6)), 16},
      {MultiChi({1.0, 1.0}), 64},
      {MultiChi({1.0, 1.0, 1.0}), 16}};
  std::uint64_t stream = 0;
  for (const auto& [f, bins] : cases) {
    SeededGenerator gen = SeededGenerator(8101).substream(stream++);
    const MCReport report = mc_verify(f, closed_form(f), gen, 1000000, bins);
    INFO("stream ", stream, " sup ", report.sup_relative_bin_error);
    CHECK(report.verdict);
  }
}

TEST_CASE("mc_verify rejects a mismatched reference density") {
  const DensityFamily sampled = MultiGamma({3.0, 1.0}, {1.0, 1.0});
  const TransformedDensity uniform = closed_form(MultiGamma({1.0, 1.0}, {1.0, 1.0}));
  SeededGenerator gen(9);
  const MCReport report = mc_verify(sampled, uniform, gen, 50000, 20);
  CHECK(!report.verdict);
}

TEST_CASE("mc_verify validates its inputs") {
  const DensityFamily gamma = MultiGamma({1.0, 1.0}, {1.0, 1.0});
  const TransformedDensity td = closed_form(gamma);
  SeededGenerator gen(1);
  CHECK_THROWS_WITH_AS(mc_verify(gamma, td, gen, 10, 100),
                       "mc_verify: insufficient samples for bin floor", DomainError);
  const DensityFamily dirac = DiracAt(UpperPoint({1.0, 1.0}));
  CHECK_THROWS_AS(mc_verify(dirac, closed_form(dirac), gen, 1000, 10), DomainError);
  const DensityFamily other = MultiGamma({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(mc_verify(other, td, gen, 100000, 10), DimensionError);
}

TEST_CASE("mc report serializes with the exact field names") {
  const DensityFamily theta = RadialReciprocal(2.0, Dim(1));
  SeededGenerator gen(61);
  const MCReport report = mc_verify(theta, closed_form(theta), gen, 60000, 40);
  const auto j = nlohmann::json::parse(report.to_json());
  for (const char* key : {"sample_count", "bin_spec", "sup_relative_bin_error",
                          "chi_square_statistic", "chi_square_dof", "per_marginal_ks",
                          "verdict"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["sample_count"] == 60000);
  CHECK((j["verdict"] == "pass" || j["verdict"] == "fail"));
}

TEST_CASE("chi-square tail probabilities") {
  // reference quantiles: P(chi2_1 > 3.841) ~ 0.05, P(chi2_10 > 23.209) ~ 0.01
  CHECK(close(chi_square_pvalue(3.841, 1.0), 0.05, 2e-4));
  CHECK(close(chi_square_pvalue(23.209, 10.0), 0.01, 2e-4));
  CHECK(chi_square_pvalue(0.0, 5.0) == 1.0);
}

TEST_CASE("log-normal draws reproduce the covariance") {
  const CovMatrix sigma = CovMatrix::from_rows({{1.0, 0.5}, {0.5, 1.0}});
  const DensityFamily f = LogNormal({0.0, 0.0}, sigma);
  SeededGenerator gen(314);
  const auto draws = sample(f, gen, 200000);
  double c00 = 0.0, c01 = 0.0, m0 = 0.0, m1 = 0.0;
  for (const auto& y : draws) {
    m0 += std::log(y.coords()[0]);
    m1 += std::log(y.coords()[1]);
  }
  m0 /= static_cast<double>(draws.size());
  m1 /= static_cast<double>(draws.size());
  for (const auto& y : draws) {
    const double a = std::log(y.coords()[0]) - m0;
    const double b = std::log(y.coords()[1]) - m1;
    c00 += a * a;
    c01 += a * b;
  }
  c00 /= static_cast<double>(draws.size());
  c01 /= static_cast<double>(draws.size());
  CHECK(close(c00, 1.0, 0.02));
  CHECK(close(c01, 0.5, 0.02));
}
