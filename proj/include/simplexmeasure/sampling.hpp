#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplexmeasure/measures.hpp"
#include "simplexmeasure/pushforward.hpp"
#include "simplexmeasure/rng.hpp"

// Random sampling from every density family, and the Monte Carlo harness that
// compares empirical pushforward histograms with a claimed transformed
// density.

namespace simplexmeasure {

// Pass thresholds of the Monte Carlo verdict.
struct MCThresholds {
  double chi_square_alpha = 1e-3;        // reject when the p-value drops below
  double sup_relative_bin_error = 0.05;  // over bins with expected count >= 25
  double ks_coefficient = 1.95;          // per-marginal bound ks <= c / sqrt(N)
};

inline constexpr double kExpectedCountFloor = 25.0;

struct MCReport {
  std::uint64_t sample_count = 0;
  std::string bin_spec;
  double sup_relative_bin_error = 0.0;
  double chi_square_statistic = 0.0;
  std::uint64_t chi_square_dof = 0;
  std::vector<double> per_marginal_ks;
  bool verdict = false;

  std::string to_json() const;
};

// Draw `count` points from the family. Sampling recipes: log-normal by
// exponentiating a correlated Gaussian draw; gamma and chi coordinate-wise;
// the radial reciprocal family by a uniform simplex direction times a radius
// drawn through a tabulated inverse CDF; Dirac by repeating its point (which
// must be strictly positive to be representable on the orthant).
std::vector<OrthantPoint> sample(const DensityFamily& f, SeededGenerator& gen, long count);

// Sample the family, push the draws through the homogeneous transform and
// compare bin frequencies on a regular partition of the chart simplex with
// the claimed transformed density. `bins` is the requested bin count: used
// directly for n = 1, rounded to a triangular m x m subdivision for n = 2.
MCReport mc_verify(const DensityFamily& f, const TransformedDensity& td, SeededGenerator& gen,
                   long count, int bins, const MCThresholds& thresholds = {});

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

}  // namespace simplexmeasure
