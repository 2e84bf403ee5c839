#pragma once

#include <functional>
#include <span>

#include "simplexmeasure/errors.hpp"
#include "simplexmeasure/geometry.hpp"
#include "simplexmeasure/rng.hpp"

// Deterministic adaptive integration: a Gauss-Kronrod (7,15) pair on finite
// intervals, refined worst-segment-first, with half-line and whole-line
// integrals reduced to finite segments by rational or exponential
// substitutions. Non-convergence raises QuadratureError; there is no silent
// best-effort value.

namespace simplexmeasure {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_subdivisions = 200;
  // How the unbounded tail is mapped to a finite segment:
  //   inverse      u in (m, inf) -> w in (0, 1) via u = m / w
  //   exponential  u = e^v with v swept over doubling windows
  enum class TailMap { inverse, exponential } tail_map = TailMap::inverse;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

using Integrand1D = std::function<double(double)>;
using SimplexIntegrand = std::function<double(std::span<const double>)>;

IntegralResult integrate_interval(const Integrand1D& f, double a, double b,
                                  const QuadratureSpec& q = {});

// Integral over (0, inf); `scale` sets the split point between the direct
// segment (0, scale) and the mapped tail.
IntegralResult integrate_halfline(const Integrand1D& f, const QuadratureSpec& q = {},
                                  double scale = 1.0);

IntegralResult integrate_line(const Integrand1D& f, const QuadratureSpec& q = {});

// Iterated 1-D adaptive integration over the open chart simplex, n <= 3.
IntegralResult integrate_simplex_grid(const SimplexIntegrand& f, Dim n,
                                      const QuadratureSpec& q = {});

// Monte Carlo over the open chart simplex: mean over uniform draws times the
// simplex volume 1/n!. error_estimate is one standard error.
IntegralResult integrate_simplex_mc(const SimplexIntegrand& f, Dim n, long samples,
                                    SeededGenerator& gen);

}  // namespace simplexmeasure
