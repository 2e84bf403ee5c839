#pragma once

#include <functional>
#include <optional>

#include "simplexmeasure/geometry.hpp"
#include "simplexmeasure/measures.hpp"
#include "simplexmeasure/quadrature.hpp"

// Pushforward of orthant measures through the homogeneous transform. The
// transformed density with respect to the manifold measure on the simplex,
// read through the chart, is
//
//   g(x) = (1/sqrt(n+1)) * integral_R e^{(n+1)t} f(e^t * xt) dt
//        = (1/sqrt(n+1)) * integral_0^inf u^n f(u * xt) du,    xt = chart_embed(x)
//
// evaluated either by adaptive quadrature along the fiber or by the family's
// closed form.

namespace simplexmeasure {

enum class Provenance { closed_form, numeric_fiber };

// Density of a transformed measure with respect to the manifold measure,
// or an atom descriptor for Dirac sources. Immutable and safe to share.
class TransformedDensity {
 public:
  Dim dim() const { return n_; }
  Provenance provenance() const { return provenance_; }
  const DensityFamily& source() const { return source_; }

  bool is_atom() const { return atom_.has_value(); }
  const SimplexPoint& atom_location() const;
  double atom_mass() const;

  // Density value with respect to the manifold measure at chart point x.
  double operator()(const ChartPoint& x) const;

 private:
  friend TransformedDensity closed_form(const DensityFamily& f);
  friend TransformedDensity fiber_transform(const DensityFamily& f, const QuadratureSpec& q);
  TransformedDensity(Dim n, Provenance p, DensityFamily source)
      : n_(n), provenance_(p), source_(std::move(source)) {}

  Dim n_;
  Provenance provenance_;
  DensityFamily source_;
  std::function<double(const ChartPoint&)> evaluator_;
  std::optional<SimplexPoint> atom_;
};

// Fiber integral density of the transformed measure at an interior chart
// point. DiracAt has no density; points outside the open chart simplex are
// rejected.
double fiber_density(const DensityFamily& f, const ChartPoint& x, const QuadratureSpec& q = {});

// Closed-form transformed density (an atom for DiracAt sources).
TransformedDensity closed_form(const DensityFamily& f);

// Transformed density evaluated through the fiber integral on every call.
TransformedDensity fiber_transform(const DensityFamily& f, const QuadratureSpec& q = {});

// The four scalar statistics of the log-normal closed form at a strictly
// interior simplex point:
//   fiber_variance  (1' Sigma^{-1} 1)^{-1}
//   norm_factor     sqrt(|det Sigma|) (2 pi)^{(n+1)/2} prod(b_i)
//   linear_term     1' Sigma^{-1} (log b - mu)
//   quadratic_term  (log b - mu)' Sigma^{-1} (log b - mu)
struct LogNormalChartStats {
  double fiber_variance = 0.0;
  double norm_factor = 0.0;
  double linear_term = 0.0;
  double quadratic_term = 0.0;
};
LogNormalChartStats lognormal_chart_stats(std::span<const double> mu, const CovMatrix& sigma,
                                          const SimplexPoint& b);

// Density with respect to Lebesgue measure on the chart simplex:
// sqrt(n+1) times the manifold density.
double lebesgue_chart_density(const TransformedDensity& td, const ChartPoint& x);

}  // namespace simplexmeasure
