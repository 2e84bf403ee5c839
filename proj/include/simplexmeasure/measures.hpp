#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "simplexmeasure/errors.hpp"
#include "simplexmeasure/geometry.hpp"
#include "simplexmeasure/quadrature.hpp"

// Source measures on the positive orthant of R^{n+1}, the reference measures
// they are compared against, and the special functions they need. All density
// arithmetic is done in log space; exponentiation happens at the API boundary.

namespace simplexmeasure {

// Symmetric positive definite covariance matrix with its Cholesky
// factorization cached at construction. Immutable afterwards.
class CovMatrix {
 public:
  explicit CovMatrix(Eigen::MatrixXd sigma);
  static CovMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int ambient() const { return static_cast<int>(sigma_.rows()); }
  Dim dim() const { return Dim(ambient() - 1); }
  const Eigen::MatrixXd& matrix() const { return sigma_; }
  const Eigen::MatrixXd& cholesky_lower() const { return lower_; }
  double log_det() const { return log_det_; }
  // Sigma^{-1} v via the cached factorization.
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
  // u' Sigma^{-1} v.
  double quad_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

 private:
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd lower_;
  double log_det_ = 0.0;
};

struct LogNormal {
  LogNormal(std::vector<double> mu_in, CovMatrix sigma_in);
  std::vector<double> mu;
  CovMatrix sigma;
};

struct MultiGamma {
  MultiGamma(std::vector<double> alpha_in, std::vector<double> beta_in);
  std::vector<double> alpha;
  std::vector<double> beta;
};

struct MultiChi {
  explicit MultiChi(std::vector<double> k_in);
  std::vector<double> k;
};

// Radial density kappa_s / (1 + (sum y)^{s(n+1)}) with respect to Lebesgue
// measure on the orthant; normalizes to a probability for every s > 1.
struct RadialReciprocal {
  RadialReciprocal(double s_in, Dim n_in);
  double s;
  Dim n;
  double log_normalizer;  // log kappa_s, fixed at construction
};

struct DiracAt {
  explicit DiracAt(UpperPoint point_in) : point(std::move(point_in)) {}
  UpperPoint point;
};

using DensityFamily = std::variant<LogNormal, MultiGamma, MultiChi, RadialReciprocal, DiracAt>;

Dim family_dim(const DensityFamily& f);
bool is_dirac(const DensityFamily& f);

// Lebesgue density on the orthant. DiracAt has none and raises DomainError.
double density_at(const DensityFamily& f, const OrthantPoint& y);
// Log-space worker behind density_at; coordinates must be strictly positive.
double log_density_at(const DensityFamily& f, std::span<const double> y);

// Normalizer kappa_s = (n+1)! / integral_0^inf dz/(1+z^s), by quadrature.
double radial_reciprocal_normalizer(double s, Dim n);

// log B(alpha) = sum lgamma(alpha_i) - lgamma(sum alpha_i).
double log_multivariate_beta(std::span<const double> alpha);

// Dirichlet density with respect to Lebesgue measure on the chart simplex,
// with the standard alpha_i - 1 exponent on every coordinate.
double dirichlet_chart_density(std::span<const double> alpha, const ChartPoint& x);

enum class ReferenceMeasure {
  lebesgue_orthant,   // Lebesgue measure restricted to the orthant
  upper_halfspace,    // (sum y)^{-(n+1)} times Lebesgue
  simplex_manifold,   // manifold measure on the simplex; chart-based
};

// Density of the reference measure with respect to Lebesgue measure at y.
// simplex_manifold is chart-based and rejects this call (use chart_weight).
double reference_density(ReferenceMeasure m, const UpperPoint& y);

}  // namespace simplexmeasure
