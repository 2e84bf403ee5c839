#include "simplexmeasure/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace simplexmeasure {

namespace {

constexpr double kSymmetryTol = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_positive(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!(x > 0.0)) throw DomainError(std::string(what) + ": entries must be > 0");
  }
}

// log(1 + e^w) without overflow.
double softplus(double w) {
  if (w > 36.0) return w;
  if (w < -36.0) return std::exp(w);
  return std::log1p(std::exp(w));
}

}  // namespace

CovMatrix::CovMatrix(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {
  if (sigma_.rows() < 2 || sigma_.rows() != sigma_.cols()) {
    throw DimensionError("CovMatrix: need a square matrix of size >= 2");
  }
  const double asym = (sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymmetryTol)) throw DomainError("CovMatrix: matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma_);
  if (llt.info() != Eigen::Success) {
    throw DomainError("CovMatrix: matrix is not positive definite");
  }
  lower_ = llt.matrixL();
  log_det_ = 2.0 * lower_.diagonal().array().log().sum();
}

CovMatrix CovMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd sigma(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != m) {
      throw DimensionError("CovMatrix: rows must form a square matrix");
    }
    for (Eigen::Index j = 0; j < m; ++j) sigma(i, j) = rows[i][j];
  }
  return CovMatrix(std::move(sigma));
}

Eigen::VectorXd CovMatrix::solve(const Eigen::VectorXd& v) const {
  Eigen::VectorXd w = lower_.triangularView<Eigen::Lower>().solve(v);
  return lower_.transpose().triangularView<Eigen::Upper>().solve(w);
}

double CovMatrix::quad_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return u.dot(solve(v));
}

LogNormal::LogNormal(std::vector<double> mu_in, CovMatrix sigma_in)
    : mu(std::move(mu_in)), sigma(std::move(sigma_in)) {
  if (static_cast<int>(mu.size()) != sigma.ambient()) {
    throw DimensionError("LogNormal: mu and sigma dimensions differ");
  }
}

MultiGamma::MultiGamma(std::vector<double> alpha_in, std::vector<double> beta_in)
    : alpha(std::move(alpha_in)), beta(std::move(beta_in)) {
  if (alpha.size() != beta.size() || alpha.size() < 2) {
    throw DimensionError("MultiGamma: alpha and beta must have equal size >= 2");
  }
  require_positive(alpha, "MultiGamma alpha");
  require_positive(beta, "MultiGamma beta");
}

MultiChi::MultiChi(std::vector<double> k_in) : k(std::move(k_in)) {
  if (k.size() < 2) throw DimensionError("MultiChi: need at least 2 degrees of freedom entries");
  require_positive(k, "MultiChi k");
}

RadialReciprocal::RadialReciprocal(double s_in, Dim n_in)
    : s(s_in), n(n_in), log_normalizer(std::log(radial_reciprocal_normalizer(s_in, n_in))) {}

Dim family_dim(const DensityFamily& f) {
  return std::visit(
      [](const auto& fam) -> Dim {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, LogNormal>) {
          return fam.sigma.dim();
        } else if constexpr (std::is_same_v<T, MultiGamma>) {
          return Dim(static_cast<int>(fam.alpha.size()) - 1);
        } else if constexpr (std::is_same_v<T, MultiChi>) {
          return Dim(static_cast<int>(fam.k.size()) - 1);
        } else if constexpr (std::is_same_v<T, RadialReciprocal>) {
          return fam.n;
        } else {
          return fam.point.dim();
        }
      },
      f);
}

bool is_dirac(const DensityFamily& f) { return std::holds_alternative<DiracAt>(f); }

double log_density_at(const DensityFamily& f, std::span<const double> y) {
  const int ambient = family_dim(f).ambient();
  if (static_cast<int>(y.size()) != ambient) {
    throw DimensionError("log_density_at: point dimension does not match the family");
  }
  for (double v : y) {
    if (!(v > 0.0)) throw DomainError("log_density_at: coordinates must be > 0");
  }

  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, LogNormal>) {
          const auto m = static_cast<Eigen::Index>(y.size());
          Eigen::VectorXd d(m);
          double log_prod = 0.0;
          for (Eigen::Index i = 0; i < m; ++i) {
            const double ly = std::log(y[i]);
            d(i) = ly - fam.mu[i];
            log_prod += ly;
          }
          const double quad = fam.sigma.quad_form(d, d);
          return -0.5 * quad - 0.5 * fam.sigma.log_det() -
                 0.5 * ambient * std::log(2.0 * std::numbers::pi) - log_prod;
        } else if constexpr (std::is_same_v<T, MultiGamma>) {
          double acc = 0.0;
          for (std::size_t i = 0; i < y.size(); ++i) {
            acc += fam.alpha[i] * std::log(fam.beta[i]) - std::lgamma(fam.alpha[i]) +
                   (fam.alpha[i] - 1.0) * std::log(y[i]) - fam.beta[i] * y[i];
          }
          return acc;
        } else if constexpr (std::is_same_v<T, MultiChi>) {
          double acc = 0.0;
          for (std::size_t i = 0; i < y.size(); ++i) {
            acc += -std::lgamma(0.5 * fam.k[i]) + (1.0 - 0.5 * fam.k[i]) * std::numbers::ln2 +
                   (fam.k[i] - 1.0) * std::log(y[i]) - 0.5 * y[i] * y[i];
          }
          return acc;
        } else if constexpr (std::is_same_v<T, RadialReciprocal>) {
          double total = 0.0;
          for (double v : y) total += v;
          const double w = fam.s * ambient * std::log(total);
          return fam.log_normalizer - softplus(w);
        } else {
          throw DomainError("log_density_at: a Dirac measure has no Lebesgue density");
        }
      },
      f);
}

double density_at(const DensityFamily& f, const OrthantPoint& y) {
  return std::exp(log_density_at(f, y.coords()));
}

double radial_reciprocal_normalizer(double s, Dim n) {
  if (!(s > 1.0)) throw DomainError("radial_reciprocal_normalizer: s must be > 1");
  QuadratureSpec spec;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 5e-13;
  spec.max_subdivisions = 600;
  const IntegralResult r =
      integrate_halfline([s](double z) { return 1.0 / (1.0 + std::pow(z, s)); }, spec);
  return factorial(n.ambient()) / r.value;
}

double log_multivariate_beta(std::span<const double> alpha) {
  if (alpha.size() < 2) throw DimensionError("log_multivariate_beta: need at least 2 entries");
  require_positive(alpha, "log_multivariate_beta");
  double acc = 0.0, total = 0.0;
  for (double a : alpha) {
    acc += std::lgamma(a);
    total += a;
  }
  return acc - std::lgamma(total);
}

double dirichlet_chart_density(std::span<const double> alpha, const ChartPoint& x) {
  if (alpha.size() != x.coords().size() + 1) {
    throw DimensionError("dirichlet_chart_density: alpha must have n+1 entries");
  }
  require_positive(alpha, "dirichlet_chart_density alpha");
  const std::vector<double> b = embed_coords(x.coords());
  for (double v : b) {
    if (v < 0.0) throw DomainError("dirichlet_chart_density: point outside the closed simplex");
  }
  // Boundary coordinates: the limit is 0 for alpha > 1, a finite factor for
  // alpha == 1 and +inf for alpha < 1.
  bool to_zero = false, to_inf = false;
  double log_acc = -log_multivariate_beta(alpha);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0.0) {
      if (alpha[i] > 1.0) to_zero = true;
      else if (alpha[i] < 1.0) to_inf = true;
    } else {
      log_acc += (alpha[i] - 1.0) * std::log(b[i]);
    }
  }
  if (to_zero && to_inf) throw DomainError("dirichlet_chart_density: indeterminate boundary limit");
  if (to_zero) return 0.0;
  if (to_inf) return std::numeric_limits<double>::infinity();
  return std::exp(log_acc);
}

double reference_density(ReferenceMeasure m, const UpperPoint& y) {
  switch (m) {
    case ReferenceMeasure::lebesgue_orthant:
      return 1.0;
    case ReferenceMeasure::upper_halfspace:
      return std::pow(y.sum(), -static_cast<double>(y.dim().ambient()));
    case ReferenceMeasure::simplex_manifold:
      throw DomainError(
          "reference_density: the manifold measure is chart-based; use chart_weight");
  }
  throw DomainError("reference_density: unknown reference measure");
}

}  // namespace simplexmeasure
