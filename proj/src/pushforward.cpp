#include "simplexmeasure/pushforward.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace simplexmeasure {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_closure(const std::vector<double>& b, const char* what) {
  for (double v : b) {
    if (v < 0.0) throw DomainError(std::string(what) + ": point outside the closed simplex");
  }
}

// log prod b_i^{e_i} with boundary limits. Returns -inf, +inf or a finite
// value; throws when zeros with opposite exponent signs make the limit
// path-dependent.
double log_power_product(const std::vector<double>& b, const std::vector<double>& exponents,
                         const char* what) {
  bool to_zero = false, to_inf = false;
  double acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0.0) {
      if (exponents[i] > 0.0) to_zero = true;
      else if (exponents[i] < 0.0) to_inf = true;
    } else {
      acc += exponents[i] * std::log(b[i]);
    }
  }
  if (to_zero && to_inf) throw DomainError(std::string(what) + ": indeterminate boundary limit");
  if (to_zero) return -kInf;
  if (to_inf) return kInf;
  return acc;
}

void require_dim(const ChartPoint& x, Dim n, const char* what) {
  if (!(x.dim() == n)) throw DimensionError(std::string(what) + ": chart point dimension mismatch");
}

}  // namespace

const SimplexPoint& TransformedDensity::atom_location() const {
  if (!atom_) throw DomainError("TransformedDensity: not an atom");
  return *atom_;
}

double TransformedDensity::atom_mass() const {
  if (!atom_) throw DomainError("TransformedDensity: not an atom");
  return 1.0;
}

double TransformedDensity::operator()(const ChartPoint& x) const {
  if (atom_) throw DomainError("TransformedDensity: an atom has no density evaluator");
  require_dim(x, n_, "TransformedDensity");
  return evaluator_(x);
}

double fiber_density(const DensityFamily& f, const ChartPoint& x, const QuadratureSpec& q) {
  if (is_dirac(f)) throw DomainError("fiber_density: a Dirac source has no fiber density");
  const Dim n = family_dim(f);
  require_dim(x, n, "fiber_density");
  if (!interior_chart_point(x)) {
    throw DomainError("fiber_density: chart point must lie in the open chart simplex");
  }

  const std::vector<double> bt = embed_coords(x.coords());
  std::vector<double> ybuf(bt.size());
  const double nd = static_cast<double>(n.value());

  const auto log_integrand = [&](double u) -> double {
    for (std::size_t i = 0; i < bt.size(); ++i) ybuf[i] = u * bt[i];
    return nd * std::log(u) + log_density_at(f, ybuf);
  };

  // Coarse mode scan on a log grid, then a short golden-section refinement;
  // the mode supplies the split point and the normalization shift.
  double best_log_u = 0.0;
  double best = -kInf;
  constexpr int kScan = 301;
  for (int i = 0; i < kScan; ++i) {
    const double lu = -9.0 * std::numbers::ln10 +
                      (18.0 * std::numbers::ln10) * static_cast<double>(i) / (kScan - 1);
    const double v = log_integrand(std::exp(lu));
    if (std::isfinite(v) && v > best) {
      best = v;
      best_log_u = lu;
    }
  }
  if (!std::isfinite(best)) return 0.0;

  const double step = 18.0 * std::numbers::ln10 / (kScan - 1);
  double lo = best_log_u - step, hi = best_log_u + step;
  constexpr double kGolden = 0.6180339887498949;
  double l1 = hi - kGolden * (hi - lo), l2 = lo + kGolden * (hi - lo);
  double f1 = log_integrand(std::exp(l1)), f2 = log_integrand(std::exp(l2));
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = l1;
      l1 = l2;
      f1 = f2;
      l2 = lo + kGolden * (hi - lo);
      f2 = log_integrand(std::exp(l2));
    } else {
      hi = l2;
      l2 = l1;
      f2 = f1;
      l1 = hi - kGolden * (hi - lo);
      f1 = log_integrand(std::exp(l1));
    }
  }
  const double mode = std::exp(0.5 * (lo + hi));
  const double shift = std::max(best, std::max(f1, f2));

  const auto shifted = [&](double u) -> double {
    if (!(u > 0.0) || !std::isfinite(u)) return 0.0;
    const double v = log_integrand(u) - shift;
    // non-finite log values only arise at the decaying far ends of the ray
    if (!std::isfinite(v) || v <= -745.0) return 0.0;
    return std::exp(v);
  };

  const IntegralResult head = integrate_interval(shifted, 0.0, mode, q);
  const IntegralResult tail =
      integrate_halfline([&](double w) { return shifted(mode + w); }, q, mode);
  return std::exp(shift) * (head.value + tail.value) / chart_weight(n);
}

LogNormalChartStats lognormal_chart_stats(std::span<const double> mu, const CovMatrix& sigma,
                                          const SimplexPoint& b) {
  const auto m = static_cast<Eigen::Index>(b.coords().size());
  if (static_cast<Eigen::Index>(mu.size()) != m || sigma.ambient() != m) {
    throw DimensionError("lognormal_chart_stats: dimension mismatch");
  }
  Eigen::VectorXd d(m);
  double prod = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = b.coords()[i];
    if (!(v > 0.0)) throw DomainError("lognormal_chart_stats: point must be strictly interior");
    d(i) = std::log(v) - mu[i];
    prod *= v;
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  LogNormalChartStats stats;
  stats.fiber_variance = 1.0 / sigma.quad_form(ones, ones);
  stats.norm_factor = std::exp(0.5 * sigma.log_det()) *
                      std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(m)) * prod;
  stats.linear_term = sigma.quad_form(ones, d);
  stats.quadratic_term = sigma.quad_form(d, d);
  return stats;
}

TransformedDensity closed_form(const DensityFamily& f) {
  const Dim n = family_dim(f);
  TransformedDensity td(n, Provenance::closed_form, f);

  if (const auto* dirac = std::get_if<DiracAt>(&f)) {
    td.atom_ = homogeneous_transform(dirac->point);
    return td;
  }

  if (const auto* radial = std::get_if<RadialReciprocal>(&f)) {
    // All radial reciprocal sources collapse to the uniform probability on
    // the simplex, with constant manifold density n!/sqrt(n+1).
    const double c = factorial(n.value()) / chart_weight(n);
    (void)radial;
    td.evaluator_ = [c, n](const ChartPoint& x) {
      require_closure(embed_coords(x.coords()), "radial closed form");
      return c;
    };
    return td;
  }

  if (const auto* gamma = std::get_if<MultiGamma>(&f)) {
    const std::vector<double> alpha = gamma->alpha;
    const std::vector<double> beta = gamma->beta;
    const double log_beta_term = [&] {
      double acc = 0.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) acc += alpha[i] * std::log(beta[i]);
      return acc;
    }();
    const double alpha_sum = [&] {
      double acc = 0.0;
      for (double a : alpha) acc += a;
      return acc;
    }();
    const double log_const =
        log_beta_term - log_multivariate_beta(alpha) - std::log(chart_weight(n));
    std::vector<double> exponents(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) exponents[i] = alpha[i] - 1.0;
    td.evaluator_ = [log_const, alpha_sum, beta, exponents](const ChartPoint& x) {
      const std::vector<double> b = embed_coords(x.coords());
      require_closure(b, "gamma closed form");
      const double lp = log_power_product(b, exponents, "gamma closed form");
      if (lp == -kInf) return 0.0;
      if (lp == kInf) return kInf;
      double denom = 0.0;
      for (std::size_t i = 0; i < b.size(); ++i) denom += beta[i] * b[i];
      return std::exp(log_const + lp - alpha_sum * std::log(denom));
    };
    return td;
  }

  if (const auto* chi = std::get_if<MultiChi>(&f)) {
    const std::vector<double> k = chi->k;
    double k_sum = 0.0, lg = 0.0;
    for (double v : k) {
      k_sum += v;
      lg += std::lgamma(0.5 * v);
    }
    // Corrected closed form: the Gaussian kernel along the fiber integrates
    // against u^{K-1}, leaving Gamma(K/2) 2^{K/2-1} (sum b_i^2)^{-K/2} with
    // K = sum k_i; combined with the per-coordinate 2^{1-k_i/2} factors the
    // power of two is exactly 2^n.
    const double log_const = std::lgamma(0.5 * k_sum) - lg +
                             static_cast<double>(n.value()) * std::numbers::ln2 -
                             std::log(chart_weight(n));
    std::vector<double> exponents(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) exponents[i] = k[i] - 1.0;
    td.evaluator_ = [log_const, k_sum, exponents](const ChartPoint& x) {
      const std::vector<double> b = embed_coords(x.coords());
      require_closure(b, "chi closed form");
      const double lp = log_power_product(b, exponents, "chi closed form");
      if (lp == -kInf) return 0.0;
      if (lp == kInf) return kInf;
      double sumsq = 0.0;
      for (double v : b) sumsq += v * v;
      return std::exp(log_const + lp - 0.5 * k_sum * std::log(sumsq));
    };
    return td;
  }

  const auto& lognormal = std::get<LogNormal>(f);
  const CovMatrix sigma = lognormal.sigma;
  const std::vector<double> mu = lognormal.mu;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(sigma.ambient());
  const double fiber_variance = 1.0 / sigma.quad_form(ones, ones);
  const double log_norm_const = 0.5 * sigma.log_det() +
                                0.5 * sigma.ambient() * std::log(2.0 * std::numbers::pi);
  td.evaluator_ = [sigma, mu, fiber_variance, log_norm_const, n](const ChartPoint& x) {
    const std::vector<double> b = embed_coords(x.coords());
    require_closure(b, "log-normal closed form");
    const auto m = static_cast<Eigen::Index>(b.size());
    Eigen::VectorXd d(m);
    double log_prod = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (b[i] == 0.0) return 0.0;  // the Gaussian factor dominates the 1/prod
      const double lb = std::log(b[i]);
      d(i) = lb - mu[i];
      log_prod += lb;
    }
    const Eigen::VectorXd w = sigma.solve(d);
    const double linear = w.sum();
    const double quad = d.dot(w);
    const double log_g = 0.5 * std::log(2.0 * std::numbers::pi * fiber_variance) -
                         (log_norm_const + log_prod) - std::log(chart_weight(n)) -
                         0.5 * (quad - fiber_variance * linear * linear);
    return std::exp(log_g);
  };
  return td;
}

TransformedDensity fiber_transform(const DensityFamily& f, const QuadratureSpec& q) {
  const Dim n = family_dim(f);
  TransformedDensity td(n, Provenance::numeric_fiber, f);
  if (const auto* dirac = std::get_if<DiracAt>(&f)) {
    td.atom_ = homogeneous_transform(dirac->point);
    return td;
  }
  td.evaluator_ = [f, q](const ChartPoint& x) { return fiber_density(f, x, q); };
  return td;
}

double lebesgue_chart_density(const TransformedDensity& td, const ChartPoint& x) {
  if (td.is_atom()) throw DomainError("lebesgue_chart_density: atom densities are undefined");
  return chart_weight(td.dim()) * td(x);
}

}  // namespace simplexmeasure
