#include "simplexmeasure/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace simplexmeasure {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1] (positive half).
constexpr std::array<double, 8> kKronrodNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Segment {
  const Integrand1D* f = nullptr;
  double a = 0.0, b = 0.0;
  double value = 0.0, error = 0.0;
};

Segment eval_gk15(const Integrand1D& f, double a, double b, long& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (std::size_t i = 0; i < kKronrodNodes.size(); ++i) {
    const double offset = half * kKronrodNodes[i];
    double fsum;
    if (kKronrodNodes[i] == 0.0) {
      fsum = f(center);
      ++evaluations;
    } else {
      fsum = f(center - offset) + f(center + offset);
      evaluations += 2;
    }
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  Segment s;
  s.f = &f;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  // The raw |K15 - G7| difference; conservative for smooth integrands.
  s.error = std::abs(kronrod - gauss) * std::abs(half);
  return s;
}

IntegralResult adapt(std::vector<Segment> segments, const QuadratureSpec& q, long evaluations) {
  int subdivisions = 0;
  for (;;) {
    double total = 0.0, total_err = 0.0;
    for (const auto& s : segments) {
      total += s.value;
      total_err += s.error;
    }
    if (std::isfinite(total) && std::isfinite(total_err) &&
        total_err <= std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
      return {total, total_err, evaluations};
    }
    if (subdivisions >= q.max_subdivisions) {
      throw QuadratureError("adaptive integration did not converge within max subdivisions");
    }
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const double e = std::isfinite(segments[i].error)
                           ? segments[i].error
                           : std::numeric_limits<double>::infinity();
      if (e > worst_err) {
        worst_err = e;
        worst = i;
      }
    }
    Segment s = segments[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      // Interval no longer splittable in double precision.
      throw QuadratureError("adaptive integration hit floating-point resolution");
    }
    segments[worst] = eval_gk15(*s.f, s.a, mid, evaluations);
    segments.push_back(eval_gk15(*s.f, mid, s.b, evaluations));
    ++subdivisions;
  }
}

}  // namespace

IntegralResult integrate_interval(const Integrand1D& f, double a, double b,
                                  const QuadratureSpec& q) {
  long evaluations = 0;
  std::vector<Segment> segs;
  segs.push_back(eval_gk15(f, a, b, evaluations));
  return adapt(std::move(segs), q, evaluations);
}

IntegralResult integrate_halfline(const Integrand1D& f, const QuadratureSpec& q, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("integrate_halfline: scale must be positive and finite");
  }
  long evaluations = 0;
  std::vector<Segment> segs;

  const Integrand1D head = [&f, scale](double v) { return f(scale * v) * scale; };
  // Tail of the inverse map u = scale/w, du = -scale/w^2 dw. The product is
  // ordered to avoid w^2 underflow for denormal w.
  const Integrand1D inverse_tail = [&f, scale](double w) {
    const double u = scale / w;
    const double fv = f(u);
    if (fv == 0.0) return 0.0;
    return fv * u / w;
  };
  const Integrand1D exp_tail = [&f](double v) {
    const double u = std::exp(v);
    const double fv = f(u);
    if (fv == 0.0) return 0.0;
    return fv * u;
  };

  if (q.tail_map == QuadratureSpec::TailMap::inverse) {
    segs.push_back(eval_gk15(head, 0.0, 1.0, evaluations));
    segs.push_back(eval_gk15(inverse_tail, 0.0, 1.0, evaluations));
    return adapt(std::move(segs), q, evaluations);
  }

  // Exponential tail map: sweep v = log(u) over doubling windows until the
  // window contribution is negligible.
  segs.push_back(eval_gk15(head, 0.0, 1.0, evaluations));
  double lo = std::log(scale);
  double width = 1.0;
  int quiet = 0;
  while (lo < kMaxLogScale && quiet < 3) {
    const double hi = std::min(lo + width, kMaxLogScale);
    Segment s = eval_gk15(exp_tail, lo, hi, evaluations);
    segs.push_back(s);
    if (std::abs(s.value) + s.error <= 0.125 * q.abs_tol) {
      ++quiet;
    } else {
      quiet = 0;
    }
    lo = hi;
    width *= 2.0;
  }
  return adapt(std::move(segs), q, evaluations);
}

IntegralResult integrate_line(const Integrand1D& f, const QuadratureSpec& q) {
  const Integrand1D reflected = [&f](double t) { return f(-t); };
  QuadratureSpec half = q;
  half.abs_tol = 0.5 * q.abs_tol;
  half.max_subdivisions = q.max_subdivisions;
  const IntegralResult pos = integrate_halfline(f, half);
  const IntegralResult neg = integrate_halfline(reflected, half);
  return {pos.value + neg.value, pos.error_estimate + neg.error_estimate,
          pos.evaluations + neg.evaluations};
}

IntegralResult integrate_simplex_grid(const SimplexIntegrand& f, Dim n, const QuadratureSpec& q) {
  if (n.value() > 3) throw DomainError("integrate_simplex_grid: only n <= 3 is supported");
  long inner_evaluations = 0;
  QuadratureSpec inner = q;
  inner.abs_tol = q.abs_tol / 8.0;
  inner.rel_tol = q.rel_tol / 8.0;

  if (n.value() == 1) {
    const Integrand1D g = [&f](double x) {
      const std::array<double, 1> p{x};
      return f(std::span<const double>(p));
    };
    return integrate_interval(g, 0.0, 1.0, q);
  }

  if (n.value() == 2) {
    const Integrand1D outer = [&](double x1) {
      const Integrand1D g = [&f, x1](double x2) {
        const std::array<double, 2> p{x1, x2};
        return f(std::span<const double>(p));
      };
      const IntegralResult r = integrate_interval(g, 0.0, 1.0 - x1, inner);
      inner_evaluations += r.evaluations;
      return r.value;
    };
    IntegralResult r = integrate_interval(outer, 0.0, 1.0, q);
    r.evaluations += inner_evaluations;
    return r;
  }

  QuadratureSpec mid = q;
  mid.abs_tol = q.abs_tol / 4.0;
  mid.rel_tol = q.rel_tol / 4.0;
  const Integrand1D outer = [&](double x1) {
    const Integrand1D middle = [&](double x2) {
      const Integrand1D g = [&f, x1, x2](double x3) {
        const std::array<double, 3> p{x1, x2, x3};
        return f(std::span<const double>(p));
      };
      const IntegralResult r = integrate_interval(g, 0.0, 1.0 - x1 - x2, inner);
      inner_evaluations += r.evaluations;
      return r.value;
    };
    const IntegralResult r = integrate_interval(middle, 0.0, 1.0 - x1, mid);
    inner_evaluations += r.evaluations;
    return r.value;
  };
  IntegralResult r = integrate_interval(outer, 0.0, 1.0, q);
  r.evaluations += inner_evaluations;
  return r;
}

IntegralResult integrate_simplex_mc(const SimplexIntegrand& f, Dim n, long samples,
                                    SeededGenerator& gen) {
  if (samples < 2) throw DomainError("integrate_simplex_mc: need at least 2 samples");
  const int ambient = n.ambient();
  std::vector<double> e(ambient);
  std::vector<double> x(n.value());
  double mean = 0.0, m2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    double s = 0.0;
    for (int j = 0; j < ambient; ++j) {
      e[j] = gen.exponential();
      s += e[j];
    }
    for (int j = 0; j < n.value(); ++j) x[j] = e[j] / s;
    const double v = f(std::span<const double>(x));
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double volume = simplex_volume(n);
  const double variance = m2 / static_cast<double>(samples - 1);
  const double se = std::sqrt(variance / static_cast<double>(samples));
  return {volume * mean, volume * se, samples};
}

}  // namespace simplexmeasure
