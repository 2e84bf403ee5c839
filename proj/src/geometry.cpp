#include "simplexmeasure/geometry.hpp"

#include <cmath>
#include <numeric>

namespace simplexmeasure {

namespace {

double checked_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

void require_ambient(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) throw DimensionError(std::string(what) + ": need at least 2 coordinates");
}

}  // namespace

UpperPoint::UpperPoint(std::vector<double> coords) : y_(std::move(coords)) {
  require_ambient(y_, "UpperPoint");
  if (!(checked_sum(y_) > 0.0)) throw DomainError("UpperPoint: coordinate sum must be > 0");
}

double UpperPoint::sum() const { return checked_sum(y_); }

OrthantPoint::OrthantPoint(std::vector<double> coords) : y_(std::move(coords)) {
  require_ambient(y_, "OrthantPoint");
  for (double v : y_) {
    if (!(v > 0.0)) throw DomainError("OrthantPoint: every coordinate must be > 0");
  }
}

SimplexPoint::SimplexPoint(std::vector<double> coords) : b_(std::move(coords)) {
  require_ambient(b_, "SimplexPoint");
  const double s = checked_sum(b_);
  if (!(std::abs(s - 1.0) <= kSimplexSumTol)) {
    throw DomainError("SimplexPoint: coordinate sum deviates from 1 beyond tolerance");
  }
}

ChartPoint::ChartPoint(std::vector<double> coords) : x_(std::move(coords)) {
  if (x_.empty()) throw DimensionError("ChartPoint: need at least 1 coordinate");
}

SimplexPoint homogeneous_transform(const UpperPoint& y) {
  const double s = y.sum();
  std::vector<double> b(y.coords());
  for (double& v : b) v /= s;
  return SimplexPoint(std::move(b));
}

std::vector<double> embed_coords(std::span<const double> x) {
  std::vector<double> b(x.begin(), x.end());
  double s = 0.0;
  for (double v : x) s += v;
  b.push_back(1.0 - s);
  return b;
}

SimplexPoint chart_embed(const ChartPoint& x) {
  return SimplexPoint(embed_coords(x.coords()));
}

ChartPoint chart_coords(const SimplexPoint& b) {
  const auto& v = b.coords();
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(std::abs(s - 1.0) <= kSimplexSumTol)) {
    throw DomainError("chart_coords: coordinate sum deviates from 1 beyond tolerance");
  }
  return ChartPoint(std::vector<double>(v.begin(), v.end() - 1));
}

UpperPoint trivialize(const FiberPoint& p) {
  if (std::abs(p.t) > kMaxLogScale) throw OverflowError("trivialize: |t| > 700");
  const double scale = std::exp(p.t);
  std::vector<double> y = embed_coords(p.x.coords());
  for (double& v : y) v *= scale;
  return UpperPoint(std::move(y));
}

FiberPoint trivialize_inv(const UpperPoint& y) {
  const double s = y.sum();
  const auto& v = y.coords();
  std::vector<double> x(v.begin(), v.end() - 1);
  for (double& c : x) c /= s;
  return FiberPoint{ChartPoint(std::move(x)), std::log(s)};
}

ChartPoint project(const FiberPoint& p) { return p.x; }

double trivialize_jacobian_det(const FiberPoint& p) {
  const double exponent = static_cast<double>(p.x.dim().ambient()) * p.t;
  if (std::abs(exponent) > kMaxLogScale) {
    throw OverflowError("trivialize_jacobian_det: (n+1)*t exceeds exp range");
  }
  return std::exp(exponent);
}

bool interior_chart_point(const ChartPoint& x) {
  double s = 0.0;
  for (double v : x.coords()) {
    if (!(v > 0.0 && v < 1.0)) return false;
    s += v;
  }
  return s < 1.0;
}

bool interior_simplex_point(const SimplexPoint& b) {
  for (double v : b.coords()) {
    if (!(v > 0.0 && v < 1.0)) return false;
  }
  return true;
}

double chart_weight(Dim n) { return std::sqrt(static_cast<double>(n.ambient())); }

double simplex_volume(Dim n) {
  double f = 1.0;
  for (int k = 2; k <= n.value(); ++k) f *= k;
  return 1.0 / f;
}

double manifold_volume(Dim n) { return chart_weight(n) * simplex_volume(n); }

}  // namespace simplexmeasure
