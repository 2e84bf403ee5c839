#pragma once

#include <span>
#include <vector>

#include "simplexmeasure/errors.hpp"

// Charts and trivialization of the homogeneous transform y -> y / sum(y),
// which maps the open half-space {sum(y) > 0} of R^{n+1} onto the affine
// hyperplane {sum(b) = 1}. The transform factors through the product
// R^n x R via (x, t) -> e^t * (x_1, ..., x_n, 1 - sum(x)).

namespace simplexmeasure {

inline constexpr double kPointTol = 1e-12;      // point equality, max-abs
inline constexpr double kSimplexSumTol = 1e-9;  // accepted drift of sum(b) from 1
inline constexpr double kMaxLogScale = 700.0;   // |exponent| beyond which exp overflows

// Simplex dimension n >= 1; the ambient coordinate space is R^{n+1}.
class Dim {
 public:
  explicit Dim(int n) : n_(n) {
    if (n < 1) throw DomainError("Dim: simplex dimension must be >= 1");
  }
  int value() const { return n_; }
  int ambient() const { return n_ + 1; }
  friend bool operator==(Dim a, Dim b) { return a.n_ == b.n_; }

 private:
  int n_;
};

// A point of the open half-space {sum(y) > 0} in R^{n+1}. Coordinates may be
// negative as long as the sum stays strictly positive.
class UpperPoint {
 public:
  explicit UpperPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return y_; }
  double sum() const;
  Dim dim() const { return Dim(static_cast<int>(y_.size()) - 1); }

 private:
  std::vector<double> y_;
};

// A point of the open positive orthant (every coordinate > 0).
class OrthantPoint {
 public:
  explicit OrthantPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return y_; }
  UpperPoint as_upper() const { return UpperPoint(y_); }
  Dim dim() const { return Dim(static_cast<int>(y_.size()) - 1); }

 private:
  std::vector<double> y_;
};

// Barycentric coordinates on the hyperplane {sum = 1}; coordinates may leave
// [0,1] (the point is then outside the closed probability simplex).
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return b_; }
  Dim dim() const { return Dim(static_cast<int>(b_.size()) - 1); }

 private:
  std::vector<double> b_;
};

// Chart coordinates in R^n (the first n barycentric coordinates).
class ChartPoint {
 public:
  explicit ChartPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return x_; }
  Dim dim() const { return Dim(static_cast<int>(x_.size())); }

 private:
  std::vector<double> x_;
};

// Chart coordinates plus the log-scale fiber coordinate t.
struct FiberPoint {
  ChartPoint x;
  double t = 0.0;
};

SimplexPoint homogeneous_transform(const UpperPoint& y);
SimplexPoint chart_embed(const ChartPoint& x);
ChartPoint chart_coords(const SimplexPoint& b);
UpperPoint trivialize(const FiberPoint& p);
FiberPoint trivialize_inv(const UpperPoint& y);
ChartPoint project(const FiberPoint& p);

// Determinant of the trivialization Jacobian, e^{(n+1) t}.
double trivialize_jacobian_det(const FiberPoint& p);

// Membership in the open chart simplex {x_i in (0,1), sum(x) < 1} and in the
// open probability simplex {b_i in (0,1)}.
bool interior_chart_point(const ChartPoint& x);
bool interior_simplex_point(const SimplexPoint& b);

// Chart weight of the manifold measure on the simplex: sqrt(n+1).
double chart_weight(Dim n);
// Lebesgue volume of the open chart simplex: 1/n!.
double simplex_volume(Dim n);
// Manifold volume of the open probability simplex: sqrt(n+1)/n!.
double manifold_volume(Dim n);

// Embedded barycentric coordinates of chart coordinates, without the
// SimplexPoint wrapper. Appends 1 - sum(x).
std::vector<double> embed_coords(std::span<const double> x);

}  // namespace simplexmeasure
