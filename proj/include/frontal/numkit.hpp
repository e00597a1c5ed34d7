#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function left its domain (log of a non-positive number, division by zero, ...)
/// or produced a non-finite value.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method gave up. Carries its best estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Truncated Taylor polynomial in at most two variables, total degree <= 3.
///
/// Coefficients are stored per monomial du^i dv^j; `partial(i, j)` converts
/// to the mixed partial derivative. Arithmetic truncates at the smaller of
/// the operand orders, so an order-0 Taylor behaves like a plain double.
class Taylor {
 public:
  static constexpr int kMaxOrder = 3;
  static constexpr int kSize = 10;

  Taylor() = default;
  explicit Taylor(double value, int order = kMaxOrder);

  /// The coordinate function `which` (0 = u, 1 = v) expanded at `value`.
  static Taylor variable(double value, int which, int order = kMaxOrder);

  static constexpr int index(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int i, int j) const { return c_[index(i, j)]; }
  double& coeff(int i, int j) { return c_[index(i, j)]; }
  double partial(int i, int j = 0) const;
  const std::array<double, kSize>& coeffs() const { return c_; }

  Taylor truncated(int order) const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(const Taylor& o);
  Taylor& operator/=(const Taylor& o);
  Taylor& operator+=(double s);
  Taylor& operator-=(double s);
  Taylor& operator*=(double s);
  Taylor& operator/=(double s);

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(Taylor a, const Taylor& b) { return a *= b; }
  friend Taylor operator/(Taylor a, const Taylor& b) { return a /= b; }
  friend Taylor operator+(Taylor a, double s) { return a += s; }
  friend Taylor operator-(Taylor a, double s) { return a -= s; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator/(Taylor a, double s) { return a /= s; }
  friend Taylor operator+(double s, Taylor a) { return a += s; }
  friend Taylor operator-(double s, const Taylor& a) { return Taylor(s, a.order()) - a; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }
  friend Taylor operator/(double s, const Taylor& a) { return Taylor(s, a.order()) / a; }
  Taylor operator-() const;

  /// g(x) for a univariate g given its derivatives g, g', g'', g''' at x.value().
  friend Taylor compose(const Taylor& x, const std::array<double, 4>& derivs);

 private:
  std::array<double, kSize> c_{};
  int order_ = kMaxOrder;
};

Taylor sin(const Taylor& x);
Taylor cos(const Taylor& x);
Taylor tan(const Taylor& x);
Taylor exp(const Taylor& x);
Taylor log(const Taylor& x);
Taylor sqrt(const Taylor& x);
Taylor atan(const Taylor& x);
Taylor pow(const Taylor& x, double p);
Taylor pow(const Taylor& x, const Taylor& p);

/// Value and partial derivatives of a vector-valued map at one point.
struct Jet {
  int nvars = 1;
  int order = 0;
  std::vector<Taylor> comps;

  std::size_t size() const { return comps.size(); }
  double value(std::size_t c) const { return comps[c].value(); }
  /// d^{i+j} / du^i dv^j of component c.
  double partial(std::size_t c, int i, int j = 0) const { return comps[c].partial(i, j); }
  std::vector<double> values() const;
};

/// An evaluable map R^in -> R^out. Carries an exact jet routine when one is
/// available (expression maps); otherwise jets come from finite differences.
class Map {
 public:
  using EvalFn = std::function<void(std::span<const double>, std::span<double>)>;
  using JetFn = std::function<Jet(std::span<const double>, int)>;

  Map() = default;
  Map(int in_dim, int out_dim, EvalFn eval, JetFn jet = {});

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool has_exact_jets() const { return static_cast<bool>(jet_); }
  explicit operator bool() const { return static_cast<bool>(eval_); }

  void eval(std::span<const double> x, std::span<double> out) const;
  std::vector<double> operator()(std::span<const double> x) const;
  std::vector<double> operator()(std::initializer_list<double> x) const;
  Jet jet(std::span<const double> x, int order) const;

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  EvalFn eval_;
  JetFn jet_;
};

/// Value and derivatives up to `order` (<= 3): exact for maps with a jet
/// routine, central differences with one Richardson level otherwise.
Jet eval_jet(const Map& map, std::span<const double> point, int order);

Jet finite_difference_jet(const Map::EvalFn& eval, int in_dim, int out_dim,
                          std::span<const double> point, int order);

/// Adaptive Gauss-Kronrod (7/15) quadrature to absolute error `tol`.
double integrate(const std::function<double(double)>& f, Interval range, double tol);

/// x in `bracket` with |g(x) - target| <= tol for strictly monotone g.
double invert_monotone(const std::function<double(double)>& g, double target,
                       Interval bracket, double tol);

/// Piecewise cubic Hermite interpolant on a uniform grid, with node slopes
/// from fourth-order differences.
class UniformHermite {
 public:
  UniformHermite() = default;
  UniformHermite(Interval range, std::vector<double> samples);

  double operator()(double x) const { return eval(x, 0); }
  double derivative(double x) const { return eval(x, 1); }
  double eval(double x, int deriv) const;

  Interval range() const { return range_; }
  const std::vector<double>& samples() const { return y_; }
  double node(std::size_t i) const;

 private:
  Interval range_;
  std::vector<double> y_;
  std::vector<double> slope_;
  double h_ = 1.0;
};

/// A real function of one variable with its first two derivatives.
struct Profile {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> ddf;

  double operator()(double x) const { return f(x); }
  double derivative(double x) const { return df(x); }
  double second_derivative(double x) const;

  static Profile constant(double c);
  static Profile sampled(UniformHermite spline);
};

/// Chebyshev series on an interval, fitted at Chebyshev-Lobatto nodes.
class Chebyshev {
 public:
  Chebyshev() = default;
  Chebyshev(Interval range, std::vector<double> coeffs);

  /// Interpolant of f at n + 1 Lobatto nodes.
  static Chebyshev fit(const std::function<double(double)>& f, Interval range, int n);
  /// Lobatto nodes for `fit` with degree n, in increasing order.
  static std::vector<double> nodes(Interval range, int n);
  /// Interpolant of the given node values (as ordered by `nodes`).
  static Chebyshev from_values(Interval range, const std::vector<double>& values);

  double operator()(double x) const;
  Chebyshev derivative() const;
  /// Antiderivative vanishing at x0.
  Chebyshev integral(double x0) const;

  Interval range() const { return range_; }
  const std::vector<double>& coeffs() const { return c_; }

 private:
  Interval range_;
  std::vector<double> c_;
};

/// Evenly spaced points lo..hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

using ResidualFn = std::function<void(std::span<const double>, std::span<double>)>;

struct LeastSquares {
  std::vector<double> x;
  double cost = 0.0;  // 0.5 |r|^2
  int iterations = 0;
};

/// Levenberg-Marquardt on m residuals with a central-difference Jacobian;
/// iterates are clamped to the box.
LeastSquares least_squares(const ResidualFn& r, int m, std::vector<double> x0, const std::vector<Interval>& box,
                           int max_iter = 100);

}  // namespace frontal
