#include "frontal/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <map>
#include <memory>
#include <utility>

#include <Eigen/Dense>

namespace frontal {

namespace {

constexpr int count_upto(int order) { return (order + 1) * (order + 2) / 2; }

struct Monomial {
  int i;
  int j;
};

constexpr std::array<Monomial, Taylor::kSize> kMonomials = {{
    {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3},
}};

constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0};

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite value");
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) throw PreconditionError("interval with lo > hi");
}

// ---------------------------------------------------------------------------
// Taylor

Taylor::Taylor(double value, int order) : order_(std::clamp(order, 0, kMaxOrder)) {
  c_[0] = value;
}

Taylor Taylor::variable(double value, int which, int order) {
  Taylor t(value, order);
  if (t.order_ >= 1) t.c_[which == 0 ? 1 : 2] = 1.0;
  return t;
}

double Taylor::partial(int i, int j) const {
  if (i + j > order_) return 0.0;
  return c_[index(i, j)] * kFactorial[i] * kFactorial[j];
}

Taylor Taylor::truncated(int order) const {
  Taylor t = *this;
  t.order_ = std::clamp(std::min(order, order_), 0, kMaxOrder);
  for (int k = count_upto(t.order_); k < kSize; ++k) t.c_[k] = 0.0;
  return t;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  order_ = std::min(order_, o.order_);
  const int n = count_upto(order_);
  for (int k = 0; k < n; ++k) c_[k] += o.c_[k];
  for (int k = n; k < kSize; ++k) c_[k] = 0.0;
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  order_ = std::min(order_, o.order_);
  const int n = count_upto(order_);
  for (int k = 0; k < n; ++k) c_[k] -= o.c_[k];
  for (int k = n; k < kSize; ++k) c_[k] = 0.0;
  return *this;
}

Taylor& Taylor::operator*=(const Taylor& o) {
  const int order = std::min(order_, o.order_);
  std::array<double, kSize> r{};
  const int n = count_upto(order);
  for (int a = 0; a < n; ++a) {
    if (c_[a] == 0.0) continue;
    const auto [ia, ja] = kMonomials[a];
    for (int b = 0; b < n; ++b) {
      const auto [ib, jb] = kMonomials[b];
      if (ia + ja + ib + jb > order) continue;
      r[index(ia + ib, ja + jb)] += c_[a] * o.c_[b];
    }
  }
  c_ = r;
  order_ = order;
  return *this;
}

Taylor& Taylor::operator/=(const Taylor& o) {
  const double x0 = o.value();
  if (x0 == 0.0) throw DomainError("division by zero");
  const double r = 1.0 / x0;
  return *this *= compose(o, {r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r});
}

Taylor& Taylor::operator+=(double s) {
  c_[0] += s;
  return *this;
}
Taylor& Taylor::operator-=(double s) {
  c_[0] -= s;
  return *this;
}
Taylor& Taylor::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}
Taylor& Taylor::operator/=(double s) {
  if (s == 0.0) throw DomainError("division by zero");
  for (auto& c : c_) c /= s;
  return *this;
}

Taylor Taylor::operator-() const {
  Taylor t = *this;
  for (auto& c : t.c_) c = -c;
  return t;
}

Taylor compose(const Taylor& x, const std::array<double, 4>& d) {
  Taylor r(d[0], x.order());
  if (x.order() == 0) return r;
  Taylor h = x;
  h.c_[0] = 0.0;
  Taylor hk = h;
  for (int k = 1; k <= x.order(); ++k) {
    r += hk * (d[k] / kFactorial[k]);
    if (k < x.order()) hk *= h;
  }
  return r;
}

Taylor sin(const Taylor& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return compose(x, {s, c, -s, -c});
}

Taylor cos(const Taylor& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return compose(x, {c, -s, -c, s});
}

Taylor tan(const Taylor& x) {
  if (std::cos(x.value()) == 0.0) throw DomainError("tan at a pole");
  const double t = std::tan(x.value());
  const double s2 = 1.0 + t * t;
  return compose(x, {t, s2, 2.0 * t * s2, (2.0 + 6.0 * t * t) * s2});
}

Taylor exp(const Taylor& x) {
  const double e = std::exp(x.value());
  return compose(x, {e, e, e, e});
}

Taylor log(const Taylor& x) {
  const double x0 = x.value();
  if (!(x0 > 0.0)) throw DomainError("log of a non-positive number");
  const double r = 1.0 / x0;
  return compose(x, {std::log(x0), r, -r * r, 2.0 * r * r * r});
}

namespace {

bool has_nonconstant_part(const Taylor& x) {
  const auto& c = x.coeffs();
  return std::any_of(c.begin() + 1, c.end(), [](double v) { return v != 0.0; });
}

}  // namespace

Taylor sqrt(const Taylor& x) {
  const double x0 = x.value();
  if (x0 < 0.0) throw DomainError("sqrt of a negative number");
  if (x0 == 0.0) {
    if (x.order() > 0 && has_nonconstant_part(x))
      throw DomainError("sqrt is not differentiable at 0");
    return Taylor(0.0, x.order());
  }
  const double s = std::sqrt(x0);
  return compose(x, {s, 0.5 / s, -0.25 / (s * x0), 0.375 / (s * x0 * x0)});
}

Taylor atan(const Taylor& x) {
  const double x0 = x.value();
  const double q = 1.0 + x0 * x0;
  return compose(x, {std::atan(x0), 1.0 / q, -2.0 * x0 / (q * q), (6.0 * x0 * x0 - 2.0) / (q * q * q)});
}

Taylor pow(const Taylor& x, double p) {
  const double x0 = x.value();
  if (p == std::floor(p) && std::fabs(p) <= 64.0) {
    auto n = static_cast<long>(std::fabs(p));
    Taylor result(1.0, x.order());
    Taylor base = x;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    if (p < 0.0) return 1.0 / result;
    return result;
  }
  if (x0 < 0.0) throw DomainError("non-integer power of a negative number");
  if (x0 == 0.0) {
    if (p < 0.0) throw DomainError("negative power of zero");
    if (x.order() > 0 && has_nonconstant_part(x) && p < Taylor::kMaxOrder)
      throw DomainError("power is not differentiable at 0");
    return Taylor(0.0, x.order());
  }
  const double v = std::pow(x0, p);
  return compose(x, {v, p * v / x0, p * (p - 1.0) * v / (x0 * x0),
                     p * (p - 1.0) * (p - 2.0) * v / (x0 * x0 * x0)});
}

Taylor pow(const Taylor& x, const Taylor& p) {
  if (!has_nonconstant_part(p) || p.order() == 0) return pow(x, p.value());
  return exp(p * log(x));
}

// ---------------------------------------------------------------------------
// Jet / Map

std::vector<double> Jet::values() const {
  std::vector<double> v(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) v[c] = comps[c].value();
  return v;
}

Map::Map(int in_dim, int out_dim, EvalFn eval, JetFn jet)
    : in_dim_(in_dim), out_dim_(out_dim), eval_(std::move(eval)), jet_(std::move(jet)) {
  if (in_dim_ < 1 || out_dim_ < 1) throw PreconditionError("map dimensions must be positive");
}

void Map::eval(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != in_dim_) throw PreconditionError("map input has wrong arity");
  eval_(x, out);
}

std::vector<double> Map::operator()(std::span<const double> x) const {
  std::vector<double> out(out_dim_);
  eval(x, out);
  return out;
}

std::vector<double> Map::operator()(std::initializer_list<double> x) const {
  return (*this)(std::span<const double>(x.begin(), x.size()));
}

Jet Map::jet(std::span<const double> x, int order) const {
  if (static_cast<int>(x.size()) != in_dim_) throw PreconditionError("map input has wrong arity");
  if (jet_) return jet_(x, order);
  return finite_difference_jet(eval_, in_dim_, out_dim_, x, order);
}

Jet eval_jet(const Map& map, std::span<const double> point, int order) {
  if (order < 0 || order > Taylor::kMaxOrder) throw PreconditionError("jet order must be in 0..3");
  Jet j = map.jet(point, order);
  for (const auto& c : j.comps)
    for (double v : c.coeffs()) require_finite(v, "eval_jet");
  return j;
}

namespace {

// Central stencils for d^m/dx^m, as (offset, weight) pairs, unscaled by h^m.
const std::vector<std::pair<int, double>>& stencil(int m) {
  static const std::vector<std::pair<int, double>> s[] = {
      {{0, 1.0}},
      {{-1, -0.5}, {1, 0.5}},
      {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
      {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
  };
  return s[m];
}

}  // namespace

Jet finite_difference_jet(const Map::EvalFn& eval, int in_dim, int out_dim,
                          std::span<const double> point, int order) {
  if (in_dim < 1 || in_dim > 2) throw PreconditionError("finite-difference jets support 1 or 2 variables");
  if (order < 0 || order > Taylor::kMaxOrder) throw PreconditionError("jet order must be in 0..3");
  constexpr double eps = std::numeric_limits<double>::epsilon();

  Jet jet;
  jet.nvars = in_dim;
  jet.order = order;
  jet.comps.assign(out_dim, Taylor(0.0, order));

  std::vector<double> base(out_dim);
  eval(point, base);
  for (int c = 0; c < out_dim; ++c) {
    require_finite(base[c], "finite_difference_jet");
    jet.comps[c].coeff(0, 0) = base[c];
  }

  std::array<double, 2> scale{1.0, 1.0};
  for (int k = 0; k < in_dim; ++k) scale[k] = std::max(1.0, std::fabs(point[k]));

  for (int d = 1; d <= order; ++d) {
    // First derivatives use cbrt(eps); higher orders balance h^4 truncation
    // (after Richardson) against eps / h^d roundoff.
    const double h0 = d == 1 ? std::cbrt(eps) : std::pow(eps, 1.0 / (d + 4));
    std::map<std::pair<int, int>, std::vector<double>> cache[2];
    auto value_at = [&](int level, int ku, int kv) -> const std::vector<double>& {
      auto& slot = cache[level][{ku, kv}];
      if (slot.empty()) {
        const double h = level == 0 ? h0 : 0.5 * h0;
        std::array<double, 2> x{point[0], in_dim > 1 ? point[1] : 0.0};
        x[0] += ku * h * scale[0];
        if (in_dim > 1) x[1] += kv * h * scale[1];
        slot.resize(out_dim);
        eval(std::span<const double>(x.data(), in_dim), slot);
        for (double v : slot) require_finite(v, "finite_difference_jet");
      }
      return slot;
    };
    for (int i = d; i >= 0; --i) {
      const int j = d - i;
      if (j > 0 && in_dim < 2) continue;
      std::array<std::vector<double>, 2> est;
      for (int level = 0; level < 2; ++level) {
        const double h = level == 0 ? h0 : 0.5 * h0;
        est[level].assign(out_dim, 0.0);
        for (const auto& [ou, wu] : stencil(i))
          for (const auto& [ov, wv] : stencil(j)) {
            const auto& f = value_at(level, ou, ov);
            for (int c = 0; c < out_dim; ++c) est[level][c] += wu * wv * f[c];
          }
        const double denom = std::pow(h * scale[0], i) * std::pow(h * scale[1], j);
        for (int c = 0; c < out_dim; ++c) est[level][c] /= denom;
      }
      for (int c = 0; c < out_dim; ++c) {
        const double richardson = (4.0 * est[1][c] - est[0][c]) / 3.0;
        jet.comps[c].coeff(i, j) = richardson / (kFactorial[i] * kFactorial[j]);
      }
    }
  }
  return jet;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk15 {
  double value;
  double error;
};

Gk15 gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int k = 0; k < 7; ++k) {
    const double dx = h * kXgk[k];
    const double pair = f(c - dx) + f(c + dx);
    kronrod += kWgk[k] * pair;
    if (k % 2 == 1) gauss += kWg[k / 2] * pair;
  }
  kronrod *= h;
  gauss *= h;
  if (!std::isfinite(kronrod)) throw DomainError("integrand is not finite on the range");
  return {kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, Interval range, double tol) {
  if (range.length() == 0.0) return 0.0;
  constexpr int kMaxDepth = 48;
  struct Segment {
    double a, b;
    int depth;
  };
  std::vector<Segment> stack{{range.lo, range.hi, 0}};
  double sum = 0.0, unresolved = 0.0;
  bool converged = true;
  while (!stack.empty()) {
    const Segment s = stack.back();
    stack.pop_back();
    const Gk15 r = gauss_kronrod(f, s.a, s.b);
    const double budget = tol * (s.b - s.a) / range.length();
    if (r.error <= budget || r.error < 1e-15 * std::fabs(r.value)) {
      sum += r.value;
      continue;
    }
    if (s.depth >= kMaxDepth) {
      sum += r.value;
      unresolved += r.error;
      converged = false;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    stack.push_back({m, s.b, s.depth + 1});
    stack.push_back({s.a, m, s.depth + 1});
  }
  if (!converged && unresolved > tol)
    throw ConvergenceError("integrate: maximum refinement depth reached", sum);
  return sum;
}

double invert_monotone(const std::function<double(double)>& g, double target, Interval bracket,
                       double tol) {
  double a = bracket.lo, b = bracket.hi;
  double fa = g(a) - target, fb = g(b) - target;
  if (std::fabs(fa) <= tol) return a;
  if (std::fabs(fb) <= tol) return b;
  if (!(fa * fb < 0.0)) throw PreconditionError("invert_monotone: bracket does not straddle target");

  double best = std::fabs(fa) < std::fabs(fb) ? a : b;
  double best_res = std::min(std::fabs(fa), std::fabs(fb));
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double width = b - a;
    double x = b - fb * (b - a) / (fb - fa);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = g(x) - target;
    if (std::fabs(fx) < best_res) {
      best_res = std::fabs(fx);
      best = x;
    }
    if (std::fabs(fx) <= tol) return x;
    // Illinois modification keeps the stale endpoint from stalling.
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (b - a > 0.5 * width) {
      const double m = 0.5 * (a + b);
      const double fm = g(m) - target;
      if (std::fabs(fm) <= tol) return m;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
      side = 0;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(a))) break;
  }
  if (best_res <= tol) return best;
  throw ConvergenceError("invert_monotone: tolerance not reached", best);
}

// ---------------------------------------------------------------------------
// Interpolation

UniformHermite::UniformHermite(Interval range, std::vector<double> samples)
    : range_(range), y_(std::move(samples)) {
  const std::size_t n = y_.size();
  if (n < 2) throw PreconditionError("UniformHermite needs at least two samples");
  if (range_.length() <= 0.0) throw PreconditionError("UniformHermite needs a non-empty range");
  h_ = range_.length() / static_cast<double>(n - 1);
  slope_.resize(n);
  const auto& y = y_;
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0)
        slope_[i] = (y[1] - y[0]) / h_;
      else if (i == n - 1)
        slope_[i] = (y[n - 1] - y[n - 2]) / h_;
      else
        slope_[i] = (y[i + 1] - y[i - 1]) / (2.0 * h_);
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s;
    if (i >= 2 && i + 2 < n) {
      s = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / 12.0;
    } else if (i == 0) {
      s = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / 12.0;
    } else if (i == 1) {
      s = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / 12.0;
    } else if (i == n - 1) {
      s = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]) / 12.0;
    } else {
      s = (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] - y[n - 5]) / 12.0;
    }
    slope_[i] = s / h_;
  }
}

double UniformHermite::node(std::size_t i) const { return range_.lo + h_ * static_cast<double>(i); }

double UniformHermite::eval(double x, int deriv) const {
  const std::size_t n = y_.size();
  const double pos = (x - range_.lo) / h_;
  auto k = static_cast<std::ptrdiff_t>(std::floor(pos));
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(n) - 2);
  const double t = pos - static_cast<double>(k);
  const double y0 = y_[k], y1 = y_[k + 1];
  const double m0 = slope_[k] * h_, m1 = slope_[k + 1] * h_;
  switch (deriv) {
    case 0: {
      const double t2 = t * t, t3 = t2 * t;
      return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
    }
    case 1: {
      const double t2 = t * t;
      return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1) / h_;
    }
    case 2:
      return ((12 * t - 6) * y0 + (6 * t - 4) * m0 + (-12 * t + 6) * y1 + (6 * t - 2) * m1) / (h_ * h_);
    default:
      throw PreconditionError("UniformHermite supports derivatives up to order 2");
  }
}

double Profile::second_derivative(double x) const {
  if (ddf) return ddf(x);
  const double h = 1e-4 * std::max(1.0, std::fabs(x));
  return (df(x + h) - df(x - h)) / (2.0 * h);
}

Profile Profile::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

Profile Profile::sampled(UniformHermite spline) {
  auto s = std::make_shared<const UniformHermite>(std::move(spline));
  return {[s](double x) { return s->eval(x, 0); }, [s](double x) { return s->eval(x, 1); },
          [s](double x) { return s->eval(x, 2); }};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// ---------------------------------------------------------------------------

Chebyshev::Chebyshev(Interval range, std::vector<double> coeffs) : range_(range), c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
}

std::vector<double> Chebyshev::nodes(Interval range, int n) {
  if (n < 1) throw PreconditionError("Chebyshev fit needs degree >= 1");
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double c = -std::cos(std::numbers::pi * k / n);
    x[static_cast<std::size_t>(k)] = range.mid() + 0.5 * range.length() * c;
  }
  x.front() = range.lo;
  x.back() = range.hi;
  return x;
}

Chebyshev Chebyshev::from_values(Interval range, const std::vector<double>& values) {
  const int n = static_cast<int>(values.size()) - 1;
  if (n < 1) throw PreconditionError("Chebyshev fit needs at least two values");
  // values[k] sits at -cos(pi k / n); with x_k = cos(pi k / n) the sample is values[n - k].
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 0.5 : 1.0;
      acc += w * values[static_cast<std::size_t>(n - k)] * std::cos(std::numbers::pi * j * k / n);
    }
    c[static_cast<std::size_t>(j)] = 2.0 * acc / n;
  }
  c.front() *= 0.5;
  c.back() *= 0.5;
  return Chebyshev(range, std::move(c));
}

Chebyshev Chebyshev::fit(const std::function<double(double)>& f, Interval range, int n) {
  std::vector<double> v;
  for (double x : nodes(range, n)) v.push_back(f(x));
  return from_values(range, v);
}

double Chebyshev::operator()(double x) const {
  const double t = (2.0 * x - range_.lo - range_.hi) / range_.length();
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c_.size(); j-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + c_[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c_[0];
}

Chebyshev Chebyshev::derivative() const {
  const std::size_t n = c_.size() - 1;
  if (n == 0) return Chebyshev(range_, {0.0});
  std::vector<double> d(n, 0.0);
  for (std::size_t j = n; j-- > 0;) {
    const double next = j + 2 < n ? d[j + 2] : 0.0;
    d[j] = next + 2.0 * static_cast<double>(j + 1) * c_[j + 1];
  }
  d[0] *= 0.5;
  const double scale = 2.0 / range_.length();
  for (double& x : d) x *= scale;
  return Chebyshev(range_, std::move(d));
}

Chebyshev Chebyshev::integral(double x0) const {
  const std::size_t n = c_.size();
  std::vector<double> I(n + 1, 0.0);
  auto c = [&](std::size_t j) { return j < n ? c_[j] : 0.0; };
  for (std::size_t j = 1; j <= n; ++j) {
    const double lower = j == 1 ? 2.0 * c(0) : c(j - 1);
    I[j] = (lower - c(j + 1)) / (2.0 * static_cast<double>(j));
  }
  const double scale = 0.5 * range_.length();
  for (double& x : I) x *= scale;
  Chebyshev out(range_, std::move(I));
  out.c_[0] = -out(x0);
  return out;
}

LeastSquares least_squares(const ResidualFn& r, int m, std::vector<double> x0, const std::vector<Interval>& box,
                           int max_iter) {
  const int n = static_cast<int>(x0.size());
  auto clamp = [&box](std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size() && i < box.size(); ++i) x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
  };
  clamp(x0);
  Eigen::VectorXd res(m), trial(m);
  auto eval = [&](const std::vector<double>& x, Eigen::VectorXd& out) {
    r(x, std::span<double>(out.data(), static_cast<std::size_t>(m)));
    return 0.5 * out.squaredNorm();
  };
  LeastSquares out{x0, eval(x0, res), 0};
  double mu = 1e-3;
  Eigen::MatrixXd J(m, n);
  Eigen::VectorXd rp(m), rm(m);
  for (int it = 0; it < max_iter && out.cost > 1e-32; ++it) {
    out.iterations = it + 1;
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(out.x[j]));
      std::vector<double> xp = out.x, xm = out.x;
      xp[j] += h;
      xm[j] -= h;
      clamp(xp);
      clamp(xm);
      eval(xp, rp);
      eval(xm, rm);
      const double dh = xp[j] - xm[j];
      J.col(j) = dh > 0.0 ? Eigen::VectorXd((rp - rm) / dh) : Eigen::VectorXd::Zero(m);
    }
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * res;
    bool improved = false, stalled = false;
    double step = 0.0;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd D = A;
      for (int j = 0; j < n; ++j) D(j, j) += mu * std::max(A(j, j), 1e-12);
      const Eigen::VectorXd dx = D.ldlt().solve(-g);
      std::vector<double> xn = out.x;
      for (int j = 0; j < n; ++j) xn[j] += dx[j];
      clamp(xn);
      const double c = eval(xn, trial);
      if (std::isfinite(c) && c < out.cost) {
        stalled = c > out.cost * (1.0 - 1e-10);
        step = 0.0;
        for (int j = 0; j < n; ++j) step = std::max(step, std::abs(xn[j] - out.x[j]));
        out.x = xn;
        out.cost = c;
        res = trial;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved || stalled || step < 1e-16) break;
  }
  return out;
}

}  // namespace frontal
