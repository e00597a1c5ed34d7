#include <cmath>
#include <random>

#include "doctest.h"
#include "frontal/exprlang.hpp"
#include "frontal/numkit.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

Map square() {
  return Map(1, 1, [](std::span<const double> x, std::span<double> y) { y[0] = x[0] * x[0]; });
}

}  // namespace

TEST_CASE("interval rejects reversed bounds") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), PreconditionError);
  CHECK(Interval(0.0, 2.0).length() == 2.0);
}

TEST_CASE("jet of t^2 at 1 from finite differences") {
  const double p[] = {1.0};
  const Jet j = eval_jet(square(), p, 1);
  CHECK(j.value(0) == 1.0);
  CHECK(j.partial(0, 1) == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("exact jet of the cuspidal edge third v-derivative") {
  const Map f = expr::make_mapdef("fC", {"u", "v"}, {"v^2", "v^3", "u"}).compile();
  const double p[] = {0.0, 0.0};
  const Jet j = eval_jet(f, p, 3);
  CHECK(j.partial(1, 0, 3) == 6.0);
  CHECK(j.partial(1, 0, 0) == 0.0);
  CHECK(j.partial(1, 0, 1) == 0.0);
  CHECK(j.partial(1, 0, 2) == 0.0);
}

TEST_CASE("order-0 jet equals evaluation") {
  const Map f = expr::make_mapdef("s", {"u", "v"}, {"3*v^4+u*v^2"}).compile();
  const double p[] = {1.0, 2.0};
  CHECK(eval_jet(f, p, 0).value(0) == 52.0);
  CHECK(f({1.0, 2.0})[0] == 52.0);
}

TEST_CASE("jet order above 3 is rejected") {
  const double p[] = {1.0};
  CHECK_THROWS_AS(eval_jet(square(), p, 4), PreconditionError);
}

TEST_CASE("finite-difference mixed partials are symmetric") {
  const Map f(2, 1, [](std::span<const double> x, std::span<double> y) {
    y[0] = std::sin(x[0] * x[1]) + x[0] * x[0] * x[1];
  });
  const double p[] = {0.3, -0.7};
  const Jet j = eval_jet(f, p, 3);
  const double u = p[0], v = p[1];
  CHECK(j.partial(0, 1, 1) == Approx(std::cos(u * v) - u * v * std::sin(u * v) + 2 * u).epsilon(1e-6));
  CHECK(j.partial(0, 2, 0) == Approx(-v * v * std::sin(u * v) + 2 * v).epsilon(1e-6));
}

TEST_CASE("forward mode agrees with finite differences on a probe grid") {
  const auto def = expr::make_mapdef("sw", {"u", "v"}, {"3*v^4+u*v^2", "4*v^3+2*u*v", "u*exp(v)-sin(u*v)"});
  const Map exact = def.compile();
  const Map opaque(2, 3, [&](std::span<const double> x, std::span<double> y) { exact.eval(x, y); });
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) {
      const double p[] = {-1.0 + 0.2 * i + 0.05, -1.0 + 0.2 * k + 0.03};
      const Jet a = eval_jet(exact, p, 1);
      const Jet b = eval_jet(opaque, p, 1);
      for (std::size_t c = 0; c < 3; ++c)
        for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
          const double x = a.partial(c, di, dj), y = b.partial(c, di, dj);
          CHECK(std::abs(x - y) <= 1e-6 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST_CASE("integrate") {
  CHECK(integrate([](double t) { return t; }, {0, 1}, 1e-12) == Approx(0.5).epsilon(1e-14));
  const double exact = (std::pow(13.0, 1.5) - 8.0) / 27.0;
  const double got = integrate([](double t) { return t * std::sqrt(4 + 9 * t * t); }, {0, 1}, 1e-12);
  CHECK(std::abs(got - exact) < 1e-12);
  CHECK(got == Approx(1.43971).epsilon(1e-6));
  CHECK(integrate([](double t) { return 1.0 / t; }, {0, 0}, 1e-12) == 0.0);
}

TEST_CASE("integrate is additive over splits") {
  auto f = [](double t) { return std::exp(-t) * std::cos(3 * t); };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double m = d(rng);
    const double whole = integrate(f, {0, 2}, 1e-11);
    const double parts = integrate(f, {0, m}, 1e-11) + integrate(f, {m, 2}, 1e-11);
    CHECK(std::abs(whole - parts) < 3e-11);
  }
}

TEST_CASE("integrate reports its best estimate on failure") {
  auto f = [](double t) { return 1.0 / std::sqrt(std::abs(t - 1.0 / 3.0)); };
  try {
    integrate(f, {0, 1}, 1e-14);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate()));
  }
}

TEST_CASE("invert_monotone") {
  CHECK(invert_monotone([](double t) { return t * t * t; }, 0.008, {0, 1}, 1e-14) == Approx(0.2).epsilon(1e-10));
  CHECK(invert_monotone([](double t) { return t; }, 0.37, {0, 1}, 1e-15) == Approx(0.37).epsilon(1e-14));
  auto g = [](double t) { return integrate([](double s) { return s * std::sqrt(4 + 9 * s * s); }, {0, t}, 1e-13); };
  const double target = (std::pow(13.0, 1.5) - 8.0) / 27.0;
  CHECK(invert_monotone(g, target, {0, 2}, 1e-12) == Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(invert_monotone(g, 100.0, {0, 2}, 1e-12), PreconditionError);
}

TEST_CASE("invert_monotone undoes g on probes") {
  auto g = [](double t) { return std::sinh(t) + t; };
  for (double x : linspace(-1.5, 1.5, 31)) CHECK(std::abs(invert_monotone(g, g(x), {-2, 2}, 1e-13) - x) < 1e-12);
}

TEST_CASE("Hermite interpolation reproduces smooth data") {
  std::vector<double> y;
  for (double x : linspace(0, 1, 65)) y.push_back(std::sin(2 * x));
  const UniformHermite h({0, 1}, y);
  for (double x : linspace(0, 1, 101)) {
    CHECK(std::abs(h(x) - std::sin(2 * x)) < 1e-8);
    CHECK(std::abs(h.derivative(x) - 2 * std::cos(2 * x)) < 1e-5);
  }
}

TEST_CASE("Taylor arithmetic") {
  const Taylor u = Taylor::variable(0.5, 0), v = Taylor::variable(-0.25, 1);
  const Taylor f = exp(u * v) / (1.0 + u * u);
  // d/du at (0.5,-0.25): [v e^{uv}(1+u^2) - e^{uv} 2u] / (1+u^2)^2
  const double e = std::exp(-0.125);
  const double expect = (-0.25 * e * 1.25 - e * 1.0) / (1.25 * 1.25);
  CHECK(f.partial(1, 0) == Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(sqrt(Taylor::variable(0.0, 0)), DomainError);
  CHECK(sqrt(Taylor(0.0) + 0.0 * u).value() == 0.0);
}

TEST_CASE("Chebyshev fit, derivative and antiderivative") {
  const Chebyshev c = Chebyshev::fit([](double x) { return std::exp(x) * std::sin(3 * x); }, {-0.5, 2.0}, 40);
  const Chebyshev d = c.derivative();
  const Chebyshev I = c.integral(0.0);
  // antiderivative of e^x sin 3x is e^x (sin 3x - 3 cos 3x) / 10
  auto F = [](double x) { return std::exp(x) * (std::sin(3 * x) - 3 * std::cos(3 * x)) / 10.0; };
  for (double x = -0.5; x <= 2.0; x += 0.125) {
    CHECK(c(x) == Approx(std::exp(x) * std::sin(3 * x)).epsilon(1e-13).scale(1.0));
    CHECK(d(x) == Approx(std::exp(x) * (std::sin(3 * x) + 3 * std::cos(3 * x))).epsilon(1e-11).scale(1.0));
    CHECK(I(x) == Approx(F(x) - F(0.0)).epsilon(1e-13).scale(1.0));
  }
  CHECK(I(0.0) == 0.0);
  const auto nodes = Chebyshev::nodes({0, 1}, 4);
  CHECK(nodes.front() == 0.0);
  CHECK(nodes.back() == 1.0);
  CHECK(nodes[2] == Approx(0.5));
}
