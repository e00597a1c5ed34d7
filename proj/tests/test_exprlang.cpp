#include <cmath>
#include <random>

#include "doctest.h"
#include "frontal/exprlang.hpp"

using namespace frontal;
using namespace frontal::expr;
using doctest::Approx;

TEST_CASE("parse builds the expected tree") {
  const Expr e = parse("v^2");
  REQUIRE(e.root().kind == NodeKind::pow);
  CHECK(e.root().lhs->name == "v");
  CHECK(e.root().rhs->number == 2.0);
}

TEST_CASE("power is right-associative and binds tighter than unary minus") {
  CHECK(parse("2^3^2") == parse("2^(3^2)"));
  CHECK(parse("-v^2") == parse("-(v^2)"));
  CHECK(parse("2^-1") == parse("2^(-1)"));
  const Jet j = evaluate(parse("-t^2"), {{"t", 3.0}}, 0);
  CHECK(j.value(0) == -9.0);
}

TEST_CASE("evaluation of catalog text") {
  const Jet j = evaluate(parse("3*v^4+u*v^2"), {{"u", 1.0}, {"v", 2.0}}, 0);
  CHECK(j.value(0) == 52.0);
}

TEST_CASE("syntax errors carry offset and expected tokens") {
  try {
    parse("v^^2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("foo(1)"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("(u+1"), ParseError);
  CHECK_THROWS_AS(parse("u v"), ParseError);
  CHECK_THROWS_AS(parse("u $ v"), ParseError);
}

TEST_CASE("error offsets move with the input position") {
  std::size_t last = 0;
  for (std::string prefix : {"", "u+", "u+v*", "u+v*w-", "u+v*w-sin(x)*"}) {
    try {
      parse(prefix + "*");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == prefix.size());
      CHECK(e.offset() >= last);
      last = e.offset();
    }
  }
}

TEST_CASE("derivatives through functions") {
  const Jet s = evaluate(parse("sin(t)"), {{"t", 0.0}}, 1);
  CHECK(s.value(0) == 0.0);
  CHECK(s.partial(0, 1) == 1.0);
  const Jet q = evaluate(parse("u + v^2/2"), {{"u", 0.0}, {"v", 0.0}}, 2);
  CHECK(q.partial(0, 0, 2) == 1.0);
}

TEST_CASE("domain errors name the offending subexpression") {
  try {
    evaluate(parse("1 + 1/t"), {{"t", 0.0}}, 1);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("1/t") != std::string::npos);
  }
  CHECK_THROWS_AS(evaluate(parse("log(x-1)"), {{"x", 0.5}}, 0), DomainError);
  CHECK_THROWS_AS(evaluate(parse("sqrt(t)"), {{"t", -1.0}}, 0), DomainError);
}

TEST_CASE("unbound identifiers fail to resolve") {
  CHECK_THROWS_AS(evaluate(parse("u*k"), {{"u", 1.0}}, 0), ResolveError);
  CHECK_THROWS_AS(make_mapdef("bad", {"u", "v"}, {"u", "v", "q"}), ResolveError);
  CHECK_NOTHROW(make_mapdef("ok", {"u", "v"}, {"u", "v", "q*pi"}, {{"q", 2.0}}));
}

TEST_CASE("constants") {
  CHECK(evaluate(parse("pi"), {}, 0).value(0) == Approx(M_PI));
  CHECK(evaluate(parse("e^2"), {}, 0).value(0) == Approx(std::exp(2.0)));
}

TEST_CASE("print and parse round-trip") {
  const char* texts[] = {"3*v^4+u*v^2", "-(u-v)-(-u)", "2^3^2", "(2^3)^2", "a/(b*c)", "a/b/c", "a-(b-c)",
                         "-u^2", "(-u)^2", "sin(u)*cos(v)/sqrt(1+u^2)", "1.5e-3*u", "atan(u/(v+2))",
                         "exp(-u^2/2)", "u - - v"};
  for (const char* t : texts) {
    const Expr a = parse(t);
    const Expr b = parse(print(a));
    CHECK_MESSAGE(a == b, t << " -> " << print(a));
    CHECK(print(b) == print(a));
  }
}

TEST_CASE("random expressions round-trip through the printer") {
  std::mt19937 rng(11);
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 2);
    switch (pick(rng)) {
      case 0: return "u";
      case 1: return "v";
      case 2: return std::to_string(std::uniform_int_distribution<int>(0, 9)(rng)) + ".25";
      case 3: return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
      case 4: return gen(depth - 1) + "*" + gen(depth - 1);
      case 5: return "-" + gen(depth - 1);
      case 6: return "(" + gen(depth - 1) + ")^" + gen(0);
      default: return "sin(" + gen(depth - 1) + ")-" + gen(depth - 1);
    }
  };
  for (int i = 0; i < 200; ++i) {
    const std::string t = gen(4);
    const Expr a = parse(t);
    CHECK_MESSAGE(parse(print(a)) == a, t);
  }
}

TEST_CASE("compiled maps have exact jets matching finite differences") {
  const char* catalog[][3] = {
      {"v^2", "v^3", "u"},
      {"3*v^4+u*v^2", "4*v^3+2*u*v", "u"},
      {"v^2", "u*v^3", "u"},
      {"u", "v^2", "u^2+u*v^3"},
      {"u+v^2/2-u*v^2/2-v^4/8", "v^3/3+u*v", "u^2/2"},
  };
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-0.8, 0.8);
  for (auto& comps : catalog) {
    const MapDef def = make_mapdef("g", {"u", "v"}, {comps[0], comps[1], comps[2]});
    const Map exact = def.compile();
    const Map opaque(2, 3, [&](std::span<const double> x, std::span<double> y) { exact.eval(x, y); });
    for (int k = 0; k < 20; ++k) {
      const double p[] = {d(rng), d(rng)};
      const Jet a = exact.jet(p, 1), b = eval_jet(opaque, p, 1);
      for (std::size_t c = 0; c < 3; ++c)
        for (auto [i, j] : {std::pair{1, 0}, std::pair{0, 1}}) {
          const double x = a.partial(c, i, j);
          CHECK(std::abs(x - b.partial(c, i, j)) <= 1e-6 * std::max(1.0, std::abs(x)));
        }
    }
  }
}

TEST_CASE("split_components respects parentheses") {
  const auto parts = split_components("u, a0(u)+v^2, atan(u, v)");
  REQUIRE(parts.size() == 3);
  CHECK(parts[2] == " atan(u, v)");
}
