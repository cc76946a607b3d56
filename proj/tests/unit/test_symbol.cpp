#include <doctest.h>

#include <cmath>

#include "splab/errors.hpp"
#include "splab/symbol.hpp"

using namespace splab;

namespace {

// Central differences of a at xi, step h.
Vec numeric_gradient(const SymbolSpec& s, const Vec& xi, double h = 1e-6) {
  Vec g{};
  for (int d = 0; d < s.dimension(); ++d) {
    Vec up = xi, dn = xi;
    up[d] += h;
    dn[d] -= h;
    g[d] = (s.a(up) - s.a(dn)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("profile values") {
  CHECK(SymbolSpec::euclid(2, 2.0).a({3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(SymbolSpec::lp4(2, 2.0).a({1, 1, 0}) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(SymbolSpec::bump(2, 2.0, 0.5).a({2, 0, 0}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(SymbolSpec::euclid(3, 1.5).a({0, 0, 0}) == 0.0);
}

TEST_CASE("gradients") {
  const auto e = SymbolSpec::euclid(2, 2.0);
  for (const Vec& xi : {Vec{3, 4, 0}, Vec{6, 8, 0}}) {
    const Vec g = e.grad_a(xi);
    CHECK(g[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(0.8).epsilon(1e-15));
  }
  const Vec g4 = SymbolSpec::lp4(2, 2.0).grad_a({1, 1, 0});
  CHECK(g4[0] == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-14));
  CHECK(g4[1] == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-14));

  SUBCASE("closed forms agree with finite differences") {
    for (const SymbolSpec& s : {SymbolSpec::euclid(3, 2.0), SymbolSpec::lp4(3, 1.5),
                                SymbolSpec::bump(3, 2.5, 0.3), SymbolSpec::bump(2, 2.0, -0.4)}) {
      for (const Vec& xi : {Vec{0.3, -1.2, 0.7}, Vec{2.0, 0.1, -0.5}, Vec{-0.4, 0.9, 1.3}}) {
        const Vec x = s.dimension() == 2 ? Vec{xi[0], xi[1], 0} : xi;
        const Vec a = s.grad_a(x);
        const Vec b = numeric_gradient(s, x);
        for (int d = 0; d < s.dimension(); ++d) CHECK(a[d] == doctest::Approx(b[d]).epsilon(1e-8));
      }
    }
  }
  CHECK_THROWS_AS(e.grad_a({0, 0, 0}), DomainError);
}

TEST_CASE("p and its gradient") {
  const auto pv = SymbolSpec::euclid(2, 2.0).eval_p({3, 4, 0}, true);
  CHECK(pv.value == doctest::Approx(25.0));
  REQUIRE(pv.gradient);
  CHECK((*pv.gradient)[0] == doctest::Approx(6.0));
  CHECK((*pv.gradient)[1] == doctest::Approx(8.0));

  const auto q = SymbolSpec::euclid(2, 1.5).eval_p({0, 1, 0}, true);
  CHECK(q.value == doctest::Approx(1.0));
  CHECK((*q.gradient)[1] == doctest::Approx(1.5));

  const auto z = SymbolSpec::lp4(2, 2.0).eval_p({0, 0, 0}, false);
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS(SymbolSpec::lp4(2, 2.0).eval_p({0, 0, 0}, true), DomainError);
  CHECK_FALSE(z.gradient);

  // |p'| = m a^{m-1} |a'|
  const auto s = SymbolSpec::lp4(3, 2.5);
  const Vec xi{0.7, -0.2, 1.1};
  CHECK(s.grad_p_norm(xi) == doctest::Approx(2.5 * std::pow(s.a(xi), 1.5) * norm(s.grad_a(xi))));
}

TEST_CASE("homogeneity") {
  CHECK(homogeneity_residual(SymbolSpec::euclid(3, 2.0), 200) < 1e-14);
  CHECK(homogeneity_residual(SymbolSpec::lp4(2, 2.0), 200) <= 1e-12);
  const auto custom = SymbolSpec::custom(2, 2.0, [](const Vec& w) { return 1.0 + 0.2 * w[0] * w[0] * w[1] * w[1]; });
  CHECK(homogeneity_residual(custom, 200) <= 1e-6);
}

TEST_CASE("custom profile matches the built-in one") {
  const auto c = SymbolSpec::custom(2, 2.0, [](const Vec& w) { return 1.0 + 0.3 * w[0] * w[0]; });
  const auto b = SymbolSpec::bump(2, 2.0, 0.3);
  for (const Vec& xi : {Vec{1.0, 2.0, 0}, Vec{-0.5, 0.25, 0}}) {
    CHECK(c.a(xi) == doctest::Approx(b.a(xi)).epsilon(1e-14));
    const Vec gc = c.grad_a(xi), gb = b.grad_a(xi);
    CHECK(gc[0] == doctest::Approx(gb[0]).epsilon(1e-6));
    CHECK(gc[1] == doctest::Approx(gb[1]).epsilon(1e-6));
  }
}

TEST_CASE("with_order keeps the profile") {
  const auto s = SymbolSpec::lp4(2, 2.0).with_order(3.0);
  CHECK(s.order() == 3.0);
  CHECK(s.kind() == SymbolKind::lp4);
  CHECK(s.p({1, 1, 0}) == doctest::Approx(std::pow(2.0, 0.75)));
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(SymbolSpec::bump(2, 2.0, -1.5), UsageError);
  CHECK_THROWS_AS(SymbolSpec::euclid(4, 2.0), UsageError);
}
