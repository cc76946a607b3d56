#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "splab/errors.hpp"
#include "splab/trace.hpp"

using namespace splab;

namespace {

double gauss(const Vec& v) { return std::exp(-0.5 * dot(v, v)); }

// Perimeter of {a = tau} in the plane by a fine inscribed polygon.
double polygon_perimeter(const SymbolSpec& s, double tau, int sides) {
  double total = 0.0;
  Vec prev{};
  for (int k = 0; k <= sides; ++k) {
    const double th = 2.0 * kPi * k / sides;
    const Vec w{std::cos(th), std::sin(th), 0};
    const Vec p = scaled(w, tau / s.a(w));
    if (k > 0) total += norm(p - prev);
    prev = p;
  }
  return total;
}

}  // namespace

TEST_CASE("level-set measures") {
  CHECK(build_quad(SymbolSpec::euclid(2, 2.0), 1.5, 64).total_weight() == doctest::Approx(3.0 * kPi).epsilon(1e-14));
  CHECK(build_quad(SymbolSpec::euclid(3, 2.0), 2.0, 32).total_weight() == doctest::Approx(16.0 * kPi).epsilon(1e-12));
  const LevelSetQuad one = build_quad(SymbolSpec::euclid(1, 2.0), 0.7, 8);
  REQUIRE(one.nodes.size() == 2);
  CHECK(one.total_weight() == 2.0);
  CHECK(std::abs(one.nodes[0][0]) == doctest::Approx(0.7));

  for (const SymbolSpec& s : {SymbolSpec::lp4(2, 2.0), SymbolSpec::bump(2, 2.0, 0.4)}) {
    CHECK(build_quad(s, 1.0, 128).total_weight() == doctest::Approx(polygon_perimeter(s, 1.0, 200000)).epsilon(1e-9));
  }
  const LevelSetQuad q = build_quad(SymbolSpec::lp4(2, 2.0), 1.0, 64);
  const LevelSetQuad d = q.dilated(2.5);
  CHECK(d.tau == doctest::Approx(2.5));
  CHECK(d.total_weight() == doctest::Approx(2.5 * q.total_weight()));
  CHECK_THROWS_AS(build_quad(SymbolSpec::euclid(2, 2.0), 1.0, 4), UsageError);
}

TEST_CASE("nodes lie on the level set") {
  const SymbolSpec s = SymbolSpec::lp4(3, 2.0);
  const LevelSetQuad q = build_quad(s, 1.7, 16);
  for (const Vec& x : q.nodes) CHECK(s.a(x) == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("Gaussian trace closed form") {
  const GridSpec g(2, 16.0, 128);
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  const Field f = Field::sample(g, Space::physical, gauss);
  for (double tau : {0.5, 1.0, 2.0}) {
    const double v = trace_norm(f, build_quad(s, tau, 64));
    CHECK(v * v == doctest::Approx(2.0 * kPi * tau * std::exp(-tau * tau)).epsilon(1e-6));
    const double w = trace_norm_frequency(forward_ft(f), build_quad(s, tau, 64));
    CHECK(w == doctest::Approx(v).epsilon(1e-8));
  }
}

TEST_CASE("dilation covariance") {
  const GridSpec g(2, 12.0, 96);
  const SymbolSpec s = SymbolSpec::lp4(2, 2.0);
  const Field f = Field::sample(g, Space::physical, [](const Vec& x) {
    return gauss(x - Vec{0.3, -0.2, 0}) * std::polar(1.0, 0.4 * x[0]);
  });
  const double tau = 1.7;
  const LevelSetQuad unit = build_quad(s, 1.0, 96);
  // ||f^(tau .)||_{L2(Sigma(1))} with the level-set rule evaluated at tau * nodes.
  std::vector<Vec> pts;
  for (const Vec& w : unit.nodes) pts.push_back(scaled(w, tau));
  const auto vals = nuft_eval(f, pts);
  double acc = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) acc += unit.weights[i] * std::norm(vals[i]);
  const double rho = 0.5;
  CHECK(trace_norm(f, build_quad(s, tau, 96)) == doctest::Approx(std::pow(tau, rho) * std::sqrt(acc)).epsilon(1e-10));
}

TEST_CASE("quadrature refinement") {
  const GridSpec g(2, 12.0, 96);
  const Field f = Field::sample(g, Space::physical, [](const Vec& x) { return gauss(x - Vec{0.5, 0.25, 0}); });
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  const double a = trace_norm(f, build_quad(s, 1.3, 64));
  const double b = trace_norm(f, build_quad(s, 1.3, 128));
  CHECK(std::abs(a - b) / b < 1e-8);
}

TEST_CASE("co-area identity") {
  const GridSpec g(2, 16.0, 128);
  auto F = [](const Vec& xi) { return std::exp(-dot(xi, xi)); };
  CHECK(coarea_residual(F, g, SymbolSpec::euclid(2, 2.0), 128, 128) < 1e-6);
  CHECK(coarea_residual(F, g, SymbolSpec::lp4(2, 2.0), 128, 128) < 1e-4);
  CHECK(coarea_residual([](const Vec&) { return 0.0; }, g, SymbolSpec::euclid(2, 2.0), 32, 32) == 0.0);
}

TEST_CASE("trace ratios and hypotheses") {
  const GridSpec g(2, 12.0, 96);
  const Field f = Field::sample(g, Space::physical, gauss);
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  CHECK(std::isfinite(trace_ratio(f, s, 1.0, 0.1, 64)));
  CHECK(std::isfinite(hoelder_ratio(f, s, 0.5, 1.0, 0.5, 64)));
  CHECK_THROWS_AS(check_hoelder_range(2, 0.7), HypothesisError);
  CHECK_THROWS_WITH_AS(check_lowfreq_range(2, 0.5), doctest::Contains("0<theta<(n-1)/2"), HypothesisError);
  CHECK_NOTHROW(check_lowfreq_range(3, 0.9));

  // ||f^||_{Sigma(tau)} ~ tau^{1/2} for the Gaussian as tau -> 0 (n = 2).
  const LowFrequencyResult lf = lowfreq_slope(f, s, {0.2, 0.1, 0.05, 0.025}, 0.25);
  CHECK(lf.slope == doctest::Approx(0.5).epsilon(0.1));
  CHECK(lf.ratios.size() == 4);
}

TEST_CASE("quadrature export") {
  const LevelSetQuad q = build_quad(SymbolSpec::euclid(2, 2.0), 1.0, 8);
  std::ostringstream os;
  write_quad_csv(os, q);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "xi_1,xi_2,weight");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("largest level in the box") {
  const GridSpec g(2, 8.0, 64);
  const double t = max_level_in_box(SymbolSpec::euclid(2, 2.0), g);
  CHECK(t > 0.0);
  CHECK(t <= g.nyquist());
}
