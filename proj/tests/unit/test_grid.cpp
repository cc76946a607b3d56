#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "splab/errors.hpp"
#include "splab/grid.hpp"

using namespace splab;

namespace {

Field random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f(g, Space::physical);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(u(rng), u(rng));
  return f;
}

// (2 pi)^{-n/2} sum_x e^{-i x.xi} f(x) dx^n, term by term.
cplx direct_transform(const Field& f, const Vec& xi) {
  const GridSpec& g = f.grid();
  cplx s{};
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::polar(1.0, -dot(g.x_point(i), xi));
  return s * g.cell_volume() * std::pow(2.0 * kPi, -0.5 * g.dimension());
}

double gauss(const Vec& v) { return std::exp(-0.5 * dot(v, v)); }

}  // namespace

TEST_CASE("lattice geometry") {
  const GridSpec g(2, 4.0, 16);
  CHECK(g.dx() == doctest::Approx(0.5));
  CHECK(g.dxi() == doctest::Approx(kPi / 4.0));
  CHECK(g.nyquist() == doctest::Approx(2.0 * kPi));
  CHECK(g.size() == 256);
  CHECK(g.x_point(g.origin_index())[0] == 0.0);
  CHECK(g.xi_point(g.origin_index())[1] == 0.0);
  CHECK(g.refined().points_per_axis() == 32);
  CHECK_THROWS_AS(GridSpec(2, 4.0, 15), UsageError);
  CHECK_THROWS_AS(GridSpec(3, 4.0, 1024), ConfigError);
}

TEST_CASE("forward transform equals the direct sum") {
  for (int n : {1, 2}) {
    const GridSpec g(n, 3.0, n == 1 ? 32 : 12);
    const Field f = random_field(g, 11 + n);
    const Field F = forward_ft(f);
    double err = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) err = std::max(err, std::abs(F[i] - direct_transform(f, F.point(i))));
    CHECK(err < 1e-12);
    CHECK(F.space() == Space::frequency);
  }
}

TEST_CASE("Plancherel, Parseval and inversion") {
  const GridSpec g(2, 8.0, 64);
  for (unsigned s = 0; s < 10; ++s) {
    const Field f = random_field(g, s);
    const Field h = random_field(g, 100 + s);
    const Field F = forward_ft(f);
    CHECK(std::abs(F.norm() - f.norm()) / f.norm() < 1e-12);
    CHECK((inverse_ft(F) - f).norm() / f.norm() < 1e-12);
    const cplx a = f.inner(h);
    CHECK(std::abs(F.inner(forward_ft(h)) - a) / std::abs(a) < 1e-12);
  }
}

TEST_CASE("Gaussian self-duality and translation-modulation law") {
  for (int n : {1, 2}) {
    const GridSpec g(n, 12.0, 128);
    const Field G = forward_ft(Field::sample(g, Space::physical, gauss));
    double e = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i) e = std::max(e, std::abs(G[i] - gauss(G.point(i))));
    CHECK(e < 1e-10);

    const Vec x0 = truncated({1.5, -0.5, 0}, n), xi0 = truncated({2.0, 1.0, 0}, n);
    const Field H = forward_ft(Field::sample(g, Space::physical, [&](const Vec& x) {
      return gauss(x - x0) * std::polar(1.0, dot(xi0, x));
    }));
    e = 0.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
      const Vec d = H.point(i) - xi0;
      e = std::max(e, std::abs(H[i] - std::polar(1.0, -dot(d, x0)) * gauss(d)));
    }
    CHECK(e < 1e-10);
  }
}

TEST_CASE("refinement leaves the Gaussian transform unchanged on common points") {
  const GridSpec g(1, 10.0, 64);
  const Field a = forward_ft(Field::sample(g, Space::physical, gauss));
  const Field b = forward_ft(Field::sample(g.refined(), Space::physical, gauss));
  double e = 0.0;
  for (int k = 0; k < 64; ++k) e = std::max(e, std::abs(a[k] - b[k + 32]));
  CHECK(e < 1e-10);
}

TEST_CASE("nonuniform evaluation and interpolation") {
  const GridSpec g(2, 6.0, 32);
  const Field f = Field::sample(g, Space::physical, [](const Vec& x) { return gauss(x - Vec{0.5, 0, 0}); });
  const Field F = forward_ft(f);
  const std::vector<Vec> t{F.point(5), F.point(300), Vec{0.37, -1.21, 0}};
  const auto direct = nuft_eval(f, t);
  CHECK(std::abs(direct[0] - F[5]) < 1e-12);
  CHECK(std::abs(direct[1] - F[300]) < 1e-12);
  CHECK(std::abs(direct[2] - direct_transform(f, t[2])) < 1e-12);

  // Trigonometric interpolation of F reproduces off-lattice transform values
  // of a compactly concentrated f.
  const auto interp = interpolate_frequency(F, t);
  CHECK(std::abs(interp[0] - F[5]) < 1e-12);
  CHECK(std::abs(interp[2] - direct[2]) < 1e-9);
}

TEST_CASE("weighted norms") {
  const GridSpec g(2, 10.0, 128);
  const Field f = Field::sample(g, Space::physical, gauss);
  CHECK(weighted_norm(f, 0.0, WeightKind::japanese_bracket) == doctest::Approx(f.norm()).epsilon(1e-15));
  CHECK(weighted_norm(Field(g, Space::physical), 1.0, WeightKind::pure_power) == 0.0);

  // Radial oracle: ||<x> e^{-|x|^2/2}||^2 = 2 pi int (1 + r^2) e^{-r^2} r dr.
  using boost::math::quadrature::gauss_kronrod;
  const double bracket_sq = 2.0 * kPi * gauss_kronrod<double, 61>::integrate(
      [](double r) { return (1.0 + r * r) * std::exp(-r * r) * r; }, 0.0, 12.0);
  CHECK(bracket_sq == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(weighted_norm(f, 1.0, WeightKind::japanese_bracket) == doctest::Approx(std::sqrt(bracket_sq)).epsilon(1e-6));

  const double pure_sq = 2.0 * kPi * gauss_kronrod<double, 61>::integrate(
      [](double r) { return std::pow(r, 1.2) * std::exp(-r * r) * r; }, 0.0, 12.0);
  // |x|^{1.2} has a cusp at the origin, so the lattice sum converges at order n + 2s = 3.2.
  const GridSpec fine(2, 10.0, 256);
  const Field ff = Field::sample(fine, Space::physical, gauss);
  const double e1 = std::abs(weighted_norm(f, 0.6, WeightKind::pure_power) - std::sqrt(pure_sq));
  const double e2 = std::abs(weighted_norm(ff, 0.6, WeightKind::pure_power) - std::sqrt(pure_sq));
  CHECK(e1 < 1e-3);
  CHECK(std::log2(e1 / e2) == doctest::Approx(3.2).epsilon(0.05));
}

TEST_CASE("lattice zeta and the singular origin weight") {
  // n = 1: sum_{j != 0} |j|^{-a} = 2 zeta(a), continued to 0 < a < 1.
  for (double a : {0.3, 0.5, 0.8}) {
    CHECK(lattice_zeta(1, a) == doctest::Approx(2.0 * std::riemann_zeta(a)).epsilon(1e-10));
  }
  // The corrected quadrature of int |x|^{-a} e^{-x^2/2} dx = 2^{(1-a)/2} Gamma((1-a)/2)
  // up to the next Euler-Maclaurin term, -h^{3-a} zeta(a-2) for this integrand.
  const GridSpec g(1, 12.0, 96);
  const double a = 0.5;
  const Field f = Field::sample(g, Space::physical, gauss);
  const Field h = multiply_singular_power(f, a);
  cplx s{};
  for (std::size_t i = 0; i < h.size(); ++i) s += h[i];
  const double exact = std::pow(2.0, 0.5 * (1.0 - a)) * std::tgamma(0.5 * (1.0 - a));
  const double next = -std::pow(g.dx(), 3.0 - a) * std::riemann_zeta(a - 2.0);
  CHECK(s.real() * g.dx() == doctest::Approx(exact + next).epsilon(1e-6));
  CHECK(std::abs(s.real() * g.dx() - exact) < 1e-3);
}

TEST_CASE("binary container") {
  const GridSpec g(2, 3.5, 8);
  const Field f = random_field(g, 5);
  std::stringstream ss;
  write_field(ss, f);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 4 * 8 + f.size() * 16);
  std::int64_t n = 0;
  double L = 0.0;
  std::memcpy(&n, bytes.data(), 8);
  std::memcpy(&L, bytes.data() + 8, 8);
  CHECK(n == 2);
  CHECK(L == 3.5);

  std::stringstream in(bytes);
  const Field r = read_field(in);
  CHECK(r.grid() == g);
  CHECK(r.space() == Space::physical);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(r[i] == f[i]);

  std::stringstream bad(bytes.substr(0, 40));
  CHECK_THROWS(read_field(bad));
}

TEST_CASE("fields on different grids do not mix") {
  const Field a(GridSpec(1, 2.0, 8), Space::physical);
  const Field b(GridSpec(1, 3.0, 8), Space::physical);
  CHECK_THROWS_AS(a + b, UsageError);
}
