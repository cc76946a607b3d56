#include <doctest.h>

#include <cmath>
#include <random>

#include "splab/errors.hpp"
#include "splab/multiplier.hpp"

using namespace splab;

namespace {

double gauss(const Vec& v) { return std::exp(-0.5 * dot(v, v)); }

Field random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> u;
  Field f(g, Space::physical);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(u(rng), u(rng));
  return f;
}

// sigma(D) f as an explicit double sum over the lattice (no FFT):
// (2 pi)^{-n} sum_xi sum_y e^{i(x-y).xi} sigma(xi) f(y) dy dxi.
Field dense_apply(const Field& f, const std::function<cplx(const Vec&)>& sigma) {
  const GridSpec& g = f.grid();
  const double c = g.cell_volume() * g.freq_cell_volume() * std::pow(2.0 * kPi, -g.dimension());
  std::vector<cplx> fh(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec xi = g.xi_point(k);
    cplx s{};
    for (std::size_t j = 0; j < g.size(); ++j) s += f[j] * std::polar(1.0, -dot(g.x_point(j), xi));
    fh[k] = s * sigma(xi);
  }
  Field out(g, Space::physical);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx s{};
    for (std::size_t k = 0; k < g.size(); ++k) s += fh[k] * std::polar(1.0, dot(g.x_point(i), g.xi_point(k)));
    out[i] = s * c;
  }
  return out;
}

}  // namespace

TEST_CASE("trivial multipliers") {
  const GridSpec g(2, 8.0, 64);
  const Field f = random_field(g, 1);
  CHECK((apply_multiplier(f, HomogeneousPower{0.0}) - f).norm() / f.norm() < 1e-13);
  const Field c = apply_multiplier(f, DegreeZero::constant(cplx(2.0, -1.0)));
  CHECK((c - cplx(2.0, -1.0) * f).norm() / f.norm() < 1e-13);
}

TEST_CASE("bracket power on a Gaussian") {
  // <D>^2 e^{-|x|^2/2} = (1 + n - |x|^2) e^{-|x|^2/2}
  for (int n : {1, 2}) {
    const GridSpec g(n, 12.0, 128);
    const Field f = Field::sample(g, Space::physical, gauss);
    const Field h = apply_multiplier(f, BracketPower{2.0});
    double e = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Vec x = h.point(i);
      e = std::max(e, std::abs(h[i] - (1.0 + n - dot(x, x)) * gauss(x)));
    }
    CHECK(e < 1e-8);
  }
}

TEST_CASE("composition and self-adjointness") {
  const GridSpec g(2, 8.0, 64);
  const Field f = random_field(g, 2);
  const Field h = random_field(g, 3);
  const Field a = apply_multiplier(apply_multiplier(f, HomogeneousPower{0.7}), HomogeneousPower{1.1});
  const Field b = apply_multiplier(f, HomogeneousPower{1.8});
  CHECK((a - b).norm() / b.norm() < 1e-11);

  const SymbolSpec s = SymbolSpec::lp4(2, 1.5);
  for (const MultiplierKind& k : {MultiplierKind{BracketPower{-0.5}}, MultiplierKind{SymbolPower{s, 1.0}},
                                  split_low_kind(2.0), split_high_kind(2.0)}) {
    const cplx l = apply_multiplier(f, k).inner(h);
    const cplx r = f.inner(apply_multiplier(h, k));
    CHECK(std::abs(l - r) / std::abs(l) < 1e-12);
  }
}

TEST_CASE("degree-zero symbols") {
  const GridSpec g(2, 8.0, 64);
  const Field f = random_field(g, 4);
  const Field r = apply_multiplier(f, DegreeZero::riesz(0));
  CHECK(r.zero_mode_annihilated());
  CHECK(r.norm() <= f.norm() * (1.0 + 1e-12));
  // R_1^2 + R_2^2 = 1 off the zero mode.
  const Field s = apply_multiplier(r, DegreeZero::riesz(0)) +
                  apply_multiplier(apply_multiplier(f, DegreeZero::riesz(1)), DegreeZero::riesz(1));
  const Field F = forward_ft(f), S = forward_ft(s);
  double e = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i == g.origin_index()) {
      CHECK(std::abs(S[i]) < 1e-12);
    } else {
      e = std::max(e, std::abs(S[i] - F[i]));
    }
  }
  CHECK(e < 1e-12);
  CHECK(apply_multiplier(f, HomogeneousPower{-0.5}).zero_mode_annihilated());
}

TEST_CASE("cutoff and the bracket split") {
  CHECK(smooth_cutoff(0.3) == 1.0);
  CHECK(smooth_cutoff(1.0) == 1.0);
  CHECK(smooth_cutoff(2.0) == 0.0);
  CHECK(smooth_cutoff(3.5) == 0.0);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 0.01) {
    const double v = smooth_cutoff(r);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  for (double m : {1.5, 2.0, 3.0}) {
    for (const Vec& xi : {Vec{0.2, 0.1, 0}, Vec{1.3, 0.4, 0}, Vec{-1.7, 0.2, 0}, Vec{5.0, 1.0, 0}}) {
      const double target = std::pow(1.0 + dot(xi, xi), 0.5 * (m - 1.0));
      CHECK(split_low(xi, m) + std::pow(norm(xi), m - 1.0) * split_high(xi, m) ==
            doctest::Approx(target).epsilon(1e-14));
    }
  }
}

TEST_CASE("weight commutator") {
  const GridSpec g(2, 6.0, 16);
  const Field f = Field::sample(g, Space::physical, [](const Vec& x) { return gauss(scaled(x - Vec{0.5, 0, 0}, 1.3)); });
  const DegreeZero q = DegreeZero::riesz(0);

  SUBCASE("constant symbol commutes") {
    CHECK(weight_commutator_apply(f, 0.6, DegreeZero::constant(1.0)).norm() < 1e-13);
  }
  SUBCASE("dense direct-summation oracle") {
    const auto sigma = [](const Vec& xi) { return norm(xi) == 0.0 ? cplx{} : cplx(xi[0] / norm(xi)); };
    const double delta = 0.6;
    Field wf = f;
    for (std::size_t i = 0; i < wf.size(); ++i) wf[i] *= std::pow(norm(wf.point(i)), delta);
    Field qf = dense_apply(f, sigma);
    for (std::size_t i = 0; i < qf.size(); ++i) qf[i] *= std::pow(norm(qf.point(i)), delta);
    const Field expect = qf - dense_apply(wf, sigma);
    const Field got = weight_commutator_apply(f, delta, q);
    CHECK((got - expect).norm() / expect.norm() < 1e-11);
  }
  CHECK_THROWS_AS(check_weight_commutator_range(2, 1.0), HypothesisError);
  CHECK_NOTHROW(check_weight_commutator_range(3, 1.0));
  CHECK_THROWS_AS(check_weight_commutator_range(3, 1.2), HypothesisError);
}

TEST_CASE("Stein-Weiss ratios") {
  const GridSpec g(2, 10.0, 128);
  const Field f = Field::sample(g, Space::physical, gauss);
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  CHECK(stein_weiss_ratio(f, s, 0.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double r = stein_weiss_ratio(f, s, 1.0, 0.5, 0.5);
  CHECK(std::isfinite(r));
  const Field f2 = Field::sample(g.refined(), Space::physical, gauss);
  CHECK(std::abs(stein_weiss_ratio(f2, s, 1.0, 0.5, 0.5) - r) / r < 0.05);
  CHECK_THROWS_AS(stein_weiss_ratio(f, s, 1.0, 0.5, 0.4), HypothesisError);
  CHECK_THROWS_AS(stein_weiss_ratio(f, s, 2.0, 1.0, 1.0), HypothesisError);

  // Endpoint with beta = 0 is Plancherel.
  CHECK(stein_weiss_endpoint_ratio(f, s, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frequency commutator") {
  const SymbolSpec s3 = SymbolSpec::euclid(3, 2.0);
  const GridSpec g(3, 10.0, 48);
  const Field F = Field::sample(g, Space::frequency, [](const Vec& xi) {
    const double r2 = dot(xi, xi);
    return std::pow(r2, 5) * std::exp(-0.5 * r2);
  });
  // Exactness of the kappa = 1 reduction is limited by the lattice here.
  CHECK(commutator_reduction_residual(inverse_ft(F), s3) < 1e-5);

  const GridSpec g2(2, 8.0, 64);
  const Field f = Field::sample(g2, Space::physical, gauss);
  CHECK(std::isfinite(freq_commutator_ratio(f, SymbolSpec::euclid(2, 2.0), 0.5)));
  CHECK_THROWS_AS(freq_commutator_ratio(Field(g2, Space::physical), SymbolSpec::euclid(2, 2.0), 0.5), UsageError);
  CHECK_THROWS_AS(check_frequency_commutator_range(2, 1.0), HypothesisError);
  CHECK_NOTHROW(check_frequency_commutator_range(3, 1.2));
}

TEST_CASE("non-finite symbol values") {
  const GridSpec g(1, 4.0, 16);
  const Field F = forward_ft(Field::sample(g, Space::physical, gauss));
  const ScalarFunction bad{[](const Vec& xi) { return xi[0] > 1.0 ? cplx(NAN) : cplx(1.0); }};
  CHECK_THROWS_AS(multiply_frequency(F, bad), NumericError);
}
