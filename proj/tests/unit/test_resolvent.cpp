#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/expint.hpp>

#include "splab/errors.hpp"
#include "splab/resolvent.hpp"

using namespace splab;

namespace {

double gauss(const Vec& v) { return std::exp(-0.5 * dot(v, v)); }

Field random_smooth(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Vec c{u(rng), u(rng), 0}, k{u(rng), u(rng), 0};
  const cplx a(u(rng), u(rng));
  return Field::sample(g, Space::physical, [&](const Vec& x) {
    return a * gauss(x - truncated(c, g.dimension())) * std::polar(1.0, dot(truncated(k, g.dimension()), x));
  });
}

// sum_xi b(xi) f^ conj(g^) / (zeta - p) dxi^n with the transforms taken by
// explicit sums over the physical lattice.
cplx dense_form(const Field& f, const Field& g, const SymbolSpec& s, cplx zeta) {
  const GridSpec& gr = f.grid();
  const double c = gr.cell_volume() * std::pow(2.0 * kPi, -0.5 * gr.dimension());
  cplx total{};
  for (std::size_t k = 0; k < gr.size(); ++k) {
    const Vec xi = gr.xi_point(k);
    cplx fh{}, gh{};
    for (std::size_t j = 0; j < gr.size(); ++j) {
      const cplx e = std::polar(1.0, -dot(gr.x_point(j), xi));
      fh += f[j] * e;
      gh += g[j] * e;
    }
    total += fh * c * std::conj(gh * c) / (zeta - s.p(xi));
  }
  return total * gr.freq_cell_volume();
}

}  // namespace

TEST_CASE("resolvent form") {
  const GridSpec g(2, 6.0, 24);
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  const Field f = Field::sample(g, Space::physical, gauss);
  const Field h = random_smooth(g, 3);
  const MultiplierKind one = HomogeneousPower{0.0};

  const cplx z(1.0, 1.0);
  const cplx expect = dense_form(f, f, s, z);
  CHECK(std::abs(resolvent_form(one, f, f, s, z) - expect) / std::abs(expect) < 1e-12);

  // Poisson kernel positivity at zeta = i.
  CHECK(resolvent_form(one, f, f, s, cplx(0.0, 1.0)).imag() < 0.0);

  const cplx a = resolvent_form(BracketPower{0.5}, f, h, s, std::conj(z));
  const cplx b = std::conj(resolvent_form(BracketPower{0.5}, h, f, s, z));
  CHECK(std::abs(a - b) < 1e-13);

  const LatticeForm lf(one, f, h, s);
  CHECK(std::abs(lf(z) - resolvent_form(one, f, h, s, z)) < 1e-14);
}

TEST_CASE("algebraic identities") {
  const GridSpec g(2, 8.0, 32);
  const SymbolSpec s = SymbolSpec::lp4(2, 1.5);
  const Field f = random_smooth(g, 1), h = random_smooth(g, 2);
  for (const cplx z : {cplx(1.0, 0.5), cplx(-0.3, -2.0)}) {
    CHECK(polarization_check(BracketPower{0.5}, f, h, s, z) < 1e-12);
    CHECK(polarization_check(HomogeneousPower{0.5}, f, f, s, z) < 1e-13);
    CHECK(polarization_check(HomogeneousPower{0.5}, f, cplx(0.0, 1.0) * f, s, z) < 1e-13);
    CHECK(resolvent_identity_residual(f, s, z, cplx(2.0, 0.1)) < 1e-12);
  }
}

TEST_CASE("spectral form against closed forms") {
  // euclid, m = 2, n = 2, f^ = e^{-|xi|^2/2}, b = 1:
  //   form(zeta) = pi int_0^inf e^{-tau} / (zeta - tau) dtau
  //   form(lambda + i0) = pi e^{-lambda} Ei(lambda) - i pi^2 e^{-lambda}
  const GridSpec g(2, 12.0, 96);
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  const Field f = Field::sample(g, Space::physical, gauss);
  const SpectralForm sf(HomogeneousPower{0.0}, f, s, 64);
  for (double lambda : {0.5, 1.0, 3.0}) {
    const cplx bv = sf.boundary_value(lambda, +1);
    const double ei = boost::math::expint(lambda);
    CHECK(bv.imag() == doctest::Approx(-kPi * kPi * std::exp(-lambda)).epsilon(1e-6));
    CHECK(bv.real() == doctest::Approx(kPi * std::exp(-lambda) * ei).epsilon(1e-6));
    CHECK(std::abs(sf.boundary_value(lambda, -1) - std::conj(bv)) < 1e-12);
    // Density: S(tau) = int_{|xi|^2 = tau} e^{-|xi|^2} / (2 |xi|) = pi e^{-tau}.
    CHECK(sf.density(lambda) == doctest::Approx(kPi * std::exp(-lambda)).epsilon(1e-8));
  }
  // Away from the axis the lattice sum is accurate and must agree.
  const cplx z(0.7, 3.0);
  const cplx lat = resolvent_form(HomogeneousPower{0.0}, f, f, s, z);
  CHECK(std::abs(sf(z) - lat) / std::abs(lat) < 1e-6);
}

TEST_CASE("zeta grid") {
  const ZetaGrid z = ZetaGrid::make(1.0, 6, 16, 0.1, 1e-4, 4);
  CHECK(z.etas.size() == 4);
  CHECK(z.eta_min() == doctest::Approx(1e-4));
  for (std::size_t i = 1; i < z.etas.size(); ++i) CHECK(z.etas[i] < z.etas[i - 1]);
  CHECK_NOTHROW(z.validate());
  ZetaGrid bad = z;
  bad.etas.push_back(0.0);
  CHECK_THROWS(bad.validate());
}

TEST_CASE("resolvent sweep") {
  const ZetaGrid z = [] {
    ZetaGrid v = ZetaGrid::make(1.0, 6, 16, 0.1, 1e-4, 4);
    v.relative = true;
    return v;
  }();
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  CHECK_THROWS_WITH_AS(check_resolvent_hypotheses(2, 2.0, ResolventEstimate::T12_II, 0.0),
                       doctest::Contains("1<m<n"), HypothesisError);
  CHECK_THROWS_AS(resolvent_sup_ratio({Field(GridSpec(2, 8.0, 32), Space::physical)}, s,
                                      ResolventEstimate::T12_I, 0.6, z),
                  UsageError);

  std::vector<Field> fam;
  for (double lam : {0.5, 1.0, 2.0}) {
    const GridSpec g(2, 12.0 / lam, 64);
    fam.push_back(Field::sample(g, Space::physical, [lam](const Vec& x) { return lam * gauss(scaled(x, lam)); }));
  }
  const auto res = resolvent_sup_ratio(fam, s, ResolventEstimate::T12_I, 0.6, z);
  REQUIRE(res.size() == 3);
  for (const auto& r : res) {
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio == doctest::Approx(r.lhs / r.rhs));
    CHECK(r.halving_delta < 0.02);
  }
}

TEST_CASE("Kato chain") {
  const GridSpec g(1, 16.0, 128);
  const SymbolSpec s = SymbolSpec::euclid(1, 2.0);
  const TimeGrid tg(12.0, 96);
  const SpaceTimeField F = SpaceTimeField::sample(tg, g, [](double t, const Vec& x) {
    return std::polar(1.0, 3.0 * t) * std::exp(-t * t / 8.0) * gauss(x);
  });
  const std::vector<double> etas{0.04, 0.02, 0.01};
  const KatoResult a = kato_identity(1.0, HomogeneousPower{0.5}, F, s, etas);
  CHECK(a.residual <= 1e-3);
  const KatoResult b = kato_identity(1.0, HomogeneousPower{0.5}, F, s, etas, +1, a.tau_step / 2.0);
  CHECK(std::abs(b.extrapolated - a.extrapolated) / a.direct < 1e-4);

  const SpaceTimeField Z = SpaceTimeField::sample(tg, g, [](double, const Vec&) { return cplx{}; });
  CHECK(kato_identity_residual(1.0, HomogeneousPower{0.5}, Z, s, etas) == 0.0);
}

TEST_CASE("principal value cancellation") {
  CHECK(std::abs(pv_vanish(1.0, 0.1, 64)) <= 1e-15);
  CHECK(std::abs(pv_vanish(4.0, 0.01, 64)) <= 1e-14);
  CHECK(std::abs(pv_vanish(1.0, 0.1, 64, true)) > 1e-6);
}

TEST_CASE("Heaviside split") {
  const GridSpec g(1, 4.0, 16);
  const TimeGrid tg(2.0, 8);
  const SpaceTimeField F = SpaceTimeField::sample(tg, g, [](double t, const Vec& x) { return std::exp(-t * t) * gauss(x); });
  const auto [plus, minus] = heaviside_split(F);
  for (std::size_t k = 0; k < tg.size(); ++k) {
    CHECK((plus.frames[k] + minus.frames[k] - F.frames[k]).norm() == 0.0);
    if (tg.t(k) < 0.0) CHECK(plus.frames[k].norm() == 0.0);
    if (tg.t(k) >= 0.0) CHECK(minus.frames[k].norm() == 0.0);
  }
  // Even in t: the halves differ by the t = 0 frame alone.
  const double z = F.frames[tg.zero_index()].norm();
  const double w = tg.weight(tg.zero_index());
  CHECK(plus.norm() * plus.norm() - minus.norm() * minus.norm() == doctest::Approx(w * z * z).epsilon(1e-12));

  const SpaceTimeField P = SpaceTimeField::sample(tg, g, [](double t, const Vec& x) { return t > 0.0 ? gauss(x) : 0.0; });
  CHECK(heaviside_split(P).second.norm() == 0.0);
}
