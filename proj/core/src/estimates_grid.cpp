#include <algorithm>
#include <cmath>
#include <random>

#include "estimates.hpp"
#include "splab/grid.hpp"

namespace splab::detail {

namespace {

Field random_field(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Field f(g, Space::physical);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double re = 2.0 * unit_uniform(rng()) - 1.0;
    f[i] = cplx(re, 2.0 * unit_uniform(rng()) - 1.0);
  }
  return f;
}

SweepOutcome plancherel(const Config& c) {
  const GridSpec g(c.integer("n"), c.num("L"), c.integer("N"));
  const int count = c.integer("count");
  const double tol = c.num("tolerance");
  const auto seed = static_cast<std::uint64_t>(c.num("seed"));
  SweepOutcome out;
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const Field f = random_field(g, seed + k);
    const Field F = forward_ft(f);
    const double nf = f.norm();
    const double parseval = std::abs(F.norm() - nf) / nf;
    const double round = (inverse_ft(F) - f).norm() / nf;
    RatioReport r;
    r.member_id = "white_noise#" + std::to_string(seed + k);
    r.point = "plancherel+inversion";
    put_params(r, c, {"n"});
    r.grid = grid_meta(g);
    r.set_ratio(std::max(parseval, round), tol);
    r.extra["parseval"] = parseval;
    r.extra["round_trip"] = round;
    worst = std::max(worst, r.lhs);
    out.rows.push_back(r);
  }
  out.checks.push_back({"max_relative_residual", worst, tol});
  return out;
}

SweepOutcome gaussian_duality(const Config& c) {
  const int n = c.integer("n");
  const GridSpec g(n, c.num("L"), c.integer("N"));
  const double tol = c.num("tolerance");
  const Vec x0 = truncated(c.vectors("shift").front(), n);
  const Vec xi0 = truncated(c.vectors("modulation").front(), n);
  auto gauss = [](const Vec& v) { return std::exp(-0.5 * dot(v, v)); };

  const Field g0 = Field::sample(g, Space::physical, gauss);
  const Field G0 = forward_ft(g0);
  double self = 0.0;
  for (std::size_t i = 0; i < G0.size(); ++i) self = std::max(self, std::abs(G0[i] - gauss(G0.point(i))));

  const Field h = Field::sample(g, Space::physical, [&](const Vec& x) {
    return gauss(x - x0) * std::polar(1.0, dot(xi0, x));
  });
  const Field H = forward_ft(h);
  double law = 0.0;
  for (std::size_t i = 0; i < H.size(); ++i) {
    const Vec d = H.point(i) - xi0;
    law = std::max(law, std::abs(H[i] - std::polar(1.0, -dot(d, x0)) * gauss(d)));
  }

  SweepOutcome out;
  for (auto [name, v] : {std::pair{"self_duality", self}, std::pair{"translation_modulation", law}}) {
    RatioReport r;
    r.member_id = "exp(-|x|^2/2)";
    r.point = name;
    put_params(r, c, {"n"});
    r.grid = grid_meta(g);
    r.set_ratio(v, tol);
    out.rows.push_back(r);
    out.checks.push_back({std::string(name) + "_max_error", v, tol});
  }
  return out;
}

}  // namespace

std::vector<EstimateInfo> grid_estimates() {
  return {
      {"plancherel",
       "Plancherel and inversion on the lattice: ||F f|| = ||f|| and F^{-1} F f = f",
       EstimateClass::identity,
       {param("n", "2", "dimension", true), param("L", "8", "box half width", true),
        param("N", "64", "points per axis", true), param("count", "100", "random fields"),
        param("seed", "1", "first seed"), param("tolerance", "1e-12", "relative residual bound")},
       plancherel},
      {"gaussian-duality",
       "Gaussian self-duality F[e^{-|x|^2/2}] = e^{-|xi|^2/2} and the translation-modulation law "
       "F[f(.-x0) e^{i xi0.x}](xi) = e^{-i(xi-xi0).x0} f^(xi-xi0)",
       EstimateClass::identity,
       {param("n", "2", "dimension", true), param("L", "12", "box half width", true),
        param("N", "128", "points per axis", true), param("shift", "1.5 -0.5", "x0"),
        param("modulation", "2 1", "xi0"), param("tolerance", "1e-10", "max lattice error")},
       gaussian_duality},
  };
}

}  // namespace splab::detail
