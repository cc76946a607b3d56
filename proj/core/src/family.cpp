#include "splab/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "splab/errors.hpp"

namespace splab {

std::string to_string(FamilyBase base) {
  switch (base) {
    case FamilyBase::gaussian: return "gaussian";
    case FamilyBase::hermite: return "hermite";
    case FamilyBase::random_bandlimited: return "random_bandlimited";
  }
  return "?";
}

FamilyBase parse_family_base(const std::string& name) {
  if (name == "gaussian") return FamilyBase::gaussian;
  if (name == "hermite") return FamilyBase::hermite;
  if (name == "random_bandlimited" || name == "random") return FamilyBase::random_bandlimited;
  throw ConfigError("unknown family base '" + name +
                    "' (valid: gaussian, hermite, random_bandlimited)");
}

std::size_t FamilySpec::member_count() const {
  return dilations.size() * translations.size() * modulations.size();
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

// Normalized Hermite function psi_k by the three-term recurrence.
double hermite_function(int k, double x) {
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int j = 0; j < k; ++j) {
    const double next = std::sqrt(2.0 / (j + 1)) * x * cur - std::sqrt(double(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

struct Packet {
  Vec center{};
  Vec freq{};
  cplx amp;
};

class BaseProfile {
 public:
  BaseProfile(const FamilySpec& spec, int dimension) : spec_(spec), n_(dimension) {
    if (spec.base == FamilyBase::hermite && spec.hermite_order < 0) {
      throw ConfigError("hermite order must be >= 0");
    }
    if (spec.base != FamilyBase::random_bandlimited) return;
    // Six unit-width Gaussian packets; uniform centers in [-1,1]^n,
    // frequencies in [-1.5,1.5]^n, amplitudes in the unit square.
    std::mt19937_64 rng(spec.seed);
    for (int j = 0; j < 6; ++j) {
      Packet pk;
      for (int d = 0; d < n_; ++d) pk.center[d] = 2.0 * unit_uniform(rng()) - 1.0;
      for (int d = 0; d < n_; ++d) pk.freq[d] = 3.0 * unit_uniform(rng()) - 1.5;
      const double re = 2.0 * unit_uniform(rng()) - 1.0;
      const double im = 2.0 * unit_uniform(rng()) - 1.0;
      pk.amp = {re, im};
      packets_.push_back(pk);
    }
  }

  cplx operator()(const Vec& x) const {
    switch (spec_.base) {
      case FamilyBase::gaussian:
        return std::pow(kPi, -0.25 * n_) * std::exp(-0.5 * dot(x, x));
      case FamilyBase::hermite: {
        double v = hermite_function(spec_.hermite_order, x[0]);
        for (int d = 1; d < n_; ++d) v *= hermite_function(0, x[d]);
        return v;
      }
      case FamilyBase::random_bandlimited: {
        cplx v{};
        for (const Packet& pk : packets_) {
          const Vec y = x - pk.center;
          v += pk.amp * std::exp(-0.5 * dot(y, y)) * std::polar(1.0, dot(pk.freq, x));
        }
        return v;
      }
    }
    return {};
  }

 private:
  FamilySpec spec_;
  int n_;
  std::vector<Packet> packets_;
};

std::string format_vec(const Vec& v, int n) {
  std::string s;
  char buf[32];
  for (int d = 0; d < n; ++d) {
    std::snprintf(buf, sizeof buf, "%g", v[d] == 0.0 ? 0.0 : v[d]);
    if (d) s += '/';
    s += buf;
  }
  return s;
}

std::string member_id(const FamilySpec& spec, double lambda, const Vec& x0, const Vec& xi0,
                      int n) {
  char buf[48];
  std::string base = to_string(spec.base);
  if (spec.base == FamilyBase::hermite) base += std::to_string(spec.hermite_order);
  if (spec.base == FamilyBase::random_bandlimited) base += "#" + std::to_string(spec.seed);
  std::snprintf(buf, sizeof buf, ":lam=%g", lambda);
  return base + buf + ":x0=" + format_vec(x0, n) + ":xi0=" + format_vec(xi0, n);
}

// Largest |f| over lattice points with some coordinate on the box faces.
double boundary_max(const Field& f) {
  const GridSpec& g = f.grid();
  const int n = g.dimension();
  const int N = g.points_per_axis();
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t rest = i;
    bool face = false;
    for (int d = 0; d < n; ++d) {
      const int j = static_cast<int>(rest % N);
      rest /= N;
      face = face || j == 0 || j == N - 1;
    }
    if (face) m = std::max(m, std::abs(f[i]));
  }
  return m;
}

FamilyMember build_member(const FamilySpec& spec, const BaseProfile& base, const GridSpec& grid,
                          double lambda, const Vec& x0_in, const Vec& xi0_in) {
  const int n = grid.dimension();
  const Vec x0 = truncated(x0_in, n);
  const Vec xi0 = truncated(xi0_in, n);
  const std::string id = member_id(spec, lambda, x0, xi0, n);
  if (!(lambda > 0.0)) throw ConfigError("family member " + id + ": dilation must be positive");
  for (int d = 0; d < n; ++d) {
    if (std::abs(xi0[d]) > 0.5 * grid.nyquist()) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    ": modulation %g exceeds half the Nyquist frequency %g; increase N",
                    xi0[d], 0.5 * grid.nyquist());
      throw ConfigError("family member " + id + buf);
    }
  }
  const double amp = std::pow(lambda, 0.5 * n);
  Field f = Field::sample(grid, Space::physical, [&](const Vec& x) {
    return amp * base(scaled(x - x0, lambda)) * std::polar(1.0, dot(xi0, x));
  });
  const double peak = f.max_abs();
  const double tail = peak > 0.0 ? boundary_max(f) / peak : 0.0;
  if (!(tail < kFamilyTailLimit)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ": boundary tail %.3g >= %.0e at L = %g; use a larger L", tail,
                  kFamilyTailLimit, grid.half_width());
    throw ConfigError("family member " + id + buf);
  }
  const double nrm = f.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ConfigError("family member " + id + " is zero");
  if (spec.base != FamilyBase::random_bandlimited && std::abs(nrm - 1.0) > 1e-6) {
    throw ConfigError("family member " + id + " is under-resolved (lattice norm " +
                      std::to_string(nrm) + "); increase N");
  }
  f *= cplx(1.0 / nrm);
  return FamilyMember{id, lambda, x0, xi0, std::move(f)};
}

}  // namespace

cplx family_base_value(const FamilySpec& spec, int dimension, const Vec& x) {
  return BaseProfile(spec, dimension)(x);
}

std::vector<FamilyMember> make_family(const FamilySpec& spec, const GridSpec& grid) {
  const BaseProfile base(spec, grid.dimension());
  std::vector<FamilyMember> out;
  out.reserve(spec.member_count());
  for (double lambda : spec.dilations)
    for (const Vec& x0 : spec.translations)
      for (const Vec& xi0 : spec.modulations)
        out.push_back(build_member(spec, base, grid, lambda, x0, xi0));
  return out;
}

std::vector<FamilyMember> make_fitted_family(const FamilySpec& spec, int dimension,
                                             double base_half_width, int points) {
  const BaseProfile base(spec, dimension);
  std::vector<FamilyMember> out;
  out.reserve(spec.member_count());
  for (double lambda : spec.dilations) {
    if (!(lambda > 0.0)) throw ConfigError("dilations must be positive");
    const GridSpec grid(dimension, base_half_width / lambda, points);
    for (const Vec& x0 : spec.translations)
      for (const Vec& xi0 : spec.modulations)
        out.push_back(build_member(spec, base, grid, lambda, x0, xi0));
  }
  return out;
}

}  // namespace splab
