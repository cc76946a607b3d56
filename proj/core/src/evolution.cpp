#include "splab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "splab/errors.hpp"
#include "splab/multiplier.hpp"

namespace splab {

TimeGrid::TimeGrid(double half_span, int steps) : half_span_(half_span), steps_(steps) {
  if (!(half_span > 0.0)) throw UsageError("time grid half span must be positive");
  if (steps < 2 || steps % 2 != 0) throw UsageError("time grid steps must be even and >= 2");
}

double TimeGrid::weight(std::size_t k) const {
  return (k == 0 || k == size() - 1) ? 0.5 * dt() : dt();
}

SpaceTimeField::SpaceTimeField(TimeGrid time_grid, std::vector<Field> frame_values)
    : time(time_grid), frames(std::move(frame_values)) {
  if (frames.size() != time.size()) throw UsageError("one frame per time sample is required");
  for (const Field& fr : frames) {
    if (!(fr.grid() == frames.front().grid()) || fr.space() != frames.front().space()) {
      throw UsageError("space-time frames must share grid and space tag");
    }
  }
}

SpaceTimeField SpaceTimeField::sample(const TimeGrid& time, const GridSpec& grid,
                                      const std::function<cplx(double, const Vec&)>& fn) {
  std::vector<Field> frames;
  frames.reserve(time.size());
  for (std::size_t k = 0; k < time.size(); ++k) {
    const double t = time.t(k);
    frames.push_back(Field::sample(grid, Space::physical, [&](const Vec& x) { return fn(t, x); }));
  }
  return SpaceTimeField(time, std::move(frames));
}

double SpaceTimeField::norm() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const double nk = frames[k].norm();
    acc += time.weight(k) * nk * nk;
  }
  return std::sqrt(acc);
}

namespace {

std::vector<double> lattice_p(const GridSpec& grid, const SymbolSpec& spec) {
  if (spec.dimension() != grid.dimension()) throw UsageError("symbol and grid dimensions differ");
  std::vector<double> p(grid.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = spec.p(grid.xi_point(i));
  return p;
}

std::vector<double> bracket_weight_squared(const GridSpec& grid, double s) {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vec x = grid.x_point(i);
    w[i] = std::pow(1.0 + dot(x, x), -s);
  }
  return w;
}

double weighted_energy(const Field& u, const std::vector<double>& w2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += w2[i] * std::norm(u[i]);
  return acc * u.cell_volume();
}

}  // namespace

Field propagate(const Field& phi, const SymbolSpec& spec, double t) {
  if (phi.space() != Space::physical) throw UsageError("propagate expects a physical field");
  Field hat = forward_ft(phi);
  const auto p = lattice_p(phi.grid(), spec);
  for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= std::polar(1.0, t * p[i]);
  return inverse_ft(hat);
}

void duhamel_stream(const FrameSource& f, const TimeGrid& time, const GridSpec& grid,
                    const SymbolSpec& spec,
                    const std::function<void(std::size_t, const Field&)>& sink) {
  const auto p = lattice_p(grid, spec);
  const std::size_t last = time.size() - 1;
  const std::size_t k0 = time.zero_index();
  const double dt = time.dt();
  const std::size_t count = grid.size();

  std::map<std::size_t, Field> cache;
  auto hat = [&](std::size_t k) -> const Field& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    Field fr = f(time.t(k));
    if (fr.space() != Space::physical || !(fr.grid() == grid)) {
      throw UsageError("forcing frames must be physical fields on the duhamel grid");
    }
    return cache.emplace(k, forward_ft(fr)).first->second;
  };
  // Keeps only frames within two steps of k; references into the cache stay
  // valid until the next call.
  auto evict_far = [&](std::size_t k) {
    for (auto it = cache.begin(); it != cache.end();) {
      const std::size_t d = it->first > k ? it->first - k : k - it->first;
      it = d > 2 ? cache.erase(it) : std::next(it);
    }
  };
  // d/ds of e^{-isp} f^(s) at t_k: exact phase derivative plus a second-order
  // difference of the frame samples.
  auto h_and_derivative = [&](std::size_t k, std::vector<cplx>& h, std::vector<cplx>& dh) {
    evict_far(k);
    const Field& c = hat(k);
    h.resize(count);
    dh.resize(count);
    const double t = time.t(k);
    std::vector<cplx> dF(count);
    if (k > 0 && k < last) {
      const Field& a = hat(k - 1);
      const Field& b = hat(k + 1);
      for (std::size_t i = 0; i < count; ++i) dF[i] = (b[i] - a[i]) / (2.0 * dt);
    } else if (k == 0) {
      const Field& b = hat(1);
      const Field& b2 = hat(2);
      for (std::size_t i = 0; i < count; ++i) dF[i] = (-3.0 * c[i] + 4.0 * b[i] - b2[i]) / (2.0 * dt);
    } else {
      const Field& a = hat(k - 1);
      const Field& a2 = hat(k - 2);
      for (std::size_t i = 0; i < count; ++i) dF[i] = (3.0 * c[i] - 4.0 * a[i] + a2[i]) / (2.0 * dt);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const cplx phase = std::polar(1.0, -t * p[i]);
      h[i] = phase * c[i];
      dh[i] = phase * (cplx{0.0, -p[i]} * c[i] + dF[i]);
    }
  };

  std::vector<cplx> h0, dh0, h, dh;
  h_and_derivative(k0, h0, dh0);
  sink(k0, Field(grid, Space::frequency));

  const double corr = dt * dt / 12.0;
  for (int direction : {+1, -1}) {
    std::vector<cplx> acc = h0;
    for (std::size_t k = k0;;) {
      if (direction > 0) {
        if (k == last) break;
        ++k;
      } else {
        if (k == 0) break;
        --k;
      }
      h_and_derivative(k, h, dh);
      Field out(grid, Space::frequency);
      const double t = time.t(k);
      for (std::size_t i = 0; i < count; ++i) {
        acc[i] += h[i];
        cplx s = dt * (acc[i] - 0.5 * (h0[i] + h[i]));
        // Upper limit minus lower limit of the derivative correction.
        s -= direction > 0 ? corr * (dh[i] - dh0[i]) : corr * (dh0[i] - dh[i]);
        if (direction < 0) s = -s;
        out[i] = std::polar(1.0, t * p[i]) * s;
      }
      sink(k, out);
    }
  }
}

SpaceTimeField duhamel(const SpaceTimeField& f, const SymbolSpec& spec) {
  for (const Field& fr : f.frames) {
    if (fr.space() != Space::physical) throw UsageError("duhamel expects physical frames");
  }
  const TimeGrid& time = f.time;
  std::vector<Field> out(time.size(), Field(f.grid(), Space::physical));
  FrameSource source = [&](double t) {
    const auto k = static_cast<std::size_t>(std::llround((t + time.half_span()) / time.dt()));
    return f.frames[k];
  };
  duhamel_stream(source, time, f.grid(), spec,
                 [&](std::size_t k, const Field& ghat) { out[k] = inverse_ft(ghat); });
  return SpaceTimeField(time, std::move(out));
}

double equation_residual(const Field& phi, const SpaceTimeField& f, const SymbolSpec& spec) {
  const TimeGrid& time = f.time;
  if (time.size() < 5) throw UsageError("equation residual needs at least five frames");
  const GridSpec& grid = f.grid();
  const auto p = lattice_p(grid, spec);
  const Field phat = forward_ft(phi);
  std::vector<Field> uhat(time.size(), Field(grid, Space::frequency));
  FrameSource source = [&](double t) {
    const auto k = static_cast<std::size_t>(std::llround((t + time.half_span()) / time.dt()));
    return f.frames[k];
  };
  duhamel_stream(source, time, grid, spec, [&](std::size_t k, const Field& ghat) {
    Field u(grid, Space::frequency);
    const double t = time.t(k);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = std::polar(1.0, t * p[i]) * phat[i] + cplx{0.0, 1.0} * ghat[i];
    }
    uhat[k] = std::move(u);
  });
  const double dt = time.dt();
  double res2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t k = 2; k + 2 < time.size(); ++k) {
    const Field fhat = forward_ft(f.frames[k]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx du = (-uhat[k + 2][i] + 8.0 * uhat[k + 1][i] - 8.0 * uhat[k - 1][i] +
                       uhat[k - 2][i]) / (12.0 * dt);
      const cplx r = cplx{0.0, -1.0} * du - p[i] * uhat[k][i] - fhat[i];
      res2 += std::norm(r);
      ref2 += std::norm(fhat[i]) + std::norm(p[i] * uhat[k][i]);
    }
  }
  return ref2 == 0.0 ? 0.0 : std::sqrt(res2 / ref2);
}

std::string to_string(SmoothingEstimate e) {
  switch (e) {
    case SmoothingEstimate::I_homog:
      return "I_homog";
    case SmoothingEstimate::I_duhamel:
      return "I_duhamel";
    case SmoothingEstimate::II_homog:
      return "II_homog";
    case SmoothingEstimate::II_duhamel:
      return "II_duhamel";
  }
  return "unknown";
}

bool is_type_one(SmoothingEstimate e) {
  return e == SmoothingEstimate::I_homog || e == SmoothingEstimate::I_duhamel;
}

bool is_homogeneous(SmoothingEstimate e) {
  return e == SmoothingEstimate::I_homog || e == SmoothingEstimate::II_homog;
}

void check_smoothing_hypotheses(int dimension, double order, SmoothingEstimate e, double delta) {
  require_hypothesis(dimension >= 2, "smoothing estimates require n >= 2");
  if (is_type_one(e)) {
    require_hypothesis(order > 1.0, "TYPE-I smoothing requires m > 1");
    require_hypothesis(delta > 0.5, "TYPE-I smoothing requires delta > 1/2");
  } else {
    require_hypothesis(order > 1.0 && order < dimension, "TYPE-II smoothing requires 1<m<n");
  }
}

namespace {

MultiplierKind smoothing_derivative(SmoothingEstimate e, double m) {
  const double s = is_homogeneous(e) ? 0.5 * (m - 1.0) : m - 1.0;
  if (is_type_one(e)) return HomogeneousPower{s};
  return BracketPower{s};
}

double smoothing_weight_exponent(SmoothingEstimate e, double m, double delta) {
  return is_type_one(e) ? delta : 0.5 * m;
}

SmoothingResult finish(const std::vector<double>& energy, const TimeGrid& time, double rhs) {
  double total = 0.0;
  for (std::size_t k = 0; k < energy.size(); ++k) total += time.weight(k) * energy[k];
  SmoothingResult r;
  r.lhs = std::sqrt(total);
  r.rhs = rhs;
  r.ratio = r.lhs / rhs;
  r.tail_indicator = total > 0.0 ? std::max(energy.front(), energy.back()) / total : 0.0;
  return r;
}

}  // namespace

SmoothingResult smoothing_ratio(const Field& phi, const SymbolSpec& spec, SmoothingEstimate e,
                                double delta, const TimeGrid& time) {
  if (!is_homogeneous(e)) throw UsageError("homogeneous smoothing ratio called with a Duhamel id");
  check_smoothing_hypotheses(phi.grid().dimension(), spec.order(), e, delta);
  if (phi.is_zero()) throw UsageError("smoothing ratio rejects the zero initial datum");
  const GridSpec& grid = phi.grid();
  const auto p = lattice_p(grid, spec);
  const Field psi = multiply_frequency(forward_ft(phi), smoothing_derivative(e, spec.order()));
  const auto w2 = bracket_weight_squared(grid, smoothing_weight_exponent(e, spec.order(), delta));
  std::vector<double> energy(time.size());
  for (std::size_t k = 0; k < time.size(); ++k) {
    Field u(grid, Space::frequency);
    const double t = time.t(k);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::polar(1.0, t * p[i]) * psi[i];
    energy[k] = weighted_energy(inverse_ft(u), w2);
  }
  return finish(energy, time, phi.norm());
}

SmoothingResult smoothing_ratio(const FrameSource& f, const TimeGrid& time, const GridSpec& grid,
                                const SymbolSpec& spec, SmoothingEstimate e, double delta) {
  if (is_homogeneous(e)) throw UsageError("Duhamel smoothing ratio called with a homogeneous id");
  check_smoothing_hypotheses(grid.dimension(), spec.order(), e, delta);
  const double s = smoothing_weight_exponent(e, spec.order(), delta);
  const auto w2 = bracket_weight_squared(grid, s);
  std::vector<double> inv_w2(w2.size());
  for (std::size_t i = 0; i < w2.size(); ++i) inv_w2[i] = 1.0 / w2[i];

  double rhs2 = 0.0;
  for (std::size_t k = 0; k < time.size(); ++k) rhs2 += time.weight(k) * weighted_energy(f(time.t(k)), inv_w2);
  if (rhs2 == 0.0) throw UsageError("smoothing ratio rejects the zero forcing");

  const MultiplierKind derivative = smoothing_derivative(e, spec.order());
  std::vector<double> energy(time.size());
  duhamel_stream(f, time, grid, spec, [&](std::size_t k, const Field& ghat) {
    energy[k] = weighted_energy(inverse_ft(multiply_frequency(ghat, derivative)), w2);
  });
  return finish(energy, time, std::sqrt(rhs2));
}

SmoothingResult smoothing_ratio(const SpaceTimeField& f, const SymbolSpec& spec,
                                SmoothingEstimate e, double delta) {
  const TimeGrid& time = f.time;
  FrameSource source = [&](double t) {
    const auto k = static_cast<std::size_t>(std::llround((t + time.half_span()) / time.dt()));
    return f.frames[k];
  };
  return smoothing_ratio(source, time, f.grid(), spec, e, delta);
}

}  // namespace splab
