#include "splab/grid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "fft_backend.hpp"
#include "splab/errors.hpp"
#include "splab/parallel.hpp"

namespace splab {

namespace {

std::array<int, kMaxDim> unflatten(std::size_t flat, int n, int points) {
  std::array<int, kMaxDim> idx{};
  for (int d = n - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % points);
    flat /= points;
  }
  return idx;
}

std::size_t flatten(const std::array<int, kMaxDim>& idx, int n, int points) {
  std::size_t flat = 0;
  for (int d = 0; d < n; ++d) flat = flat * points + idx[d];
  return flat;
}

}  // namespace

GridSpec::GridSpec(int dimension, double half_width, int points_per_axis, std::size_t point_cap)
    : dimension_(dimension), half_width_(half_width), points_(points_per_axis) {
  if (dimension < 1 || dimension > kMaxDim) throw UsageError("grid dimension must be 1, 2 or 3");
  if (!(half_width > 0.0)) throw UsageError("grid half width must be positive");
  if (points_per_axis < 2 || points_per_axis % 2 != 0) {
    throw UsageError("points per axis must be an even integer >= 2");
  }
  size_ = 1;
  for (int d = 0; d < dimension; ++d) {
    size_ *= static_cast<std::size_t>(points_per_axis);
    if (size_ > point_cap) throw ConfigError("grid exceeds the configured point cap");
  }
}

double GridSpec::cell_volume() const { return std::pow(dx(), dimension_); }

double GridSpec::freq_cell_volume() const { return std::pow(dxi(), dimension_); }

std::size_t GridSpec::origin_index() const {
  std::array<int, kMaxDim> idx{};
  for (int d = 0; d < dimension_; ++d) idx[d] = points_ / 2;
  return flatten(idx, dimension_, points_);
}

Vec GridSpec::x_point(std::size_t flat) const {
  const auto idx = unflatten(flat, dimension_, points_);
  Vec x{};
  for (int d = 0; d < dimension_; ++d) x[d] = x_coord(idx[d]);
  return x;
}

Vec GridSpec::xi_point(std::size_t flat) const {
  const auto idx = unflatten(flat, dimension_, points_);
  Vec xi{};
  for (int d = 0; d < dimension_; ++d) xi[d] = xi_coord(idx[d]);
  return xi;
}

GridSpec GridSpec::refined() const { return GridSpec(dimension_, half_width_, 2 * points_); }

bool GridSpec::operator==(const GridSpec& other) const {
  return dimension_ == other.dimension_ && half_width_ == other.half_width_ &&
         points_ == other.points_;
}

Field::Field(GridSpec grid, Space space)
    : grid_(grid), space_(space), values_(grid.size(), cplx{0.0, 0.0}) {}

Field::Field(GridSpec grid, Space space, std::vector<cplx> values)
    : grid_(grid), space_(space), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw UsageError("field value count does not match grid");
}

Field Field::sample(const GridSpec& grid, Space space, const std::function<cplx(const Vec&)>& fn) {
  Field f(grid, space);
  for (std::size_t i = 0; i < f.size(); ++i) f.values_[i] = fn(f.point(i));
  return f;
}

Vec Field::point(std::size_t flat) const {
  return space_ == Space::physical ? grid_.x_point(flat) : grid_.xi_point(flat);
}

double Field::cell_volume() const {
  return space_ == Space::physical ? grid_.cell_volume() : grid_.freq_cell_volume();
}

double Field::norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s * cell_volume());
}

double Field::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

cplx Field::inner(const Field& other) const {
  if (!(grid_ == other.grid_) || space_ != other.space_) {
    throw UsageError("inner product of fields on different lattices");
  }
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * std::conj(other.values_[i]);
  return s * cell_volume();
}

bool Field::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx{}; });
}

Field& Field::operator+=(const Field& other) {
  if (!(grid_ == other.grid_) || space_ != other.space_) throw UsageError("field lattice mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(grid_ == other.grid_) || space_ != other.space_) throw UsageError("field lattice mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

namespace {

// Maps lattice index i (k = i - N/2) to DFT slot (i + N/2) mod N, with the
// (-1)^k phase from the -L offset of the physical box.
void shift_with_phase(std::span<const cplx> src, std::span<cplx> dst, int n, int points,
                      bool to_dft_order, double scale) {
  const int half = points / 2;
  for (std::size_t flat = 0; flat < src.size(); ++flat) {
    const auto idx = unflatten(flat, n, points);
    std::array<int, kMaxDim> other{};
    int ksum = 0;
    for (int d = 0; d < n; ++d) {
      if (to_dft_order) {
        // flat is a frequency-lattice index, other is its DFT slot
        other[d] = (idx[d] + half) % points;
        ksum += idx[d] - half;
      } else {
        // flat is a DFT slot, other is the frequency-lattice index
        other[d] = (idx[d] + half) % points;
        ksum += other[d] - half;
      }
    }
    const double sign = (ksum % 2 == 0) ? scale : -scale;
    dst[flatten(other, n, points)] = sign * src[flat];
  }
}

}  // namespace

Field forward_ft(const Field& f) {
  if (f.space() != Space::physical) throw UsageError("forward_ft expects a physical field");
  const GridSpec& g = f.grid();
  std::vector<cplx> work(f.values().begin(), f.values().end());
  detail::fft_inplace(work, g.dimension(), g.points_per_axis(), -1);
  const double scale = g.cell_volume() / std::pow(2.0 * kPi, 0.5 * g.dimension());
  Field out(g, Space::frequency);
  shift_with_phase(work, out.values(), g.dimension(), g.points_per_axis(), false, scale);
  out.set_zero_mode_annihilated(f.zero_mode_annihilated());
  return out;
}

Field inverse_ft(const Field& F) {
  if (F.space() != Space::frequency) throw UsageError("inverse_ft expects a frequency field");
  const GridSpec& g = F.grid();
  std::vector<cplx> work(F.size());
  const double scale = g.freq_cell_volume() / std::pow(2.0 * kPi, 0.5 * g.dimension());
  shift_with_phase(F.values(), work, g.dimension(), g.points_per_axis(), true, scale);
  detail::fft_inplace(work, g.dimension(), g.points_per_axis(), +1);
  Field out(g, Space::physical, std::move(work));
  out.set_zero_mode_annihilated(F.zero_mode_annihilated());
  return out;
}

namespace {

// Complex dot product without the Annex G multiply overhead.
inline cplx dot_phase(const cplx* phase, const cplx* v, std::size_t count) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double a = phase[j].real(), b = phase[j].imag();
    const double c = v[j].real(), d = v[j].imag();
    re += a * c - b * d;
    im += a * d + b * c;
  }
  return {re, im};
}

inline cplx mul(cplx x, cplx y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

// sum_j e^{sign i x_j . target} v_j over a row-major lattice with axis
// coordinates coord(j), using separable per-axis phase tables.
cplx separable_sum(std::span<const cplx> v, int n, int points, const Vec& target, double sign,
                   const std::function<double(int)>& coord) {
  std::array<std::vector<cplx>, kMaxDim> phase;
  for (int d = 0; d < n; ++d) {
    phase[d].resize(points);
    for (int j = 0; j < points; ++j) phase[d][j] = std::polar(1.0, sign * coord(j) * target[d]);
  }
  const std::size_t np = static_cast<std::size_t>(points);
  if (n == 1) return dot_phase(phase[0].data(), v.data(), np);
  if (n == 2) {
    cplx s{};
    for (std::size_t j0 = 0; j0 < np; ++j0) {
      s += mul(phase[0][j0], dot_phase(phase[1].data(), v.data() + j0 * np, np));
    }
    return s;
  }
  cplx s{};
  for (std::size_t j0 = 0; j0 < np; ++j0) {
    cplx plane{};
    for (std::size_t j1 = 0; j1 < np; ++j1) {
      plane += mul(phase[1][j1], dot_phase(phase[2].data(), v.data() + (j0 * np + j1) * np, np));
    }
    s += mul(phase[0][j0], plane);
  }
  return s;
}

}  // namespace

std::vector<cplx> nuft_eval(const Field& f, std::span<const Vec> targets) {
  if (f.space() != Space::physical) throw UsageError("nuft_eval expects a physical field");
  const GridSpec& g = f.grid();
  const double scale = g.cell_volume() / std::pow(2.0 * kPi, 0.5 * g.dimension());
  std::vector<cplx> out(targets.size());
  auto coord = [&g](int j) { return g.x_coord(j); };
  parallel_for(targets.size(), [&](std::size_t t) {
    out[t] = scale * separable_sum(f.values(), g.dimension(), g.points_per_axis(), targets[t],
                                   -1.0, coord);
  });
  return out;
}

cplx nuft_eval(const Field& f, const Vec& target) {
  return nuft_eval(f, std::span<const Vec>(&target, 1))[0];
}

std::vector<cplx> interpolate_frequency(const Field& F, std::span<const Vec> targets) {
  if (F.space() != Space::frequency) {
    throw UsageError("interpolate_frequency expects a frequency field");
  }
  return nuft_eval(inverse_ft(F), targets);
}

double weighted_norm(const Field& f, double s, WeightKind kind) {
  const GridSpec& g = f.grid();
  const std::size_t origin = f.space() == Space::physical ? g.origin_index() : g.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec x = f.point(i);
    double w;
    if (kind == WeightKind::japanese_bracket) {
      w = std::pow(1.0 + dot(x, x), s);
    } else {
      if (i == origin && s < 0.0) continue;
      const double r2 = dot(x, x);
      w = (r2 == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r2, s);
    }
    acc += w * std::norm(f[i]);
  }
  return std::sqrt(acc * f.cell_volume());
}

double lattice_zeta(int dimension, double alpha) {
  if (dimension < 1 || dimension > kMaxDim) throw UsageError("lattice_zeta: dimension 1..3");
  if (!(alpha > 0.0 && alpha < dimension)) throw UsageError("lattice_zeta requires 0 < alpha < n");
  // Theta-function splitting for the self-dual lattice Z^n, s = alpha/2:
  // pi^{-s} Gamma(s) Z(s) = -1/s - 1/(n/2 - s)
  //   + sum' [Gamma(s, pi r^2)(pi r^2)^{-s} + Gamma(n/2-s, pi r^2)(pi r^2)^{s-n/2}].
  const double s = 0.5 * alpha;
  const double h = 0.5 * dimension - s;
  constexpr int reach = 6;
  double sum = 0.0;
  std::array<int, kMaxDim> j{};
  const int span = 2 * reach + 1;
  std::size_t total = 1;
  for (int d = 0; d < dimension; ++d) total *= span;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    long r2 = 0;
    for (int d = 0; d < dimension; ++d) {
      j[d] = static_cast<int>(rest % span) - reach;
      rest /= span;
      r2 += static_cast<long>(j[d]) * j[d];
    }
    if (r2 == 0) continue;
    const double u = kPi * static_cast<double>(r2);
    sum += boost::math::tgamma(s, u) * std::pow(u, -s) + boost::math::tgamma(h, u) * std::pow(u, -h);
  }
  const double lambda = -1.0 / s - 1.0 / h + sum;
  return lambda * std::pow(kPi, s) / boost::math::tgamma(s);
}

double singular_origin_weight(int dimension, double alpha, double spacing) {
  return -lattice_zeta(dimension, alpha) * std::pow(spacing, -alpha);
}

Field multiply_singular_power(const Field& f, double alpha) {
  if (f.space() != Space::physical) throw UsageError("singular weights act on physical fields");
  const GridSpec& g = f.grid();
  Field out(g, Space::physical);
  const std::size_t origin = g.origin_index();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == origin) continue;
    const Vec x = g.x_point(i);
    out[i] = std::pow(dot(x, x), -0.5 * alpha) * f[i];
  }
  out[origin] = singular_origin_weight(g.dimension(), alpha, g.dx()) * f[origin];
  return out;
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  os.write(bytes.data(), 8);
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!is) throw ConfigError("truncated field container");
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[b];
  return v;
}

void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_field(std::ostream& os, const Field& f) {
  const GridSpec& g = f.grid();
  put_u64(os, static_cast<std::uint64_t>(g.dimension()));
  put_f64(os, g.half_width());
  put_u64(os, static_cast<std::uint64_t>(g.points_per_axis()));
  put_u64(os, f.space() == Space::physical ? 0u : 1u);
  for (const cplx& v : f.values()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

Field read_field(std::istream& is) {
  const auto n = static_cast<int>(get_u64(is));
  const double L = get_f64(is);
  const auto N = static_cast<int>(get_u64(is));
  const std::uint64_t tag = get_u64(is);
  if (tag > 1) throw ConfigError("unknown space tag in field container");
  GridSpec g(n, L, N);
  std::vector<cplx> values(g.size());
  for (auto& v : values) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = {re, im};
  }
  return Field(g, tag == 0 ? Space::physical : Space::frequency, std::move(values));
}

}  // namespace splab
