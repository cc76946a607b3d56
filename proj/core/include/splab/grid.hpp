#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "splab/vec.hpp"

namespace splab {

inline constexpr std::size_t kDefaultPointCap = std::size_t{1} << 24;

/// Box [-L, L)^n sampled at x_j = -L + j dx, dx = 2L/N, with the dual
/// frequency lattice xi_k = k pi / L, k = -N/2 .. N/2-1 per axis.
/// Lattice storage is row-major with axis 0 slowest; frequency index i maps
/// to k = i - N/2, so the origin sits at index N/2 on both lattices.
class GridSpec {
 public:
  GridSpec(int dimension, double half_width, int points_per_axis,
           std::size_t point_cap = kDefaultPointCap);

  int dimension() const { return dimension_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return points_; }

  double dx() const { return 2.0 * half_width_ / points_; }
  double dxi() const { return kPi / half_width_; }
  double nyquist() const { return kPi * points_ / (2.0 * half_width_); }
  double cell_volume() const;
  double freq_cell_volume() const;
  std::size_t size() const { return size_; }
  std::size_t origin_index() const;

  double x_coord(int j) const { return -half_width_ + j * dx(); }
  double xi_coord(int i) const { return (i - points_ / 2) * dxi(); }
  Vec x_point(std::size_t flat) const;
  Vec xi_point(std::size_t flat) const;

  // Same box with N doubled.
  GridSpec refined() const;

  bool operator==(const GridSpec& other) const;

 private:
  int dimension_;
  double half_width_;
  int points_;
  std::size_t size_;
};

enum class Space { physical, frequency };

/// Complex samples on a lattice, tagged as living in physical or frequency
/// space. Norms and inner products carry the lattice cell volume of the tag.
class Field {
 public:
  Field(GridSpec grid, Space space);
  Field(GridSpec grid, Space space, std::vector<cplx> values);

  static Field sample(const GridSpec& grid, Space space,
                      const std::function<cplx(const Vec&)>& fn);

  const GridSpec& grid() const { return grid_; }
  Space space() const { return space_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  bool zero_mode_annihilated() const { return zero_mode_annihilated_; }
  void set_zero_mode_annihilated(bool v) { zero_mode_annihilated_ = v; }

  Vec point(std::size_t flat) const;
  double cell_volume() const;
  double norm() const;
  double max_abs() const;
  // Lattice inner product (f, g) = sum f conj(g) dV.
  cplx inner(const Field& other) const;
  bool is_zero() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx s);

 private:
  GridSpec grid_;
  Space space_;
  std::vector<cplx> values_;
  bool zero_mode_annihilated_ = false;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

// Continuum transform (2 pi)^{-n/2} int e^{-ix.xi} f dx on the lattice.
Field forward_ft(const Field& f);
Field inverse_ft(const Field& F);

// Direct-sum quadrature of f^(xi) at arbitrary targets.
std::vector<cplx> nuft_eval(const Field& f, std::span<const Vec> targets);
cplx nuft_eval(const Field& f, const Vec& target);

// Trigonometric interpolation of a frequency-tagged field at off-lattice points.
std::vector<cplx> interpolate_frequency(const Field& F, std::span<const Vec> targets);

enum class WeightKind { japanese_bracket, pure_power };

// ||<x>^s f|| or ||x|^s f||; for pure_power with s < 0 the origin cell is skipped.
double weighted_norm(const Field& f, double s, WeightKind kind);

// Analytic continuation of sum_{j in Z^n, j != 0} |j|^{-alpha}, 0 < alpha < n.
double lattice_zeta(int dimension, double alpha);

// Origin weight w0 making h^n [sum_{j!=0} |x_j|^{-alpha} g(x_j) + w0 g(0)]
// a high-order quadrature of int |x|^{-alpha} g dx on the lattice h Z^n.
double singular_origin_weight(int dimension, double alpha, double spacing);

// Multiplies a physical field by |x|^{-alpha}, using the corrected origin
// weight instead of the singular sample.
Field multiply_singular_power(const Field& f, double alpha);

// Flat binary container: n, L, N, space tag (8 bytes LE each), then re/im
// float64 LE pairs in row-major lattice order.
void write_field(std::ostream& os, const Field& f);
Field read_field(std::istream& is);

}  // namespace splab
