#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "splab/vec.hpp"

namespace splab {

enum class SymbolKind { euclid, lp4, bump, custom };

std::string to_string(SymbolKind kind);

// Value and (optional) gradient of p = a^m.
struct PValue {
  double value = 0.0;
  std::optional<Vec> gradient;
};

/// An elliptic symbol a(xi) = |xi| g(xi/|xi|), positively homogeneous of
/// degree one, together with the order m of the dispersive symbol p = a^m.
///
/// Built-in profiles carry closed-form gradients. Custom profiles fall back
/// to central differences of the degree-zero extension of g (step 1e-5),
/// which yields the tangential gradient on the sphere.
///
/// Immutable after construction; every member function is pure.
class SymbolSpec {
 public:
  using Profile = std::function<double(const Vec& omega)>;
  using ProfileGradient = std::function<Vec(const Vec& omega)>;

  static SymbolSpec euclid(int dimension, double order);
  static SymbolSpec lp4(int dimension, double order);
  // a(xi) = |xi| (1 + epsilon (xi_1/|xi|)^2); requires epsilon > -1.
  static SymbolSpec bump(int dimension, double order, double epsilon);
  static SymbolSpec custom(int dimension, double order, Profile profile,
                           std::optional<ProfileGradient> tangential_gradient = std::nullopt);

  int dimension() const { return dimension_; }
  double order() const { return order_; }
  SymbolKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  std::string describe() const;

  // Returns a copy with a different order m (same profile).
  SymbolSpec with_order(double order) const;

  double a(const Vec& xi) const;
  // Throws DomainError at xi = 0.
  Vec grad_a(const Vec& xi) const;
  double p(const Vec& xi) const;
  // Throws DomainError at xi = 0 when the gradient is requested.
  PValue eval_p(const Vec& xi, bool want_gradient) const;
  // |p'(xi)| = m a^{m-1} |a'(xi)|; throws DomainError at xi = 0.
  double grad_p_norm(const Vec& xi) const;

 private:
  SymbolSpec(int dimension, double order, SymbolKind kind);

  double profile(const Vec& omega) const;

  int dimension_;
  double order_;
  SymbolKind kind_;
  double epsilon_ = 0.0;
  Profile custom_profile_;
  std::optional<ProfileGradient> custom_gradient_;
};

// Max over random xi != 0 and t in {0.5, 2, 7} of |a(t xi) - t a(xi)| / a(t xi),
// combined (max) with the Euler residual |a(xi) - a'(xi).xi| / a(xi).
double homogeneity_residual(const SymbolSpec& spec, int sample_count, std::uint64_t seed = 12345);

}  // namespace splab
