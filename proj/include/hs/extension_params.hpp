#pragma once

#include <complex>
#include <limits>

namespace hs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Coupling constant alpha (kInfinity allowed) and extension parameter c of
/// the singular perturbation A_{alpha,c}.
struct Coupling {
  double alpha = 0.0;
  double c = 0.0;

  bool alpha_infinite() const noexcept { return alpha == kInfinity || alpha == -kInfinity; }
};

/// Angle theta in [0, pi) labelling the self-adjoint extension T_theta.
class ExtensionParam {
 public:
  ExtensionParam() = default;
  explicit ExtensionParam(double theta);  // throws unless 0 <= theta < pi

  /// Reduce any finite angle into [0, pi).
  static ExtensionParam reduced(double theta);

  double theta() const noexcept { return theta_; }

 private:
  double theta_ = 0.0;
};

/// gamma in R u {inf}; the point at infinity is stored as kInfinity.
struct GammaParam {
  double gamma = 0.0;

  bool infinite() const noexcept { return gamma == kInfinity || gamma == -kInfinity; }
};

class UnimodularV {
 public:
  explicit UnimodularV(std::complex<double> v);  // throws NotUnimodular

  std::complex<double> value() const noexcept { return v_; }

 private:
  std::complex<double> v_;
};

/// alpha = 0 -> inf, alpha = inf -> -c, else -(1/alpha + c).
GammaParam gamma_from_coupling(const Coupling& k);

/// inf -> 1, else (gamma + i) / (gamma - i).
UnimodularV v_from_gamma(const GammaParam& g);

/// theta = arg(-v) / 2 with arg taking values in [0, 2pi).
ExtensionParam theta_from_v(const UnimodularV& v);

/// Psi_c(alpha) = arg[-(1 + alpha (c - i)) / (1 + alpha (c + i))] / 2.
/// alpha must be finite.
ExtensionParam theta_from_coupling(const Coupling& k);

/// theta' = arg(-(c - i)/(c + i)) / 2, the angle of the alpha = inf
/// extension.
double excluded_angle(double c);

/// Psi_c^{-1}(theta) = -(1 + e^{2 i theta}) / (c - i + (c + i) e^{2 i theta}).
/// Throws ExcludedAngle at theta' and at theta = 0.
Coupling coupling_from_theta(const ExtensionParam& theta, double c);

/// Distance between two angles on the circle R / pi Z.
double angle_distance_mod_pi(double a, double b) noexcept;

}  // namespace hs
