#include "hs/extension_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hs/error.hpp"

namespace hs {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kUnimodularTol = 1e-12;
constexpr double kAngleTol = 1e-12;

// arg valued in [0, 2pi)
double arg_0_2pi(cplx w) {
  double a = std::arg(w);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a = 0.0;
  return a;
}

}  // namespace

ExtensionParam::ExtensionParam(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta < kPi)) {
    std::ostringstream os;
    os << "theta must lie in [0, pi), got " << theta;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

ExtensionParam ExtensionParam::reduced(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "theta must be finite");
  double r = std::fmod(theta, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return ExtensionParam(r);
}

UnimodularV::UnimodularV(std::complex<double> v) : v_(v) {
  if (!(std::abs(std::abs(v) - 1.0) <= kUnimodularTol)) {
    std::ostringstream os;
    os << "|v| = " << std::abs(v) << " is not 1";
    throw Error(ErrorKind::NotUnimodular, os.str());
  }
}

GammaParam gamma_from_coupling(const Coupling& k) {
  if (!std::isfinite(k.c)) throw Error(ErrorKind::InvalidArgument, "c must be finite");
  if (k.alpha == 0.0) return {kInfinity};
  if (k.alpha_infinite()) return {-k.c};
  return {-(1.0 / k.alpha + k.c)};
}

UnimodularV v_from_gamma(const GammaParam& g) {
  if (g.infinite()) return UnimodularV(cplx(1.0, 0.0));
  // (g + i)/(g - i) = (g + i)^2 / (g^2 + 1), written out to keep |v| = 1
  // to rounding for large |g|.
  const double den = g.gamma * g.gamma + 1.0;
  if (std::isinf(den)) return UnimodularV(cplx(1.0, 0.0));
  return UnimodularV(cplx((g.gamma * g.gamma - 1.0) / den, 2.0 * g.gamma / den));
}

ExtensionParam theta_from_v(const UnimodularV& v) {
  return ExtensionParam::reduced(0.5 * arg_0_2pi(-v.value()));
}

ExtensionParam theta_from_coupling(const Coupling& k) {
  if (!std::isfinite(k.alpha)) {
    throw Error(ErrorKind::InvalidArgument,
                "theta_from_coupling needs finite alpha; use the gamma chain for alpha = inf");
  }
  const cplx num = 1.0 + k.alpha * cplx(k.c, -1.0);
  const cplx den = 1.0 + k.alpha * cplx(k.c, 1.0);
  return ExtensionParam::reduced(0.5 * arg_0_2pi(-num / den));
}

double excluded_angle(double c) {
  return ExtensionParam::reduced(0.5 * arg_0_2pi(-cplx(c, -1.0) / cplx(c, 1.0))).theta();
}

Coupling coupling_from_theta(const ExtensionParam& theta, double c) {
  const double t = theta.theta();
  if (angle_distance_mod_pi(t, excluded_angle(c)) <= kAngleTol) {
    throw Error(ErrorKind::ExcludedAngle, "theta equals theta' (the alpha = inf extension)");
  }
  if (angle_distance_mod_pi(t, 0.0) <= kAngleTol) {
    throw Error(ErrorKind::ExcludedAngle, "theta = 0 lies outside the domain of Psi_c^{-1}");
  }
  const cplx e = std::polar(1.0, 2.0 * t);
  const cplx alpha = -(1.0 + e) / (cplx(c, -1.0) + cplx(c, 1.0) * e);
  return {alpha.real(), c};
}

double angle_distance_mod_pi(double a, double b) noexcept {
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

}  // namespace hs
