#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hs/error.hpp"
#include "hs/extension_params.hpp"

using namespace hs;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hs::Error");
  return ErrorKind::InvalidArgument;
}

// Independent route: tan(theta) = 1/alpha + c, theta in [0, pi).
double theta_by_tangent(double alpha, double c) {
  double t = std::atan(1.0 / alpha + c);
  if (t < 0) t += kPi;
  return t;
}

}  // namespace

TEST_CASE("gamma_from_coupling") {
  CHECK(gamma_from_coupling({1.0, 0.0}).gamma == -1.0);
  CHECK(gamma_from_coupling({0.0, 3.0}).infinite());
  CHECK(gamma_from_coupling({0.0, -7.0}).infinite());
  CHECK(gamma_from_coupling({-1.0, 2.0}).gamma == -1.0);
  CHECK(gamma_from_coupling({kInfinity, 2.5}).gamma == -2.5);
}

TEST_CASE("v_from_gamma") {
  CHECK(v_from_gamma({kInfinity}).value() == cplx(1.0, 0.0));
  CHECK(std::abs(v_from_gamma({0.0}).value() - cplx(-1.0, 0.0)) < 1e-16);
  // (-1 + i) / (-1 - i) by complex division
  const cplx expected = cplx(-1.0, 1.0) / cplx(-1.0, -1.0);
  CHECK(std::abs(expected - cplx(0.0, -1.0)) < 1e-16);
  CHECK(std::abs(v_from_gamma({-1.0}).value() - expected) < 1e-16);
}

TEST_CASE("unimodularity of v over a wide gamma range") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> exponent(-6.0, 6.0);
  for (int i = 0; i < 10000; ++i) {
    const double g = (i % 2 ? 1.0 : -1.0) * std::pow(10.0, exponent(gen));
    CHECK(std::abs(std::abs(v_from_gamma({g}).value()) - 1.0) <= 1e-14);
  }
  CHECK(std::abs(std::abs(v_from_gamma({1e6}).value()) - 1.0) <= 1e-14);
  CHECK(std::abs(std::abs(v_from_gamma({-1e6}).value()) - 1.0) <= 1e-14);
}

TEST_CASE("theta_from_v") {
  CHECK(theta_from_v(UnimodularV(cplx(1.0, 0.0))).theta() == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(theta_from_v(UnimodularV(cplx(-1.0, 0.0))).theta() == 0.0);
  CHECK(theta_from_v(UnimodularV(cplx(0.0, -1.0))).theta() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(kind_of([] { UnimodularV(cplx(1.1, 0.0)); }) == ErrorKind::NotUnimodular);
}

TEST_CASE("theta_from_coupling examples") {
  CHECK(theta_from_coupling({0.0, 7.0}).theta() == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(theta_from_coupling({1.0, 0.0}).theta() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(std::abs(theta_from_coupling({0.5, 2.0}).theta() - std::atan(4.0)) < 1e-12);
  CHECK(std::abs(std::atan(4.0) - 1.3258176636680326) < 1e-15);
  CHECK(kind_of([] { theta_from_coupling({kInfinity, 1.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("chain identity: Psi_c equals theta(v(gamma(alpha, c)))") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> ua(-50.0, 50.0);
  std::uniform_real_distribution<double> uc(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const Coupling k{ua(gen), uc(gen)};
    if (k.alpha == 0.0) continue;
    const double direct = theta_from_coupling(k).theta();
    const double chain = theta_from_v(v_from_gamma(gamma_from_coupling(k))).theta();
    CHECK(angle_distance_mod_pi(direct, chain) <= 1e-12);
    CHECK(angle_distance_mod_pi(direct, theta_by_tangent(k.alpha, k.c)) <= 1e-12);
  }
}

TEST_CASE("alpha = inf maps to the excluded angle theta'") {
  for (double c : {-3.0, -0.5, 0.0, 0.25, 4.0}) {
    const double theta = theta_from_v(v_from_gamma(gamma_from_coupling({kInfinity, c}))).theta();
    CHECK(angle_distance_mod_pi(theta, excluded_angle(c)) <= 1e-12);
    // tan(theta') = c
    CHECK(angle_distance_mod_pi(excluded_angle(c), std::atan(c)) <= 1e-12);
  }
}

TEST_CASE("coupling_from_theta examples and excluded angles") {
  CHECK(std::abs(coupling_from_theta(ExtensionParam(kPi / 4), 0.0).alpha - 1.0) < 1e-15);
  for (double c : {-5.0, 0.0, 1.0, 3.0}) {
    CHECK(std::abs(coupling_from_theta(ExtensionParam(kPi / 2), c).alpha) < 1e-15);
  }
  CHECK(kind_of([] { coupling_from_theta(ExtensionParam(excluded_angle(1.0)), 1.0); }) == ErrorKind::ExcludedAngle);
  CHECK(kind_of([] { coupling_from_theta(ExtensionParam(0.0), 2.0); }) == ErrorKind::ExcludedAngle);
  CHECK(kind_of([] { (void)ExtensionParam(kPi); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)ExtensionParam(-0.1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("round trip: Psi_c^{-1}(Psi_c(alpha)) = alpha") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> ua(-1000.0, 1000.0);
  std::uniform_real_distribution<double> uc(-10.0, 10.0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const double alpha = ua(gen);
    const double c = uc(gen);
    if (alpha == 0.0) continue;
    const ExtensionParam theta = theta_from_coupling({alpha, c});
    if (angle_distance_mod_pi(theta.theta(), excluded_angle(c)) <= 1e-9 ||
        angle_distance_mod_pi(theta.theta(), 0.0) <= 1e-9) {
      continue;
    }
    ++checked;
    CHECK(std::abs(coupling_from_theta(theta, c).alpha - alpha) <= 1e-10 * std::abs(alpha));
  }
  CHECK(checked > 9900);
}

TEST_CASE("theta(alpha) is continuous on each branch with the expected derivative") {
  // d theta / d alpha = -1 / ((1 + alpha c)^2 + alpha^2)
  for (double c : {-2.0, 0.0, 0.5, 3.0}) {
    for (double alpha = -20.0; alpha <= 20.0; alpha += 0.37) {
      if (std::abs(alpha) < 1e-3 || std::abs(1.0 + alpha * c) < 1e-2) continue;
      const double h = 1e-6 * std::max(1.0, std::abs(alpha));
      const double t1 = theta_from_coupling({alpha - h, c}).theta();
      const double t2 = theta_from_coupling({alpha + h, c}).theta();
      double diff = t2 - t1;
      if (diff > kPi / 2) diff -= kPi;
      if (diff < -kPi / 2) diff += kPi;
      const double fd = diff / (2 * h);
      const double exact = -1.0 / ((1.0 + alpha * c) * (1.0 + alpha * c) + alpha * alpha);
      CHECK(std::abs(fd - exact) <= 0.1 * std::abs(exact));
    }
  }
}
