#pragma once

// Closed-form integrals of a cubic density against the Poisson-type kernels
//
//   K0 = \int_a^b p(x) / ((x - y)^2 + eps^2) dx
//   K1 = \int_a^b p(x) (x - y) / ((x - y)^2 + eps^2) dx
//
// Everything downstream (masses, F_mu, G_n, boundary values) is one of these
// two with a particular (y, eps).

#include <array>
#include <cmath>
#include <limits>

#include "hs/measure.hpp"

namespace hs::detail {

// The sums q_j M_j cancel heavily when y is far from the piece (the shifted
// coefficients and moments are large, the integral is small), so the whole
// evaluation runs in extended precision and rounds once at the end.
using ext = long double;

/// Coefficients of p(u + y) in powers of u.
inline std::array<ext, 4> shift_poly(const std::array<double, 4>& c, double y) noexcept {
  // Taylor expansion around y.
  const ext yl = y;
  const ext y2 = yl * yl;
  return {
      c[0] + c[1] * yl + c[2] * y2 + c[3] * y2 * yl,
      c[1] + 2.0L * c[2] * yl + 3.0L * c[3] * y2,
      c[2] + 3.0L * c[3] * yl,
      static_cast<ext>(c[3]),
  };
}

/// M_j = \int_ua^ub u^j / (u^2 + eps^2) du for j = 0..4.
///
/// For eps == 0 the entries that diverge (interval touching or straddling
/// u = 0) are NaN; callers must not multiply them by a nonzero coefficient.
inline std::array<ext, 5> kernel_moments(ext ua, ext ub, ext eps) noexcept {
  constexpr ext nan = std::numeric_limits<ext>::quiet_NaN();
  std::array<ext, 5> m{};
  const ext e2 = eps * eps;
  if (eps > 0.0L) {
    // arctan(ub/eps) - arctan(ua/eps) without cancellation
    m[0] = std::atan2(eps * (ub - ua), e2 + ua * ub) / eps;
    m[1] = 0.5L * std::log((ub * ub + e2) / (ua * ua + e2));
  } else {
    const bool regular = (ua > 0.0L && ub > 0.0L) || (ua < 0.0L && ub < 0.0L);
    m[0] = regular ? (ub - ua) / (ua * ub) : nan;
    m[1] = regular ? std::log(ub / ua) : nan;
  }
  m[2] = (ub - ua) - (e2 > 0.0L ? e2 * m[0] : 0.0L);
  m[3] = 0.5L * (ub * ub - ua * ua) - (e2 > 0.0L ? e2 * m[1] : 0.0L);
  m[4] = (ub * ub * ub - ua * ua * ua) / 3.0L - (e2 > 0.0L ? e2 * m[2] : 0.0L);
  return m;
}

struct KernelPairExt {
  ext k0 = 0.0L;
  ext k1 = 0.0L;
};

struct KernelPair {
  double k0 = 0.0;
  double k1 = 0.0;
};

/// K0 and K1 for shifted coefficients q on [ua, ub]. Terms with an exactly
/// zero coefficient are skipped, so a density with a zero of order r at
/// u = 0 can be integrated at eps = 0 as long as the surviving terms are
/// finite.
inline KernelPairExt kernel_integrals_ext(const std::array<ext, 4>& q, ext ua, ext ub, ext eps) noexcept {
  const auto m = kernel_moments(ua, ub, eps);
  KernelPairExt out;
  for (int j = 0; j < 4; ++j) {
    if (q[j] == 0.0L) continue;
    out.k0 += q[j] * m[j];
    out.k1 += q[j] * m[j + 1];
  }
  return out;
}

inline KernelPair kernel_integrals(const std::array<ext, 4>& q, ext ua, ext ub, ext eps) noexcept {
  const KernelPairExt k = kernel_integrals_ext(q, ua, ub, eps);
  return {static_cast<double>(k.k0), static_cast<double>(k.k1)};
}

inline KernelPairExt piece_kernels_ext(const DensityPiece& p, double y, double eps) noexcept {
  return kernel_integrals_ext(shift_poly(p.coeffs, y), static_cast<ext>(p.a) - y, static_cast<ext>(p.b) - y, eps);
}

inline KernelPair piece_kernels(const DensityPiece& p, double y, double eps) noexcept {
  return kernel_integrals(shift_poly(p.coeffs, y), static_cast<ext>(p.a) - y, static_cast<ext>(p.b) - y, eps);
}

}  // namespace hs::detail
