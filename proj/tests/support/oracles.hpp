#pragma once

// Test-only reference computations. Nothing here calls into the closed-form
// kernels of the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hs/measure.hpp"

namespace hs::test {

/// Adaptive Simpson quadrature.
inline double simpson_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 60) {
  auto simpson = [&](double l, double r, double fl, double fm, double fr) {
    return (r - l) / 6.0 * (fl + 4.0 * fm + fr);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double l, double r, double fl, double fm, double fr, double whole, double eps, int d) {
        const double m = 0.5 * (l + r);
        const double lm = 0.5 * (l + m);
        const double rm = 0.5 * (m + r);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(l, m, fl, flm, fm);
        const double right = simpson(m, r, fm, frm, fr);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
          return left + right + (left + right - whole) / 15.0;
        }
        return rec(l, m, fl, flm, fm, left, eps / 2, d - 1) + rec(m, r, fm, frm, fr, right, eps / 2, d - 1);
      };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// \int f dmu by summing atoms and integrating pieces numerically, splitting
/// each piece at `split` when it lies inside.
inline double integrate_numeric(const Measure& m, const std::function<double(double)>& f, double split,
                                double tol = 1e-13) {
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.w * f(a.x);
  for (const DensityPiece& p : m.pieces()) {
    auto g = [&](double x) { return p.density(x) * f(x); };
    if (split > p.a && split < p.b) {
      s += simpson_adaptive(g, p.a, split, tol) + simpson_adaptive(g, split, p.b, tol);
    } else {
      s += simpson_adaptive(g, p.a, p.b, tol);
    }
  }
  return s;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

/// Random valid measure: a few atoms plus up to two nonnegative cubic pieces
/// (products of squares / positive linear factors so positivity is exact).
inline Measure random_measure(std::mt19937_64& gen, bool with_pieces = true) {
  std::vector<Atom> atoms;
  const int n_atoms = std::uniform_int_distribution<int>(0, 6)(gen);
  for (int i = 0; i < n_atoms; ++i) atoms.push_back({uniform(gen, -5, 5), uniform(gen, 0.01, 2.0)});
  std::vector<DensityPiece> pieces;
  const int n_pieces = with_pieces ? std::uniform_int_distribution<int>(0, 2)(gen) : 0;
  for (int i = 0; i < n_pieces; ++i) {
    DensityPiece p;
    p.a = uniform(gen, -4, 3);
    p.b = p.a + uniform(gen, 0.1, 2.0);
    // k (x - r)^2 + s, k, s >= 0: nonnegative everywhere
    const double k = uniform(gen, 0.0, 1.0);
    const double r = uniform(gen, p.a, p.b);
    const double s = uniform(gen, 0.0, 1.0);
    p.coeffs = {k * r * r + s, -2.0 * k * r, k, 0.0};
    pieces.push_back(p);
  }
  if (atoms.empty() && pieces.empty()) atoms.push_back({uniform(gen, -1, 1), 1.0});
  return Measure(std::move(atoms), std::move(pieces));
}

}  // namespace hs::test
