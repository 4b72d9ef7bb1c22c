#include "hs/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hs/detail/piece_integrals.hpp"
#include "hs/error.hpp"

namespace hs {

namespace {

constexpr double kSymbolicZeroTol = 1e-13;

// Shifted coefficients of a piece around y. When y lies on the piece and
// the density vanishes to second order there, the two leading coefficients
// are set to exactly zero so the eps -> 0 limits stay finite.
struct PieceAtPoint {
  std::array<detail::ext, 4> q{};
  detail::ext ua = 0.0L;
  detail::ext ub = 0.0L;
  bool covers = false;     // a <= y <= b
  bool singular = false;   // covers y and p(y), p'(y) not both zero
};

PieceAtPoint piece_at(const DensityPiece& p, double y) {
  PieceAtPoint out;
  out.q = detail::shift_poly(p.coeffs, y);
  out.ua = static_cast<detail::ext>(p.a) - y;
  out.ub = static_cast<detail::ext>(p.b) - y;
  out.covers = p.a <= y && y <= p.b;
  if (!out.covers) return out;

  const detail::ext len = std::max(std::abs(out.ua), std::abs(out.ub));
  detail::ext scale = 0.0L;
  detail::ext pow_len = 1.0L;
  for (detail::ext qj : out.q) {
    scale = std::max(scale, std::abs(qj) * pow_len);
    pow_len *= len;
  }
  const bool value_zero = std::abs(out.q[0]) <= kSymbolicZeroTol * scale;
  const bool slope_zero = std::abs(out.q[1]) * len <= kSymbolicZeroTol * scale;
  if (value_zero && slope_zero) {
    out.q[0] = 0.0;
    out.q[1] = 0.0;
  } else {
    out.singular = true;
  }
  return out;
}

double atom_sum_offset(const Measure& m) {
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.w * a.x / (1.0 + a.x * a.x);
  return s;
}

double piece_offset(const DensityPiece& p) { return detail::piece_kernels(p, 0.0, 1.0).k1; }

bool atom_at(const Measure& m, double y) {
  const auto& atoms = m.atoms();
  auto it = std::lower_bound(atoms.begin(), atoms.end(), y,
                             [](const Atom& a, double v) { return a.x < v; });
  const double tol = merge_tolerance(y);
  if (it != atoms.end() && std::abs(it->x - y) < tol) return true;
  if (it != atoms.begin() && std::abs(std::prev(it)->x - y) < tol) return true;
  return false;
}

}  // namespace

HerglotzEval transform(const Measure& m, cplx z) {
  if (!(z.imag() > 0.0)) {
    std::ostringstream os;
    os << "F_mu is defined for Im z > 0, got z = " << z;
    throw Error(ErrorKind::NonUpperHalfPlane, os.str());
  }
  const double y = z.real();
  const double eps = z.imag();
  double re = 0.0;
  double im = 0.0;
  for (const Atom& a : m.atoms()) {
    const double u = a.x - y;
    const double den = u * u + eps * eps;
    re += a.w * (u / den - a.x / (1.0 + a.x * a.x));
    im += a.w * (eps / den);
  }
  for (const DensityPiece& p : m.pieces()) {
    const auto k = detail::piece_kernels(p, y, eps);
    re += k.k1 - piece_offset(p);
    im += eps * k.k0;
  }
  return {cplx(re, im), z};
}

double g_n(const Measure& m, double lambda, double n) {
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "g_n requires n > 0");
  const double eps = 1.0 / n;
  // accumulate in extended precision and round once, so roundoff does not
  // mask the monotone growth in n once G_n has saturated
  detail::ext sum = 0.0L;
  for (const Atom& a : m.atoms()) {
    const detail::ext u = static_cast<detail::ext>(a.x) - lambda;
    sum += a.w / (u * u + static_cast<detail::ext>(eps) * eps);
  }
  for (const DensityPiece& p : m.pieces()) sum += detail::piece_kernels_ext(p, lambda, eps).k0;
  return static_cast<double>(sum);
}

EnergyClass inverse_square_moment(const Measure& m, double y, const ClassifyConfig& cfg) {
  EnergyClass out;
  if (atom_at(m, y)) {
    out.witness.reason = "atom at y";
    return out;
  }

  std::vector<PieceAtPoint> pieces;
  pieces.reserve(m.pieces().size());
  for (const DensityPiece& p : m.pieces()) {
    pieces.push_back(piece_at(p, y));
    if (pieces.back().singular) {
      out.witness.reason = "density does not vanish to second order at y";
      return out;
    }
  }

  const auto& atoms = m.atoms();
  auto g_at = [&](double eps) {
    detail::ext sum = 0.0L;
    for (const Atom& a : atoms) {
      const detail::ext u = static_cast<detail::ext>(a.x) - y;
      sum += a.w / (u * u + static_cast<detail::ext>(eps) * eps);
    }
    for (const PieceAtPoint& p : pieces) sum += detail::kernel_integrals_ext(p.q, p.ua, p.ub, eps).k0;
    return static_cast<double>(sum);
  };

  double prev = 0.0;
  double last = 0.0;
  int below = 0;
  auto step = [&](int k) {
    prev = last;
    last = g_at(std::ldexp(1.0, -k));
    out.witness.samples = k + 1;
    out.witness.last_n = std::ldexp(1.0, k);
    if (k > 0) {
      const double incr = last - prev;
      const bool small = last == 0.0 || incr <= cfg.stabilization_tol * std::abs(last);
      below = small ? below + 1 : 0;
    }
  };
  int k = 0;
  for (; k <= cfg.max_k && last <= cfg.cap; ++k) step(k);
  // complete a window that started filling before max_k ran out
  for (; below > 0 && below < cfg.stabilization_window && k <= cfg.completion_max_k && last <= cfg.cap; ++k) {
    step(k);
  }
  out.witness.last_value = last;
  out.witness.growth_ratio = prev > 0.0 ? last / prev : 1.0;

  if (last > cfg.cap) {
    out.witness.reason = "G_n exceeded cap";
  } else if (below < cfg.stabilization_window) {
    out.witness.reason = "G_n did not stabilize";
  } else {
    out.tag = EnergyClass::Tag::Convergent;
    out.moment = last;
  }
  return out;
}

double boundary_value(const Measure& m, double y, const ClassifyConfig& cfg) {
  const EnergyClass cls = inverse_square_moment(m, y, cfg);
  if (!cls.convergent()) {
    std::ostringstream os;
    os << "y = " << y << " has divergent inverse square moment (" << cls.witness.reason << ")";
    throw Error(ErrorKind::ForbiddenEnergy, os.str());
  }
  double value = 0.0;
  for (const Atom& a : m.atoms()) value += a.w * (1.0 / (a.x - y) - a.x / (1.0 + a.x * a.x));
  for (const DensityPiece& p : m.pieces()) {
    const PieceAtPoint at = piece_at(p, y);
    value += detail::kernel_integrals(at.q, at.ua, at.ub, 0.0).k1 - piece_offset(p);
  }
  return value;
}

RealAxisEvaluator::RealAxisEvaluator(const Measure& m) : measure_(&m) {
  xs_.reserve(m.atoms().size());
  ws_.reserve(m.atoms().size());
  for (const Atom& a : m.atoms()) {
    xs_.push_back(a.x);
    ws_.push_back(a.w);
  }
  offset_ = atom_sum_offset(m);
  for (const DensityPiece& p : m.pieces()) offset_ += piece_offset(p);
}

double RealAxisEvaluator::operator()(double y) const {
  double value = 0.0;
  const std::size_t n = xs_.size();
  for (std::size_t i = 0; i < n; ++i) value += ws_[i] / (xs_[i] - y);
  for (const DensityPiece& p : measure_->pieces()) {
    const PieceAtPoint at = piece_at(p, y);
    if (at.covers && at.q[0] != 0.0) return std::numeric_limits<double>::quiet_NaN();
    value += detail::kernel_integrals(at.q, at.ua, at.ub, 0.0).k1;
  }
  return value - offset_;
}

}  // namespace hs
