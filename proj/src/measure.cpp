#include "hs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hs/detail/piece_integrals.hpp"
#include "hs/error.hpp"

namespace hs {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonUpperHalfPlane: return "NonUpperHalfPlane";
    case ErrorKind::ForbiddenEnergy: return "ForbiddenEnergy";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::ExcludedAngle: return "ExcludedAngle";
    case ErrorKind::SameExtension: return "SameExtension";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::SeedExhausted: return "SeedExhausted";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ForbiddenEnergy:
    case ErrorKind::ExcludedAngle:
    case ErrorKind::SameExtension:
    case ErrorKind::DegenerateSpectrum:
    case ErrorKind::DegenerateDenominator:
    case ErrorKind::SeedExhausted:
      return true;
    default:
      return false;
  }
}

double DensityPiece::density(double x) const noexcept {
  return coeffs[0] + x * (coeffs[1] + x * (coeffs[2] + x * coeffs[3]));
}

Window::Window(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "window requires lo < hi, got [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

Measure::Measure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : pieces_(std::move(pieces)) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) { return l.x < r.x; });
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && std::abs(a.x - atoms_.back().x) < merge_tolerance(atoms_.back().x)) {
      atoms_.back().w += a.w;
    } else {
      atoms_.push_back(a);
    }
  }
  std::stable_sort(pieces_.begin(), pieces_.end(),
                   [](const DensityPiece& l, const DensityPiece& r) { return l.a < r.a; });
}

Measure Measure::dirac(double x, double w) { return Measure({{x, w}}, {}); }

std::vector<Window> Measure::support() const {
  std::vector<std::pair<double, double>> spans;
  spans.reserve(atoms_.size() + pieces_.size());
  for (const Atom& a : atoms_) spans.emplace_back(a.x, a.x);
  for (const DensityPiece& p : pieces_) spans.emplace_back(p.a, p.b);
  std::sort(spans.begin(), spans.end());

  std::vector<Window> out;
  for (const auto& [lo, hi] : spans) {
    if (!out.empty() && lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, hi);
    } else {
      Window w;
      w.lo = lo;
      w.hi = hi;
      out.push_back(w);
    }
  }
  return out;
}

double Measure::total_mass() const {
  double mass = 0.0;
  for (const Atom& a : atoms_) mass += a.w;
  for (const DensityPiece& p : pieces_) {
    const auto& c = p.coeffs;
    auto antiderivative = [&c](double x) {
      return x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
    };
    mass += antiderivative(p.b) - antiderivative(p.a);
  }
  return mass;
}

namespace {

// Chebyshev points of the first kind mapped to [a, b], plus both endpoints.
std::vector<double> density_probe_points(double a, double b) {
  constexpr int kCheb = 16;
  std::vector<double> pts{a, b};
  for (int k = 0; k < kCheb; ++k) {
    const double t = std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * kCheb));
    pts.push_back(0.5 * (a + b) + 0.5 * (b - a) * t);
  }
  return pts;
}

}  // namespace

ValidationReport validate(const Measure& m) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.valid = false;
    report.issues.push_back(std::move(msg));
  };

  if (m.atoms().size() > kMaxAtoms) fail("more than 10^6 atoms");
  if (m.pieces().size() > kMaxPieces) fail("more than 10^4 density pieces");

  for (std::size_t i = 0; i < m.atoms().size(); ++i) {
    const Atom& a = m.atoms()[i];
    if (!std::isfinite(a.x) || !std::isfinite(a.w)) {
      fail("atom " + std::to_string(i) + ": non-finite location or weight");
    } else if (!(a.w > 0.0)) {
      std::ostringstream os;
      os << "atom " << i << " at x=" << a.x << ": nonpositive weight " << a.w;
      fail(os.str());
    }
  }
  for (std::size_t i = 1; i < m.atoms().size(); ++i) {
    // Only reachable through NaN locations; construction merges duplicates.
    if (!(m.atoms()[i].x > m.atoms()[i - 1].x)) {
      fail("atoms " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not distinct");
    }
  }

  for (std::size_t i = 0; i < m.pieces().size(); ++i) {
    const DensityPiece& p = m.pieces()[i];
    bool finite = std::isfinite(p.a) && std::isfinite(p.b);
    for (double c : p.coeffs) finite = finite && std::isfinite(c);
    if (!finite) {
      fail("piece " + std::to_string(i) + ": non-finite data");
      continue;
    }
    if (!(p.a < p.b)) {
      fail("piece " + std::to_string(i) + ": breakpoints not ordered (a < b)");
      continue;
    }
    double scale = 0.0;
    for (double x : density_probe_points(p.a, p.b)) scale = std::max(scale, std::abs(p.density(x)));
    for (double x : density_probe_points(p.a, p.b)) {
      if (p.density(x) < -1e-14 * scale) {
        std::ostringstream os;
        os << "piece " << i << ": negative density " << p.density(x) << " at x=" << x;
        fail(os.str());
        break;
      }
    }
  }

  if (report.valid) {
    report.integral_inv_one_plus_sq = weighted_integral(m, Kernel::InvOnePlusSq);
    if (!m.empty() && !(report.integral_inv_one_plus_sq > 0.0)) {
      fail("integral of 1/(1+x^2) is not positive for a nonzero measure");
    }
  }
  return report;
}

double weighted_integral(const Measure& m, Kernel kernel) {
  double sum = 0.0;
  for (const Atom& a : m.atoms()) {
    const double den = 1.0 + a.x * a.x;
    sum += kernel == Kernel::InvOnePlusSq ? a.w / den : a.w * a.x / den;
  }
  // With y = 0 and eps = 1 the Poisson kernels are exactly 1/(1+x^2) and
  // x/(1+x^2).
  for (const DensityPiece& p : m.pieces()) {
    const auto k = detail::piece_kernels(p, 0.0, 1.0);
    sum += kernel == Kernel::InvOnePlusSq ? k.k0 : k.k1;
  }
  return sum;
}

Measure dyadic_benchmark(int depth, double decay) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "dyadic_benchmark: depth must be >= 1");
  if (!(decay > 1.0)) throw Error(ErrorKind::InvalidArgument, "dyadic_benchmark: decay must be > 1");
  // 2 + 4 + ... + 2^depth atoms
  if (depth >= 20 || (std::size_t{1} << (depth + 1)) - 2 > kMaxAtoms) {
    throw Error(ErrorKind::CapacityExceeded,
                "dyadic_benchmark: depth " + std::to_string(depth) + " exceeds the 10^6 atom cap");
  }

  // Every level m carries 2^m atoms of weight decay^-m.
  std::vector<double> level_weight(depth + 1, 0.0);
  long double total = 0.0L;
  for (int lvl = 1; lvl <= depth; ++lvl) {
    level_weight[lvl] = std::pow(decay, -lvl);
    total += std::ldexp(static_cast<long double>(level_weight[lvl]), lvl);
  }

  std::vector<Atom> atoms;
  atoms.reserve((std::size_t{1} << (depth + 1)) - 2);
  for (int lvl = 1; lvl <= depth; ++lvl) {
    const long long denom = 1LL << lvl;
    const double w = static_cast<double>(static_cast<long double>(level_weight[lvl]) / total);
    for (long long k = -denom + 1; k <= denom - 1; k += 2) {
      atoms.push_back({std::ldexp(static_cast<double>(k), -lvl), w});
    }
  }
  return Measure(std::move(atoms), {});
}

}  // namespace hs
