#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace hs {

/// Point mass `weight * delta_location`.
struct Atom {
  double x = 0.0;
  double w = 0.0;
};

/// Density `coeffs[0] + coeffs[1] x + coeffs[2] x^2 + coeffs[3] x^3` on [a, b].
/// Coefficients are in the global variable x, not shifted to a.
struct DensityPiece {
  double a = 0.0;
  double b = 0.0;
  std::array<double, 4> coeffs{};

  double density(double x) const noexcept;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;

  Window() = default;
  Window(double lo_, double hi_);  // throws InvalidArgument unless lo < hi

  bool contains(double y) const noexcept { return lo <= y && y <= hi; }
  double width() const noexcept { return hi - lo; }
};

inline constexpr double kMergeRelTol = 1e-12;
inline constexpr std::size_t kMaxAtoms = 1'000'000;
inline constexpr std::size_t kMaxPieces = 10'000;

/// Atoms closer than this are considered the same point.
inline double merge_tolerance(double x) noexcept {
  return kMergeRelTol * (x < 0 ? (-x > 1.0 ? -x : 1.0) : (x > 1.0 ? x : 1.0));
}

/// Finite positive Borel measure: atoms plus piecewise cubic densities.
///
/// Construction sorts atoms and merges near-duplicates (weights summed) but
/// does not reject invalid data; `validate` reports what is wrong. Instances
/// are immutable.
class Measure {
 public:
  Measure() = default;
  Measure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  static Measure dirac(double x, double w = 1.0);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensityPiece>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return atoms_.empty() && pieces_.empty(); }

  /// Closure of atoms and piece intervals, as sorted disjoint intervals
  /// (degenerate intervals for isolated atoms).
  std::vector<Window> support() const;

  /// Sum of atom weights plus integral of densities.
  double total_mass() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> issues;
  double integral_inv_one_plus_sq = 0.0;  // \int dmu / (1 + x^2)
};

ValidationReport validate(const Measure& m);

enum class Kernel {
  InvOnePlusSq,       // 1 / (1 + x^2)
  IdentityOverOnePlusSq,  // x / (1 + x^2)
};

/// Exact integral of the kernel against m (closed-form antiderivatives on
/// density pieces).
double weighted_integral(const Measure& m, Kernel kernel);

/// Atoms at odd k / 2^m, m = 1..depth, |k / 2^m| <= 1, weight decay^-m,
/// normalized to unit mass.
Measure dyadic_benchmark(int depth, double decay);

}  // namespace hs
