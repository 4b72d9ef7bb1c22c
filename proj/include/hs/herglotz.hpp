#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hs/measure.hpp"

namespace hs {

using cplx = std::complex<double>;

struct HerglotzEval {
  cplx value;
  cplx at;
};

/// F_mu(z) = \int (1/(x - z) - x/(1 + x^2)) dmu(x), Im z > 0.
/// Throws NonUpperHalfPlane otherwise.
HerglotzEval transform(const Measure& m, cplx z);

/// G_n(lambda) = \int dmu / ((x - lambda)^2 + 1/n^2), in closed form.
/// Identical to n * Im F_mu(lambda + i/n).
double g_n(const Measure& m, double lambda, double n);

/// Knobs of the divergence classifier. The defaults are the ones every
/// report and test in this project uses.
struct ClassifyConfig {
  int max_k = 40;                 // G_n evaluated at n = 2^0 .. 2^max_k
  double cap = 1e12;              // G_n above this counts as divergent
  double stabilization_tol = 1e-10;  // relative increment threshold
  int stabilization_window = 3;   // consecutive k below threshold
  // A window that has started filling at max_k (the last increment is already
  // below threshold) is completed by continuing the doubling up to this k.
  // Sequences still growing at max_k are not extended.
  int completion_max_k = 100;
};

struct GnWitness {
  int samples = 0;          // number of n values evaluated
  double last_n = 0.0;
  double last_value = 0.0;
  double growth_ratio = 0.0;  // G_{last} / G_{previous}
  std::string reason;        // empty for convergent points
};

/// Convergent(I) / Divergent classification of \int dmu / (x - y)^2.
struct EnergyClass {
  enum class Tag { Convergent, Divergent };
  Tag tag = Tag::Divergent;
  double moment = 0.0;  // I(y), meaningful only when convergent
  GnWitness witness;

  bool convergent() const noexcept { return tag == Tag::Convergent; }
};

EnergyClass inverse_square_moment(const Measure& m, double y, const ClassifyConfig& cfg = {});

/// F_mu(y + i0) for a convergent energy, evaluated in closed form at eps = 0.
/// Throws ForbiddenEnergy when the inverse square moment diverges.
double boundary_value(const Measure& m, double y, const ClassifyConfig& cfg = {});

/// F_mu on the real axis off the support, without classification.
///
/// Caches atom data so root finders can call it millions of times. Points on
/// a density piece with nonvanishing density give NaN.
class RealAxisEvaluator {
 public:
  explicit RealAxisEvaluator(const Measure& m);

  double operator()(double y) const;

 private:
  const Measure* measure_;
  std::vector<double> xs_;
  std::vector<double> ws_;
  double offset_ = 0.0;  // \int x/(1+x^2) dmu
};

}  // namespace hs
