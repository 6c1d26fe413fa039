#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "heleshaw/spectral.hpp"

namespace heleshaw::geometry {

using Complex = std::complex<double>;

// Conformal maps of the closed unit disk, analytic on a neighborhood of it,
// grouped by closed-form family plus a numeric power-series fallback.
class ConformalMap {
 public:
  // scale * ((1 + alpha zeta) / (1 - alpha zeta))^exponent, 0 <= alpha < 1.
  struct MoebiusPower {
    double scale, alpha, exponent;
  };
  // scale * e^{sigma zeta}.
  struct Exponential {
    double scale, sigma;
  };
  // scale * zeta * e^{b zeta}.
  struct LinearExponential {
    double scale, b;
  };
  // scale * zeta * sqrt(c) * exp(L(zeta^2) / 2) with L the logarithm of
  // (1 - e^{-c w}) / (c w), stored as a power series in w.
  struct EvenSquareRoot {
    double scale, c;
    std::vector<double> log_coeffs;  // L(w) = sum_k log_coeffs[k-1] w^k
  };
  struct Numeric {
    spectral::FourierSeries series;
  };
  using Family =
      std::variant<MoebiusPower, Exponential, LinearExponential, EvenSquareRoot, Numeric>;

  static ConformalMap moebius_power(double scale, double alpha, double exponent);
  static ConformalMap exponential(double scale, double sigma);
  static ConformalMap linear_exponential(double scale, double b);
  static ConformalMap even_square_root(double scale, double c);
  static ConformalMap from_series(spectral::FourierSeries series);

  Complex map(Complex zeta) const;
  Complex derivative(Complex zeta) const;
  const Family& family() const { return family_; }

  // f(conj zeta) = conj(f(zeta)); true for every closed-form family here and
  // for numeric series with real coefficients.
  bool real_on_real_axis() const;

  // f(-zeta) = -f(zeta); only odd Laurent modes present.
  bool odd_symmetry() const;

  // Grid the map was built on (numeric maps), else 0.
  int natural_grid() const;

 private:
  explicit ConformalMap(Family f) : family_(std::move(f)) {}
  Family family_;
};

// Boundary samples z_k = f(e^{i phi_k}) with tangents dz_k = d/dphi f(e^{i phi}).
struct BoundaryCurve {
  int n = 0;
  std::vector<Complex> z;
  std::vector<Complex> dz;
  double angle(int k) const;
};

BoundaryCurve sample_boundary(const ConformalMap& map, int n);

struct UnivalenceVerdict {
  enum class Failure {
    None,
    BoundaryDerivativeZero,   // |f'| vanishes on the unit circle
    DerivativeZeroInsideDisk, // f' winds around 0, so it has interior zeros
    SelfIntersection,         // two boundary parameters map to one point
  };
  bool univalent = true;
  Failure failure = Failure::None;
  double phi1 = 0.0, phi2 = 0.0;  // witness parameters for the failure
  int grid_used = 0;
  // Set when the sweep saw segments closer than its discrimination floor at
  // the largest affordable grid; the verdict is then best-effort.
  bool resolution_limited = false;
};

UnivalenceVerdict check_univalence(const ConformalMap& map, int n = 0);

// Largest-magnitude winding of the sampled curve around a point (angle sum).
int winding_number(const std::vector<Complex>& z, Complex point);

// Bisect a one-parameter family between a univalent and a non-univalent end.
// Returns the threshold to relative tolerance rel_tol; throws BracketError
// if both ends share a verdict.
double critical_parameter(const std::function<ConformalMap(double)>& family,
                          double lo, double hi, double rel_tol = 1e-6);

// Enclosed area (1/2i) oint conj(z) dz of a positively oriented simple
// curve; throws GeometryError for self-intersecting samples or area <= 0.
double domain_area(const BoundaryCurve& curve);

}  // namespace heleshaw::geometry
