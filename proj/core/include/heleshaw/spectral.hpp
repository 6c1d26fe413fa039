#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace heleshaw::spectral {

using Complex = std::complex<double>;

constexpr int kMinGridSize = 64;
constexpr int kMaxGridSize = 32768;
constexpr int kDefaultGridSize = 2048;

bool is_valid_grid_size(int n);

// Uniform samples v_k = fn(phi_k) at phi_k = 2 pi k / n on the unit circle.
// n must be a power of two in [kMinGridSize, kMaxGridSize].
struct CircleGrid {
  int n = 0;
  std::vector<Complex> values;

  double angle(int k) const;
  Complex node(int k) const;  // e^{i phi_k}

  static CircleGrid sample(int n, const std::function<Complex(double)>& fn);
  static CircleGrid from_values(std::vector<Complex> values);
};

// Trapezoid rule (2 pi / n) sum v_k; spectrally accurate for smooth
// periodic integrands.
Complex circle_quadrature(const CircleGrid& grid);

// Forward/inverse radix-2 transform between node values and Fourier
// coefficients c_j = (1/n) sum_k v_k e^{-i j phi_k}.
std::vector<Complex> fft_forward(const std::vector<Complex>& values);
std::vector<Complex> fft_inverse(const std::vector<Complex>& coeff);

// Laurent coefficients c_j for j in [-n/2, n/2), stored in transform order:
// coeff[j] for 0 <= j < n/2, coeff[n+j] for -n/2 <= j < 0.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(int n);
  explicit FourierSeries(std::vector<Complex> coeff);

  int size() const { return n_; }
  int max_index() const { return n_ / 2 - 1; }
  int min_index() const { return -n_ / 2; }

  Complex at(int j) const;        // 0 outside the stored range
  void set(int j, Complex v);

  // sum_j c_j zeta^j at an arbitrary point (Horner in zeta and 1/zeta).
  Complex eval(Complex zeta) const;
  Complex eval_derivative(Complex zeta) const;

  FourierSeries derivative_in_angle() const;  // c_j -> i j c_j
  std::vector<Complex> values_on_grid() const;

  double max_abs() const;
  // Largest |c_j| over |j| >= j_min; used for decay diagnostics.
  double tail_abs(int j_min) const;

  // Same coefficients re-indexed on a grid of size m (zero padded or
  // truncated; truncation requires the dropped tail to be negligible).
  FourierSeries resampled(int m) const;

  const std::vector<Complex>& raw() const { return coeff_; }

 private:
  int n_ = 0;
  std::vector<Complex> coeff_;
};

FourierSeries fourier_coefficients(const CircleGrid& grid);

// Splitting of a circle function into parts analytic inside / outside the
// unit disk. c_0 is shared half and half; the Nyquist coefficient belongs
// to `minus`. `resolution_warning` is set when the Nyquist coefficient
// exceeds 1e-8 of the largest coefficient, i.e. the grid does not resolve
// the data.
struct CauchyProjection {
  FourierSeries plus;
  FourierSeries minus;
  bool resolution_warning = false;
};

CauchyProjection cauchy_projection(const CircleGrid& grid);

// Nodes/weights of m-point Gauss-Legendre quadrature on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int m, double a, double b);

// Bisection/secant hybrid; fn must change sign on [lo, hi]. Terminates
// when |fn| <= 1e-12 or the bracket collapses to machine width.
double find_root_1d(const std::function<double(double)>& fn, double lo, double hi);

struct Newton2Options {
  int max_iter = 100;
  double tol = 1e-10;
  double fd_step = 1e-7;
};

struct Newton2Result {
  double x = 0;
  double y = 0;
  double residual_norm = 0;
  int iterations = 0;
};

// Damped Newton iteration with finite-difference Jacobian for a 2-d
// root problem. Throws ConvergenceError if the residual does not reach
// opt.tol within opt.max_iter iterations.
Newton2Result find_root_2d(
    const std::function<std::array<double, 2>(double, double)>& fn,
    double x0, double y0, const Newton2Options& opt = {});

}  // namespace heleshaw::spectral
