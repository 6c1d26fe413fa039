#include "heleshaw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heleshaw/errors.hpp"

namespace heleshaw::spectral {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform; sign = -1 forward, +1 inverse
// (no normalization).
void fft_radix2(std::vector<Complex>& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / len;
    const Complex wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        Complex u = a[i + k];
        Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}
}  // namespace

bool is_valid_grid_size(int n) {
  return is_power_of_two(n) && n >= kMinGridSize && n <= kMaxGridSize;
}

double CircleGrid::angle(int k) const { return 2.0 * kPi * k / n; }

Complex CircleGrid::node(int k) const {
  const double phi = angle(k);
  return {std::cos(phi), std::sin(phi)};
}

CircleGrid CircleGrid::sample(int n, const std::function<Complex(double)>& fn) {
  if (!is_valid_grid_size(n))
    throw ConfigError("grid size must be a power of two in [64, 32768], got " +
                      std::to_string(n));
  CircleGrid g;
  g.n = n;
  g.values.resize(n);
  for (int k = 0; k < n; ++k) g.values[k] = fn(2.0 * kPi * k / n);
  return g;
}

CircleGrid CircleGrid::from_values(std::vector<Complex> values) {
  const int n = static_cast<int>(values.size());
  if (!is_valid_grid_size(n))
    throw ConfigError("grid size must be a power of two in [64, 32768], got " +
                      std::to_string(n));
  CircleGrid g;
  g.n = n;
  g.values = std::move(values);
  return g;
}

Complex circle_quadrature(const CircleGrid& grid) {
  Complex sum = 0.0;
  for (const Complex& v : grid.values) sum += v;
  return sum * (2.0 * kPi / grid.n);
}

std::vector<Complex> fft_forward(const std::vector<Complex>& values) {
  if (!is_power_of_two(static_cast<int>(values.size())))
    throw ConfigError("transform length must be a power of two");
  std::vector<Complex> a = values;
  fft_radix2(a, -1);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (Complex& c : a) c *= inv;
  return a;
}

std::vector<Complex> fft_inverse(const std::vector<Complex>& coeff) {
  if (!is_power_of_two(static_cast<int>(coeff.size())))
    throw ConfigError("transform length must be a power of two");
  std::vector<Complex> a = coeff;
  fft_radix2(a, +1);
  return a;
}

FourierSeries::FourierSeries(int n) : n_(n), coeff_(n, Complex(0.0)) {
  if (!is_power_of_two(n)) throw ConfigError("series length must be a power of two");
}

FourierSeries::FourierSeries(std::vector<Complex> coeff)
    : n_(static_cast<int>(coeff.size())), coeff_(std::move(coeff)) {
  if (!is_power_of_two(n_)) throw ConfigError("series length must be a power of two");
}

Complex FourierSeries::at(int j) const {
  if (j >= 0 && j < n_ / 2) return coeff_[j];
  if (j >= -n_ / 2 && j < 0) return coeff_[n_ + j];
  return 0.0;
}

void FourierSeries::set(int j, Complex v) {
  if (j >= 0 && j < n_ / 2)
    coeff_[j] = v;
  else if (j >= -n_ / 2 && j < 0)
    coeff_[n_ + j] = v;
  else
    throw ConfigError("coefficient index out of range");
}

Complex FourierSeries::eval(Complex zeta) const {
  // Positive powers by Horner in zeta, negative powers in 1/zeta.
  Complex pos = 0.0;
  for (int j = n_ / 2 - 1; j >= 0; --j) pos = pos * zeta + coeff_[j];
  bool has_neg = false;
  for (int j = n_ / 2; j < n_; ++j)
    if (coeff_[j] != Complex(0.0)) {
      has_neg = true;
      break;
    }
  if (!has_neg) return pos;
  const Complex inv = 1.0 / zeta;
  // Horner in 1/zeta from the most negative index; one factor remains.
  Complex neg = 0.0;
  for (int j = n_ / 2; j < n_; ++j) neg = neg * inv + coeff_[j];
  return pos + neg * inv;
}

Complex FourierSeries::eval_derivative(Complex zeta) const {
  Complex pos = 0.0;
  for (int j = n_ / 2 - 1; j >= 1; --j)
    pos = pos * zeta + coeff_[j] * static_cast<double>(j);
  bool has_neg = false;
  for (int j = n_ / 2; j < n_; ++j)
    if (coeff_[j] != Complex(0.0)) {
      has_neg = true;
      break;
    }
  if (!has_neg) return pos;
  const Complex inv = 1.0 / zeta;
  Complex neg = 0.0;
  for (int j = n_ / 2; j < n_; ++j)
    neg = neg * inv + coeff_[j] * static_cast<double>(j - n_);
  return pos + neg * inv * inv;
}

FourierSeries FourierSeries::derivative_in_angle() const {
  FourierSeries d(n_);
  for (int j = -n_ / 2 + 1; j < n_ / 2; ++j)
    d.set(j, at(j) * Complex(0.0, static_cast<double>(j)));
  // Nyquist mode has no well-defined derivative sign; drop it.
  return d;
}

std::vector<Complex> FourierSeries::values_on_grid() const { return fft_inverse(coeff_); }

double FourierSeries::max_abs() const {
  double m = 0.0;
  for (const Complex& c : coeff_) m = std::max(m, std::abs(c));
  return m;
}

double FourierSeries::tail_abs(int j_min) const {
  double m = 0.0;
  for (int j = j_min; j <= n_ / 2; ++j) {
    m = std::max(m, std::abs(at(j)));
    m = std::max(m, std::abs(at(-j)));
  }
  return m;
}

FourierSeries FourierSeries::resampled(int m) const {
  if (!is_power_of_two(m)) throw ConfigError("series length must be a power of two");
  if (m < n_) {
    const double dropped = tail_abs(m / 2);
    if (dropped > 1e-12 * std::max(max_abs(), 1e-300))
      throw AnalyticityError("resampling would drop significant coefficients");
  }
  FourierSeries out(m);
  const int half = std::min(n_, m) / 2;
  for (int j = -half; j < half; ++j) out.set(j, at(j));
  return out;
}

FourierSeries fourier_coefficients(const CircleGrid& grid) {
  return FourierSeries(fft_forward(grid.values));
}

CauchyProjection cauchy_projection(const CircleGrid& grid) {
  FourierSeries c = fourier_coefficients(grid);
  const int n = c.size();
  CauchyProjection p;
  p.plus = FourierSeries(n);
  p.minus = FourierSeries(n);
  const Complex half_c0 = 0.5 * c.at(0);
  p.plus.set(0, half_c0);
  p.minus.set(0, half_c0);
  for (int j = 1; j < n / 2; ++j) p.plus.set(j, c.at(j));
  for (int j = -n / 2; j < 0; ++j) p.minus.set(j, c.at(j));
  const double top = std::abs(c.at(-n / 2));
  p.resolution_warning = top > 1e-8 * std::max(c.max_abs(), 1e-300);
  return p;
}

QuadratureRule gauss_legendre(int m, double a, double b) {
  if (m < 1) throw ConfigError("quadrature order must be positive");
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  // Newton iteration on P_m from the Chebyshev-like initial guess; standard
  // symmetric construction on [-1, 1].
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    r.nodes[m - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    r.weights[i] = 0.5 * (b - a) * w;
    r.weights[m - 1 - i] = 0.5 * (b - a) * w;
  }
  return r;
}

double find_root_1d(const std::function<double(double)>& fn, double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("invalid root bracket");
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw BracketError("no sign change on the root bracket");
  double x = lo;
  for (int it = 0; it < 200; ++it) {
    // Secant proposal, clipped back to bisection when it leaves the bracket.
    double s = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
    const double fs = fn(s);
    x = s;
    if (std::abs(fs) <= 1e-12) return s;
    if ((fs > 0.0) == (flo > 0.0)) {
      lo = s;
      flo = fs;
    } else {
      hi = s;
      fhi = fs;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(lo), std::abs(hi)))
      return 0.5 * (lo + hi);
  }
  return x;
}

Newton2Result find_root_2d(
    const std::function<std::array<double, 2>(double, double)>& fn,
    double x0, double y0, const Newton2Options& opt) {
  double x = x0, y = y0;
  auto norm = [](const std::array<double, 2>& f) {
    return std::hypot(f[0], f[1]);
  };
  std::array<double, 2> f = fn(x, y);
  double fn_norm = norm(f);
  for (int it = 1; it <= opt.max_iter; ++it) {
    if (fn_norm <= opt.tol) return {x, y, fn_norm, it - 1};
    const double hx = opt.fd_step * std::max(1.0, std::abs(x));
    const double hy = opt.fd_step * std::max(1.0, std::abs(y));
    const std::array<double, 2> fx = fn(x + hx, y);
    const std::array<double, 2> fy = fn(x, y + hy);
    const double j00 = (fx[0] - f[0]) / hx, j01 = (fy[0] - f[0]) / hy;
    const double j10 = (fx[1] - f[1]) / hx, j11 = (fy[1] - f[1]) / hy;
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det))
      throw ConvergenceError("singular Jacobian in 2-d Newton iteration");
    const double dx = -(j11 * f[0] - j01 * f[1]) / det;
    const double dy = -(-j10 * f[0] + j00 * f[1]) / det;
    // Backtracking line search: halve until the residual decreases.
    double step = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      const std::array<double, 2> trial = fn(x + step * dx, y + step * dy);
      const double trial_norm = norm(trial);
      if (std::isfinite(trial_norm) && trial_norm < fn_norm) {
        x += step * dx;
        y += step * dy;
        f = trial;
        fn_norm = trial_norm;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw ConvergenceError("2-d Newton iteration stalled at residual " +
                             std::to_string(fn_norm));
  }
  if (fn_norm <= opt.tol) return {x, y, fn_norm, opt.max_iter};
  throw ConvergenceError("2-d Newton iteration did not converge, residual " +
                         std::to_string(fn_norm));
}

}  // namespace heleshaw::spectral
