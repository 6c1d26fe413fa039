#include "heleshaw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <unordered_map>

#include "heleshaw/errors.hpp"

namespace heleshaw::geometry {

namespace {
constexpr double kPi = std::numbers::pi;

// L(w) = ln((1 - e^{-c w}) / (c w)) as a power series; the nearest
// singularity sits at |w| = 2 pi / c, so the series must clear |w| = 1
// with margin.
std::vector<double> log_series_coefficients(double c) {
  constexpr int kMaxTerms = 600;
  std::vector<double> b;  // power series of (1 - e^{-c w}) / (c w), constant 1 dropped
  b.reserve(kMaxTerms);
  double bk = 1.0;  // (-c)^k / (k+1)!, built by ratio to avoid overflow
  for (int k = 1; k <= kMaxTerms; ++k) {
    bk *= -c / (k + 1);
    b.push_back(bk);
  }
  std::vector<double> l(kMaxTerms, 0.0);
  int used = kMaxTerms;
  int small_run = 0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    double s = b[k - 1];
    for (int j = 1; j < k; ++j) s -= (static_cast<double>(j) / k) * l[j - 1] * b[k - j - 1];
    l[k - 1] = s;
    if (!std::isfinite(s))
      throw AnalyticityError("square-root map series diverged");
    // Coefficients oscillate with suppressed phases, so a single small term
    // is not convergence; require a run of them.
    small_run = std::abs(s) < 1e-17 ? small_run + 1 : 0;
    if (small_run >= 3 && k > 8) {
      used = k;
      break;
    }
  }
  if (!(l.size() >= 3 && std::abs(l[used - 1]) < 1e-15 && std::abs(l[used - 2]) < 1e-15 &&
        std::abs(l[used - 3]) < 1e-15))
    throw AnalyticityError(
        "square-root map series does not converge on the closed disk; "
        "parameter too close to the series radius");
  l.resize(used);
  return l;
}

Complex eval_log_series(const std::vector<double>& l, Complex w) {
  Complex s = 0.0;
  for (auto it = l.rbegin(); it != l.rend(); ++it) s = (s + *it) * w;
  return s;
}

Complex eval_log_series_derivative(const std::vector<double>& l, Complex w) {
  Complex s = 0.0;
  const int m = static_cast<int>(l.size());
  for (int k = m; k >= 1; --k) s = s * w + l[k - 1] * static_cast<double>(k);
  return s;
}

double cross2(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool strict_cross(Complex a1, Complex a2, Complex b1, Complex b2) {
  const double d1 = cross2(b1, b2, a1);
  const double d2 = cross2(b1, b2, a2);
  const double d3 = cross2(a1, a2, b1);
  const double d4 = cross2(a1, a2, b2);
  return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
         ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

bool relaxed_cross(Complex a1, Complex a2, Complex b1, Complex b2) {
  const double d1 = cross2(b1, b2, a1);
  const double d2 = cross2(b1, b2, a2);
  const double d3 = cross2(a1, a2, b1);
  const double d4 = cross2(a1, a2, b2);
  return d1 * d2 <= 0.0 && d3 * d4 <= 0.0;
}

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double segment_gap(Complex a1, Complex a2, Complex b1, Complex b2) {
  return std::min(std::min(point_segment_distance(a1, b1, b2),
                           point_segment_distance(a2, b1, b2)),
                  std::min(point_segment_distance(b1, a1, a2),
                           point_segment_distance(b2, a1, a2)));
}

struct SweepOutcome {
  enum Kind { Clean, Crossing, NearMiss } kind = Clean;
  int i = -1, j = -1;
};

// All-pairs proper-crossing test over a closed polyline, restricted to
// spatially nearby segments via a uniform hash of segment bounding boxes.
// sag[k] bounds how far the true arc can stray from chord k; a clean pass
// is only trusted when every nonadjacent gap exceeds the combined sag.
SweepOutcome segment_sweep(const std::vector<Complex>& z, const std::vector<double>& sag,
                           double scale) {
  const int n = static_cast<int>(z.size());
  double max_len = 1e-300;
  for (int k = 0; k < n; ++k) max_len = std::max(max_len, std::abs(z[(k + 1) % n] - z[k]));
  const double cell = 1.0000001 * max_len;

  auto key = [](long ix, long iy) { return (ix * 73856093L) ^ (iy * 19349663L); };
  std::unordered_map<long, std::vector<int>> buckets;
  buckets.reserve(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    const Complex a = z[k], b = z[(k + 1) % n];
    const long ix0 = static_cast<long>(std::floor(std::min(a.real(), b.real()) / cell));
    const long ix1 = static_cast<long>(std::floor(std::max(a.real(), b.real()) / cell));
    const long iy0 = static_cast<long>(std::floor(std::min(a.imag(), b.imag()) / cell));
    const long iy1 = static_cast<long>(std::floor(std::max(a.imag(), b.imag()) / cell));
    for (long ix = ix0; ix <= ix1; ++ix)
      for (long iy = iy0; iy <= iy1; ++iy) buckets[key(ix, iy)].push_back(k);
  }

  SweepOutcome out;
  double worst_margin = std::numeric_limits<double>::max();
  for (auto& [_, segs] : buckets) {
    for (size_t u = 0; u < segs.size(); ++u) {
      for (size_t v = u + 1; v < segs.size(); ++v) {
        int i = segs[u], j = segs[v];
        if (i > j) std::swap(i, j);
        if (j - i <= 1 || (i == 0 && j == n - 1)) continue;
        const Complex a1 = z[i], a2 = z[(i + 1) % n];
        const Complex b1 = z[j], b2 = z[(j + 1) % n];
        const double floor_ij = 4.0 * (sag[i] + sag[j]) + 1e-13 * scale;
        if (strict_cross(a1, a2, b1, b2)) {
          // Only trust a chord crossing that penetrates deeper than the
          // chord sag; a shallower one may be a discretization artifact.
          auto line_dist = [](Complex p, Complex u, Complex v) {
            return std::abs(cross2(u, v, p)) / std::max(std::abs(v - u), 1e-300);
          };
          const double depth =
              std::min(std::min(line_dist(a1, b1, b2), line_dist(a2, b1, b2)),
                       std::min(line_dist(b1, a1, a2), line_dist(b2, a1, a2)));
          if (depth > floor_ij) {
            out.kind = SweepOutcome::Crossing;
            out.i = i;
            out.j = j;
            return out;
          }
          if (depth - floor_ij < worst_margin) {
            worst_margin = depth - floor_ij;
            out.kind = SweepOutcome::NearMiss;
            out.i = i;
            out.j = j;
          }
          continue;
        }
        const double gap = segment_gap(a1, a2, b1, b2);
        if (gap < floor_ij && gap - floor_ij < worst_margin) {
          worst_margin = gap - floor_ij;
          out.kind = SweepOutcome::NearMiss;
          out.i = i;
          out.j = j;
        }
      }
    }
  }
  return out;
}

std::pair<double, double> refine_crossing(const ConformalMap& map, double a0, double a1,
                                          double b0, double b1) {
  auto at = [&](double phi) { return map.map(std::polar(1.0, phi)); };
  Complex za0 = at(a0), za1 = at(a1), zb0 = at(b0), zb1 = at(b1);
  for (int it = 0; it < 64; ++it) {
    if (a1 - a0 < 1e-10 && b1 - b0 < 1e-10) break;
    const double am = 0.5 * (a0 + a1), bm = 0.5 * (b0 + b1);
    const Complex zam = at(am), zbm = at(bm);
    const std::array<std::array<double, 2>, 2> ha{{{a0, am}, {am, a1}}};
    const std::array<std::array<Complex, 2>, 2> hza{{{za0, zam}, {zam, za1}}};
    const std::array<std::array<double, 2>, 2> hb{{{b0, bm}, {bm, b1}}};
    const std::array<std::array<Complex, 2>, 2> hzb{{{zb0, zbm}, {zbm, zb1}}};
    bool found = false;
    for (int p = 0; p < 2 && !found; ++p)
      for (int q = 0; q < 2 && !found; ++q)
        if (relaxed_cross(hza[p][0], hza[p][1], hzb[q][0], hzb[q][1])) {
          a0 = ha[p][0];
          a1 = ha[p][1];
          za0 = hza[p][0];
          za1 = hza[p][1];
          b0 = hb[q][0];
          b1 = hb[q][1];
          zb0 = hzb[q][0];
          zb1 = hzb[q][1];
          found = true;
        }
    if (!found) break;
  }
  return {0.5 * (a0 + a1), 0.5 * (b0 + b1)};
}

// Argument increment of f' along the circle, with recursive midpoint
// splitting wherever a step turns by more than pi/2. Returns the winding
// count, or nullopt when the splitting budget runs out.
std::optional<double> arc_delta(const ConformalMap& map, double a, double b, Complex va,
                                Complex vb, int depth) {
  const double d = std::arg(vb / va);
  if (std::abs(d) <= 0.5 * kPi) return d;
  if (depth == 0) return std::nullopt;
  const double m = 0.5 * (a + b);
  const Complex vm = map.derivative(std::polar(1.0, m));
  if (!(std::abs(vm) > 1e-300)) return std::nullopt;
  const auto left = arc_delta(map, a, m, va, vm, depth - 1);
  if (!left) return std::nullopt;
  const auto right = arc_delta(map, m, b, vm, vb, depth - 1);
  if (!right) return std::nullopt;
  return *left + *right;
}

std::optional<int> derivative_winding(const ConformalMap& map,
                                      const std::vector<Complex>& fp, int n) {
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * k / n;
    const double b = 2.0 * kPi * (k + 1) / n;
    const auto d = arc_delta(map, a, b, fp[k], fp[(k + 1) % n], 48);
    if (!d) return std::nullopt;
    total += *d;
  }
  const double w = total / (2.0 * kPi);
  const double r = std::round(w);
  if (std::abs(w - r) > 0.25) return std::nullopt;
  return static_cast<int>(r);
}

struct GoldenResult {
  double x, value;
};

GoldenResult golden_min(const std::function<double(double)>& fn, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    }
  }
  const double m = 0.5 * (a + b);
  return {m, fn(m)};
}

double bisect_sign_change(const std::function<double(double)>& fn, double pos, double neg) {
  // fn(pos) >= 0 >= fn(neg); the ends may be in either order along the axis.
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (pos + neg);
    if (std::abs(pos - neg) < 1e-12) return m;
    (fn(m) >= 0.0 ? pos : neg) = m;
  }
  return 0.5 * (pos + neg);
}

// Self-intersection scan for maps symmetric across the real axis: the open
// upper-parameter arc must keep one sign of Im f; a dip through zero pins
// an exact coincidence pair (phi, 2 pi - phi). With quarter_turn set the
// same test runs on -i f(i zeta), which is again symmetric when f is odd,
// catching coincidences on the imaginary axis.
struct AxisScanResult {
  bool found = false;
  double phi1 = 0.0, phi2 = 0.0;
};

AxisScanResult axis_crossing_scan(const ConformalMap& map, const BoundaryCurve& curve,
                                  bool quarter_turn) {
  const int n = curve.n;
  const int m = n / 2;
  const int shift = quarter_turn ? n / 4 : 0;
  double scale = 0.0;
  for (const Complex& w : curve.z) scale = std::max(scale, std::abs(w));
  const double tol = 1e-12 * std::max(scale, 1e-300);

  auto component = [&](Complex w) { return quarter_turn ? -w.real() : w.imag(); };
  auto node_raw = [&](int k) { return component(curve.z[(k + shift) % n]); };
  double total = 0.0;
  for (int k = 1; k < m; ++k) total += node_raw(k);
  const double sgn = total >= 0.0 ? 1.0 : -1.0;
  auto val = [&](double phi) {
    return sgn * component(map.map(std::polar(1.0, phi + (quarter_turn ? 0.5 * kPi : 0.0))));
  };
  auto node_val = [&](int k) { return sgn * node_raw(k); };
  auto witness = [&](double root) -> AxisScanResult {
    if (!quarter_turn) return {true, root, 2.0 * kPi - root};
    double p1 = 0.5 * kPi + root;
    double p2 = 0.5 * kPi - root;
    if (p2 < 0.0) p2 += 2.0 * kPi;
    return {true, p1, p2};
  };

  auto locate_root = [&](int k_neg, double phi_neg) -> std::optional<double> {
    // Walk outward from a negative sample to a solidly positive one.
    for (int j = k_neg - 1; j >= 0; --j)
      if (node_val(j) > tol)
        return bisect_sign_change(val, curve.angle(j), phi_neg);
    for (int j = k_neg + 1; j <= m; ++j)
      if (node_val(j) > tol)
        return bisect_sign_change(val, curve.angle(j), phi_neg);
    return std::nullopt;
  };

  for (int k = 1; k < m; ++k) {
    if (node_val(k) < -tol) {
      const auto root = locate_root(k, curve.angle(k));
      return witness(root.value_or(curve.angle(k)));
    }
  }

  // No negative nodes: polish the local minima and the two end gaps, where
  // a narrow dip can hide between samples.
  auto polish = [&](int lo_idx, int hi_idx) -> std::optional<double> {
    const GoldenResult g = golden_min(val, curve.angle(lo_idx), curve.angle(hi_idx));
    if (g.value >= -tol) return std::nullopt;
    for (int j = lo_idx; j >= 0; --j)
      if (node_val(j) > tol) return bisect_sign_change(val, curve.angle(j), g.x);
    for (int j = hi_idx; j <= m; ++j)
      if (node_val(j) > tol) return bisect_sign_change(val, curve.angle(j), g.x);
    return g.x;
  };

  if (auto r = polish(0, 1)) return witness(*r);
  if (auto r = polish(m - 1, m)) return witness(*r);
  for (int k = 1; k + 1 < m; ++k) {
    if (node_val(k) <= node_val(k - 1) && node_val(k) <= node_val(k + 1)) {
      if (auto r = polish(k - 1, k + 1)) return witness(*r);
    }
  }
  return {};
}

}  // namespace

ConformalMap ConformalMap::moebius_power(double scale, double alpha, double exponent) {
  if (!(scale > 0.0)) throw InvalidParameters("map scale must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidParameters("moebius parameter must lie in (0, 1)");
  if (!(std::isfinite(exponent)) || exponent == 0.0)
    throw InvalidParameters("map exponent must be finite and nonzero");
  return ConformalMap(MoebiusPower{scale, alpha, exponent});
}

ConformalMap ConformalMap::exponential(double scale, double sigma) {
  if (!(scale > 0.0)) throw InvalidParameters("map scale must be positive");
  if (!(sigma > 0.0)) throw InvalidParameters("map exponent rate must be positive");
  return ConformalMap(Exponential{scale, sigma});
}

ConformalMap ConformalMap::linear_exponential(double scale, double b) {
  if (!(scale > 0.0)) throw InvalidParameters("map scale must be positive");
  if (!std::isfinite(b)) throw InvalidParameters("map parameter must be finite");
  return ConformalMap(LinearExponential{scale, b});
}

ConformalMap ConformalMap::even_square_root(double scale, double c) {
  if (!(scale > 0.0)) throw InvalidParameters("map scale must be positive");
  if (!(c > 0.0)) throw InvalidParameters("map parameter must be positive");
  return ConformalMap(EvenSquareRoot{scale, c, log_series_coefficients(c)});
}

ConformalMap ConformalMap::from_series(spectral::FourierSeries series) {
  const double peak = series.max_abs();
  if (peak <= 0.0) throw AnalyticityError("map series is empty");
  double neg = 0.0;
  for (int j = series.min_index(); j < 0; ++j) neg = std::max(neg, std::abs(series.at(j)));
  if (neg > 1e-10 * peak)
    throw AnalyticityError("map series has negative powers; not analytic in the disk");
  const int n = series.size();
  if (series.tail_abs(3 * n / 8) > 1e-4 * peak)
    throw AnalyticityError("map series coefficients do not decay; data unresolved");
  return ConformalMap(Numeric{std::move(series)});
}

Complex ConformalMap::map(Complex zeta) const {
  return std::visit(
      [&](const auto& fam) -> Complex {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MoebiusPower>) {
          const Complex m = (1.0 + fam.alpha * zeta) / (1.0 - fam.alpha * zeta);
          return fam.scale * std::exp(fam.exponent * std::log(m));
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return fam.scale * std::exp(fam.sigma * zeta);
        } else if constexpr (std::is_same_v<T, LinearExponential>) {
          return fam.scale * zeta * std::exp(fam.b * zeta);
        } else if constexpr (std::is_same_v<T, EvenSquareRoot>) {
          const Complex w = zeta * zeta;
          return fam.scale * zeta * std::sqrt(fam.c) *
                 std::exp(0.5 * eval_log_series(fam.log_coeffs, w));
        } else {
          return fam.series.eval(zeta);
        }
      },
      family_);
}

Complex ConformalMap::derivative(Complex zeta) const {
  return std::visit(
      [&](const auto& fam) -> Complex {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MoebiusPower>) {
          const Complex m = (1.0 + fam.alpha * zeta) / (1.0 - fam.alpha * zeta);
          const Complex f = fam.scale * std::exp(fam.exponent * std::log(m));
          return f * fam.exponent * 2.0 * fam.alpha /
                 (1.0 - fam.alpha * fam.alpha * zeta * zeta);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return fam.scale * fam.sigma * std::exp(fam.sigma * zeta);
        } else if constexpr (std::is_same_v<T, LinearExponential>) {
          return fam.scale * std::exp(fam.b * zeta) * (1.0 + fam.b * zeta);
        } else if constexpr (std::is_same_v<T, EvenSquareRoot>) {
          const Complex w = zeta * zeta;
          const Complex half_L = 0.5 * eval_log_series(fam.log_coeffs, w);
          const Complex Lp = eval_log_series_derivative(fam.log_coeffs, w);
          return fam.scale * std::sqrt(fam.c) * std::exp(half_L) * (1.0 + w * Lp);
        } else {
          return fam.series.eval_derivative(zeta);
        }
      },
      family_);
}

bool ConformalMap::real_on_real_axis() const {
  if (const auto* num = std::get_if<Numeric>(&family_)) {
    const double peak = num->series.max_abs();
    double im = 0.0;
    for (const Complex& c : num->series.raw()) im = std::max(im, std::abs(c.imag()));
    return im <= 1e-12 * std::max(peak, 1e-300);
  }
  return true;
}

bool ConformalMap::odd_symmetry() const {
  if (std::holds_alternative<EvenSquareRoot>(family_)) return true;
  if (const auto* num = std::get_if<Numeric>(&family_)) {
    const auto& s = num->series;
    const double peak = s.max_abs();
    double even = 0.0;
    // min_index is even, so stepping by two visits exactly the even modes.
    for (int j = s.min_index(); j <= s.max_index(); j += 2)
      even = std::max(even, std::abs(s.at(j)));
    return even <= 1e-12 * std::max(peak, 1e-300);
  }
  return false;
}

int ConformalMap::natural_grid() const {
  if (const auto* num = std::get_if<Numeric>(&family_)) return num->series.size();
  return 0;
}

double BoundaryCurve::angle(int k) const { return 2.0 * kPi * k / n; }

BoundaryCurve sample_boundary(const ConformalMap& map, int n) {
  if (!spectral::is_valid_grid_size(n))
    throw ConfigError("boundary grid size must be a power of two in [64, 32768]");
  BoundaryCurve c;
  c.n = n;
  if (const auto* num = std::get_if<ConformalMap::Numeric>(&map.family())) {
    spectral::FourierSeries s =
        num->series.size() == n ? num->series : num->series.resampled(n);
    c.z = s.values_on_grid();
    c.dz = s.derivative_in_angle().values_on_grid();
    return c;
  }
  c.z.resize(n);
  c.dz.resize(n);
  for (int k = 0; k < n; ++k) {
    const Complex zeta = std::polar(1.0, 2.0 * kPi * k / n);
    c.z[k] = map.map(zeta);
    c.dz[k] = Complex(0.0, 1.0) * zeta * map.derivative(zeta);
  }
  return c;
}

int winding_number(const std::vector<Complex>& z, Complex point) {
  double total = 0.0;
  const int n = static_cast<int>(z.size());
  for (int k = 0; k < n; ++k) {
    const Complex a = z[k] - point;
    const Complex b = z[(k + 1) % n] - point;
    if (a == Complex(0.0) || b == Complex(0.0))
      throw GeometryError("winding number undefined for a point on the curve");
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

UnivalenceVerdict check_univalence(const ConformalMap& map, int n) {
  if (n != 0 && !spectral::is_valid_grid_size(n))
    throw ConfigError("grid size must be a power of two in [64, 32768]");
  int grid = n != 0 ? n : std::max(spectral::kDefaultGridSize, map.natural_grid());

  while (true) {
    const BoundaryCurve curve = sample_boundary(map, grid);
    UnivalenceVerdict verdict;
    verdict.grid_used = grid;

    // Derivative samples recovered from the tangents dz = i zeta f'.
    std::vector<Complex> fp(grid);
    double fp_min = std::numeric_limits<double>::max(), fp_max = 0.0;
    int fp_argmin = 0;
    for (int k = 0; k < grid; ++k) {
      const Complex zeta = std::polar(1.0, curve.angle(k));
      fp[k] = curve.dz[k] / (Complex(0.0, 1.0) * zeta);
      const double m = std::abs(fp[k]);
      if (m < fp_min) {
        fp_min = m;
        fp_argmin = k;
      }
      fp_max = std::max(fp_max, m);
    }
    if (!(fp_max > 0.0)) throw GeometryError("map is constant");

    if (fp_min <= 1e-10 * fp_max) {
      verdict.univalent = false;
      verdict.failure = UnivalenceVerdict::Failure::BoundaryDerivativeZero;
      verdict.phi1 = verdict.phi2 = curve.angle(fp_argmin);
      return verdict;
    }

    const auto winding = derivative_winding(map, fp, grid);
    if (!winding) {
      if (grid < spectral::kMaxGridSize) {
        grid *= 2;
        continue;
      }
      throw AnalyticityError("derivative argument not resolvable on the largest grid");
    }
    if (*winding != 0) {
      verdict.univalent = false;
      verdict.failure = UnivalenceVerdict::Failure::DerivativeZeroInsideDisk;
      verdict.phi1 = verdict.phi2 = curve.angle(fp_argmin);
      return verdict;
    }

    if (map.real_on_real_axis()) {
      AxisScanResult axis = axis_crossing_scan(map, curve, false);
      if (!axis.found && map.odd_symmetry())
        axis = axis_crossing_scan(map, curve, true);
      if (axis.found) {
        verdict.univalent = false;
        verdict.failure = UnivalenceVerdict::Failure::SelfIntersection;
        verdict.phi1 = axis.phi1;
        verdict.phi2 = axis.phi2;
        return verdict;
      }
    }

    double scale = 0.0;
    for (const Complex& w : curve.z) scale = std::max(scale, std::abs(w));
    std::vector<double> sag(grid, 0.0);
    for (int k = 0; k < grid; ++k) {
      const Complex d2 =
          curve.z[(k + 1) % grid] - 2.0 * curve.z[k] + curve.z[(k + grid - 1) % grid];
      sag[k] = std::abs(d2) / 8.0;
    }
    std::vector<double> seg_sag(grid);
    for (int k = 0; k < grid; ++k) seg_sag[k] = std::max(sag[k], sag[(k + 1) % grid]);

    const SweepOutcome sweep = segment_sweep(curve.z, seg_sag, scale);
    if (sweep.kind == SweepOutcome::Crossing) {
      const auto [p1, p2] =
          refine_crossing(map, curve.angle(sweep.i), curve.angle(sweep.i + 1),
                          curve.angle(sweep.j), curve.angle(sweep.j + 1));
      verdict.univalent = false;
      verdict.failure = UnivalenceVerdict::Failure::SelfIntersection;
      verdict.phi1 = p1;
      verdict.phi2 = p2;
      return verdict;
    }
    if (sweep.kind == SweepOutcome::NearMiss) {
      if (grid < spectral::kMaxGridSize) {
        grid *= 2;
        continue;
      }
      verdict.resolution_limited = true;
    }
    return verdict;
  }
}

double critical_parameter(const std::function<ConformalMap(double)>& family, double lo,
                          double hi, double rel_tol) {
  if (!(lo < hi)) throw ConfigError("invalid parameter bracket");
  if (!(rel_tol > 0.0)) throw ConfigError("tolerance must be positive");
  const bool lo_univalent = check_univalence(family(lo)).univalent;
  const bool hi_univalent = check_univalence(family(hi)).univalent;
  if (lo_univalent == hi_univalent)
    throw BracketError("both bracket ends have the same univalence verdict");
  const double width_scale = std::max(std::abs(lo), std::abs(hi));
  while (hi - lo > rel_tol * width_scale) {
    const double mid = 0.5 * (lo + hi);
    const bool mid_univalent = check_univalence(family(mid)).univalent;
    (mid_univalent == lo_univalent ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double domain_area(const BoundaryCurve& curve) {
  const int n = curve.n;
  double scale = 0.0;
  for (const Complex& w : curve.z) scale = std::max(scale, std::abs(w));
  std::vector<double> sag(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const Complex d2 = curve.z[(k + 1) % n] - 2.0 * curve.z[k] + curve.z[(k + n - 1) % n];
    sag[k] = std::abs(d2) / 8.0;
  }
  std::vector<double> seg_sag(n);
  for (int k = 0; k < n; ++k) seg_sag[k] = std::max(sag[k], sag[(k + 1) % n]);
  if (segment_sweep(curve.z, seg_sag, scale).kind == SweepOutcome::Crossing)
    throw GeometryError("area of a self-intersecting boundary is undefined");
  Complex s = 0.0;
  for (int k = 0; k < n; ++k) s += std::conj(curve.z[k]) * curve.dz[k];
  const double area = 0.5 * (s * (2.0 * kPi / n)).imag();
  if (!(area > 0.0))
    throw GeometryError("boundary encloses nonpositive area; orientation or data invalid");
  return area;
}

}  // namespace heleshaw::geometry
