#include "heleshaw/field.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "heleshaw/errors.hpp"

namespace heleshaw::field {

namespace {
constexpr double kPi = std::numbers::pi;

double adaptive_integral(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 12, 1e-12, &error);
  return v;
}
}  // namespace

struct MonotoneProfile::Impl {
  Kind kind = Kind::Identity;
  double p = 1.0;
  std::vector<double> xs, ys;
  std::function<double(double)> fwd;
  double lo = 0.0, hi = 0.0;
  bool bounded = false;

  double forward(double x) const {
    switch (kind) {
      case Kind::Identity:
        return x;
      case Kind::Square:
        if (x < 0.0) {
          if (x > -1e-9) return 0.0;  // tolerate roundoff at the edge
          throw DomainError("square profile evaluated at negative argument");
        }
        return x * x;
      case Kind::Power:
        if (x < 0.0) {
          if (x > -1e-9) return 0.0;
          throw DomainError("power profile evaluated at negative argument");
        }
        return std::pow(x, p);
      case Kind::Tabulated: {
        if (x < xs.front() - 1e-9 || x > xs.back() + 1e-9)
          throw DomainError("tabulated profile evaluated outside its range");
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const size_t i = static_cast<size_t>(it - xs.begin()) - 1;
        const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] + t * (ys[i + 1] - ys[i]);
      }
      case Kind::Custom:
        if (x < lo - 1e-9 || x > hi + 1e-9)
          throw DomainError("profile evaluated outside its declared range");
        return fwd(std::clamp(x, lo, hi));
    }
    throw DomainError("unknown profile kind");
  }

  double inverse(double y) const {
    switch (kind) {
      case Kind::Identity:
        return y;
      case Kind::Square:
        if (y < 0.0) {
          if (y > -1e-12) return 0.0;
          throw DomainError("square profile has no negative values");
        }
        return std::sqrt(y);
      case Kind::Power:
        if (y < 0.0) {
          if (y > -1e-12) return 0.0;
          throw DomainError("power profile has no negative values");
        }
        return std::pow(y, 1.0 / p);
      case Kind::Tabulated:
      case Kind::Custom:
        return inverse_by_bisection(y);
    }
    throw DomainError("unknown profile kind");
  }

  double inverse_by_bisection(double y) const {
    double a = (kind == Kind::Tabulated) ? xs.front() : lo;
    double b = (kind == Kind::Tabulated) ? xs.back() : hi;
    double fa = forward(a), fb = forward(b);
    if (y < fa - 1e-9 * (1.0 + std::abs(fa)) || y > fb + 1e-9 * (1.0 + std::abs(fb)))
      throw DomainError("profile inverse evaluated outside the value range");
    if (y <= fa) return a;
    if (y >= fb) return b;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (b - a <= 1e-13 * std::max(1.0, std::abs(m))) return m;
      if (forward(m) < y)
        a = m;
      else
        b = m;
    }
    return 0.5 * (a + b);
  }
};

MonotoneProfile::MonotoneProfile() : impl_(std::make_shared<Impl>()) {}

MonotoneProfile MonotoneProfile::identity() {
  MonotoneProfile m;
  return m;
}

MonotoneProfile MonotoneProfile::square() {
  MonotoneProfile m;
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Square;
  m.impl_ = impl;
  return m;
}

MonotoneProfile MonotoneProfile::power(double p) {
  if (!(p > 0.0)) throw ConfigError("profile exponent must be positive");
  MonotoneProfile m;
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Power;
  impl->p = p;
  m.impl_ = impl;
  return m;
}

MonotoneProfile MonotoneProfile::tabulated(std::vector<double> xs,
                                           std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ConfigError("tabulated profile needs matching tables of length >= 2");
  for (size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]) || !(ys[i] > ys[i - 1]))
      throw ConfigError("tabulated profile must be strictly increasing");
  MonotoneProfile m;
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Tabulated;
  impl->xs = std::move(xs);
  impl->ys = std::move(ys);
  m.impl_ = impl;
  return m;
}

MonotoneProfile MonotoneProfile::from_functions(std::function<double(double)> fwd,
                                                double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("profile range must be nonempty");
  // Spot check monotonicity; a full guarantee is the caller's burden.
  double prev = fwd(lo);
  for (int i = 1; i <= 64; ++i) {
    const double x = lo + (hi - lo) * i / 64.0;
    const double v = fwd(x);
    if (!(v > prev)) throw ConfigError("profile function is not increasing");
    prev = v;
  }
  MonotoneProfile m;
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Custom;
  impl->fwd = std::move(fwd);
  impl->lo = lo;
  impl->hi = hi;
  impl->bounded = true;
  m.impl_ = impl;
  return m;
}

double MonotoneProfile::forward(double x) const { return impl_->forward(x); }
double MonotoneProfile::inverse(double y) const { return impl_->inverse(y); }

double MonotoneProfile::domain_lo() const {
  switch (impl_->kind) {
    case Kind::Identity:
      return -std::numeric_limits<double>::infinity();
    case Kind::Square:
    case Kind::Power:
      return 0.0;
    case Kind::Tabulated:
      return impl_->xs.front();
    case Kind::Custom:
      return impl_->lo;
  }
  return 0.0;
}

double MonotoneProfile::domain_hi() const {
  switch (impl_->kind) {
    case Kind::Identity:
    case Kind::Square:
    case Kind::Power:
      return std::numeric_limits<double>::infinity();
    case Kind::Tabulated:
      return impl_->xs.back();
    case Kind::Custom:
      return impl_->hi;
  }
  return 0.0;
}

MonotoneProfile::Kind MonotoneProfile::kind() const { return impl_->kind; }

Complex xi_value(HarmonicCore core, Complex z) {
  switch (core) {
    case HarmonicCore::Identity:
      return z;
    case HarmonicCore::HalfSquare:
      return 0.5 * z * z;
  }
  throw DomainError("unknown harmonic core");
}

Complex xi_derivative(HarmonicCore core, Complex z) {
  switch (core) {
    case HarmonicCore::Identity:
      return 1.0;
    case HarmonicCore::HalfSquare:
      return z;
  }
  throw DomainError("unknown harmonic core");
}

Complex xi_inverse(HarmonicCore core, Complex w) {
  switch (core) {
    case HarmonicCore::Identity:
      return w;
    case HarmonicCore::HalfSquare: {
      // Principal square root of 2w lands in Re >= 0.
      return std::sqrt(2.0 * w);
    }
  }
  throw DomainError("unknown harmonic core");
}

double eval_G(const FieldSpec& field, Complex z) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PointChargeField>) {
          double g = 0.0;
          for (const Charge& c : f.charges) {
            const double r = std::abs(z - c.position);
            if (r == 0.0)
              throw DomainError("potential evaluated at a charge location");
            g += c.strength / (2.0 * kPi) * std::log(r);
          }
          return g;
        } else if constexpr (std::is_same_v<T, UnidirectionalField>) {
          return f.profile.forward(z.real());
        } else if constexpr (std::is_same_v<T, AxisymmetricField>) {
          return f.profile.forward(std::norm(z));
        } else if constexpr (std::is_same_v<T, ComposedHarmonicField>) {
          return f.profile.forward(xi_value(f.core, z).real());
        } else if constexpr (std::is_same_v<T, NonPlanarChannelField>) {
          const double s = z.real();
          const auto& e = f.elevation;
          auto smap = [&](double x) { return conformal_coordinate_1d(e, x); };
          const double s_lo = smap(f.x_lo), s_hi = smap(f.x_hi);
          if (s < s_lo - 1e-9 || s > s_hi + 1e-9)
            throw DomainError("point outside the declared channel range");
          double a = f.x_lo, b = f.x_hi;
          for (int it = 0; it < 100 && b - a > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
            const double m = 0.5 * (a + b);
            (smap(m) < s ? a : b) = m;
          }
          return e.height(0.5 * (a + b));
        } else {
          const NonPlanarRadialField& nr = f;
          const double rho = std::abs(z);
          const auto& e = nr.elevation;
          auto rmap = [&](double r) { return conformal_coordinate_radial(e, r); };
          const double R_lo = rmap(nr.r_lo), R_hi = rmap(nr.r_hi);
          if (rho < R_lo - 1e-9 || rho > R_hi + 1e-9)
            throw DomainError("point outside the declared radial range");
          double a = nr.r_lo, b = nr.r_hi;
          for (int it = 0; it < 100 && b - a > 1e-13 * std::max(1.0, b); ++it) {
            const double m = 0.5 * (a + b);
            (rmap(m) < rho ? a : b) = m;
          }
          return e.height(0.5 * (a + b));
        }
      },
      field);
}

Complex eval_F(const FieldSpec& field, Complex z) {
  const auto* pc = std::get_if<PointChargeField>(&field);
  if (!pc)
    throw UnsupportedScenario(
        "complex potential is only defined for point-charge fields");
  Complex F = 0.0;
  for (const Charge& c : pc->charges) {
    const Complex d = z - c.position;
    if (d == Complex(0.0))
      throw DomainError("potential evaluated at a charge location");
    F += c.strength / (2.0 * kPi) * std::log(d);
  }
  return F;
}

Complex eval_omega(const FieldSpec& field, Complex z) {
  const auto* pc = std::get_if<PointChargeField>(&field);
  if (!pc)
    throw UnsupportedScenario(
        "complex potential is only defined for point-charge fields");
  Complex w = 0.0;
  for (const Charge& c : pc->charges) {
    const Complex d = z - c.position;
    if (d == Complex(0.0))
      throw DomainError("potential evaluated at a charge location");
    w += c.strength / (2.0 * kPi) / d;
  }
  return w;
}

Complex eval_omega_derivative(const FieldSpec& field, Complex z) {
  const auto* pc = std::get_if<PointChargeField>(&field);
  if (!pc)
    throw UnsupportedScenario(
        "complex potential is only defined for point-charge fields");
  Complex w = 0.0;
  for (const Charge& c : pc->charges) {
    const Complex d = z - c.position;
    if (d == Complex(0.0))
      throw DomainError("potential evaluated at a charge location");
    w -= c.strength / (2.0 * kPi) / (d * d);
  }
  return w;
}

bool is_point_charge_field(const FieldSpec& field) {
  return std::holds_alternative<PointChargeField>(field);
}

double conformal_coordinate_1d(const ElevationProfile& elevation, double x) {
  const auto& slope = elevation.slope;
  return adaptive_integral(
      [&](double t) { return std::sqrt(1.0 + slope(t) * slope(t)); }, 0.0, x);
}

double conformal_coordinate_radial(const ElevationProfile& elevation, double r) {
  if (!(r > 0.0)) throw DomainError("radial coordinate requires r > 0");
  const auto& slope = elevation.slope;
  const double integral = adaptive_integral(
      [&](double t) { return std::sqrt(1.0 + slope(t) * slope(t)) / t; }, 1.0, r);
  return std::exp(integral);
}

MonotoneProfile effective_channel_profile(const NonPlanarChannelField& field) {
  const auto e = field.elevation;
  const double s_lo = conformal_coordinate_1d(e, field.x_lo);
  const double s_hi = conformal_coordinate_1d(e, field.x_hi);
  const double x_lo = field.x_lo, x_hi = field.x_hi;
  auto fwd = [e, x_lo, x_hi](double s) {
    double a = x_lo, b = x_hi;
    for (int it = 0; it < 100 && b - a > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
      const double m = 0.5 * (a + b);
      (conformal_coordinate_1d(e, m) < s ? a : b) = m;
    }
    return e.height(0.5 * (a + b));
  };
  return MonotoneProfile::from_functions(fwd, s_lo, s_hi);
}

MonotoneProfile effective_radial_profile(const NonPlanarRadialField& field) {
  const auto e = field.elevation;
  const double R_lo = conformal_coordinate_radial(e, field.r_lo);
  const double R_hi = conformal_coordinate_radial(e, field.r_hi);
  const double r_lo = field.r_lo, r_hi = field.r_hi;
  auto fwd = [e, r_lo, r_hi](double R) {
    double a = r_lo, b = r_hi;
    for (int it = 0; it < 100 && b - a > 1e-13 * std::max(1.0, b); ++it) {
      const double m = 0.5 * (a + b);
      (conformal_coordinate_radial(e, m) < R ? a : b) = m;
    }
    return e.height(0.5 * (a + b));
  };
  return MonotoneProfile::from_functions(fwd, R_lo, R_hi);
}

}  // namespace heleshaw::field
