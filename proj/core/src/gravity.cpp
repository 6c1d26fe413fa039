#include "heleshaw/gravity.hpp"

#include <cmath>
#include <numbers>

#include "heleshaw/errors.hpp"

namespace heleshaw::gravity {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

Complex CauchyTransform::eval(Complex w) const {
  Complex value = 0.0;
  for (const auto& p : poles) {
    const Complex d = w - p.pole;
    if (d == Complex(0.0)) throw DomainError("evaluation point hits a pole");
    value += p.residue / d;
  }
  for (const auto& l : logs) {
    const Complex d = w - l.point;
    if (d == Complex(0.0)) {
      throw DomainError("evaluation point hits a log singularity");
    }
    value += l.coefficient * std::log(d);
  }
  return value;
}

Complex CauchyTransform::area_coefficient() const {
  // chi ~ (sum residues) / w + sum c_j log(w - p_j) at infinity, and
  // log(w - p) = log(w) - p / w + O(1/w^2), so the log block contributes
  // (sum c_j) log(w) - (sum c_j p_j) / w.  The log(w) part must cancel.
  Complex residue_sum = 0.0;
  for (const auto& p : poles) residue_sum += p.residue;
  Complex log_sum = 0.0;
  Complex first_moment = 0.0;
  double log_scale = 0.0;
  for (const auto& l : logs) {
    log_sum += l.coefficient;
    first_moment += l.coefficient * l.point;
    log_scale = std::max(log_scale, std::abs(l.coefficient));
  }
  if (std::abs(log_sum) > 1e-12 * std::max(log_scale, 1.0)) {
    throw AnalyticityError(
        "log coefficients do not cancel; transform grows at infinity");
  }
  return residue_sum - first_moment;
}

CauchyTransform CauchyTransform::translated(Complex d) const {
  CauchyTransform out = *this;
  for (auto& p : out.poles) p.pole += d;
  for (auto& l : out.logs) l.point += d;
  return out;
}

CauchyTransform CauchyTransform::simplified() const {
  // Coincidence means bitwise-equal positions.  This is deliberate: the
  // closed-form evolution and its split build positions from identical
  // expressions, and merging only those keeps coefficient arithmetic
  // exact instead of smearing it over a tolerance.
  CauchyTransform out;
  for (const auto& p : poles) {
    bool merged = false;
    for (auto& q : out.poles) {
      if (q.pole == p.pole) {
        q.residue += p.residue;
        merged = true;
        break;
      }
    }
    if (!merged) out.poles.push_back(p);
  }
  std::erase_if(out.poles,
                [](const PoleTerm& p) { return p.residue == Complex(0.0); });
  for (const auto& l : logs) {
    bool merged = false;
    for (auto& m : out.logs) {
      if (m.point == l.point) {
        m.coefficient += l.coefficient;
        merged = true;
        break;
      }
    }
    if (!merged) out.logs.push_back(l);
  }
  std::erase_if(out.logs,
                [](const LogTerm& l) { return l.coefficient == Complex(0.0); });
  return out;
}

CauchyTransform add(const CauchyTransform& a, const CauchyTransform& b) {
  CauchyTransform out = a;
  out.poles.insert(out.poles.end(), b.poles.begin(), b.poles.end());
  out.logs.insert(out.logs.end(), b.logs.begin(), b.logs.end());
  return out.simplified();
}

CauchyTransform transform_of_disk(Complex center, double coefficient) {
  if (!finite(center) || !std::isfinite(coefficient)) {
    throw ConfigError("disk transform needs finite center and coefficient");
  }
  if (coefficient < 0.0) {
    throw ConfigError("disk transform needs a nonnegative coefficient");
  }
  CauchyTransform chi;
  if (coefficient > 0.0) chi.poles.push_back({Complex(coefficient), center});
  return chi;
}

DiskData disk_of_transform(const CauchyTransform& chi) {
  const CauchyTransform s = chi.simplified();
  if (!s.logs.empty() || s.poles.size() > 1) {
    throw GeometryError("transform is not a single circular blob");
  }
  if (s.poles.empty()) return {Complex(0.0), 0.0};
  const auto& p = s.poles.front();
  if (std::abs(p.residue.imag()) > 1e-14 * std::abs(p.residue) ||
      p.residue.real() < 0.0) {
    throw GeometryError("residue is not a nonnegative real, so no disk");
  }
  return {p.pole, p.residue.real()};
}

GravityScenario GravityScenario::with_sources(double drift,
                                              CauchyTransform initial,
                                              std::vector<PointSource> sources) {
  if (!std::isfinite(drift) || drift <= 0.0) {
    throw ConfigError("drift speed must be positive");
  }
  for (const auto& p : initial.poles) {
    if (!finite(p.pole) || !finite(p.residue)) {
      throw ConfigError("initial transform has non-finite terms");
    }
  }
  if (!initial.logs.empty()) {
    throw UnsupportedScenario(
        "initial transform must be rational (pole terms only)");
  }
  for (const auto& s : sources) {
    if (!std::isfinite(s.strength) || !finite(s.position)) {
      throw ConfigError("source terms must be finite");
    }
  }
  GravityScenario sc;
  sc.drift = drift;
  sc.initial = std::move(initial);
  sc.sources = std::move(sources);
  return sc;
}

GravityScenario GravityScenario::with_dipole(double drift,
                                             double initial_coefficient,
                                             double dipole_moment) {
  if (!std::isfinite(drift) || drift <= 0.0) {
    throw ConfigError("drift speed must be positive");
  }
  if (!std::isfinite(initial_coefficient) || initial_coefficient < 0.0) {
    throw ConfigError("initial blob coefficient must be nonnegative");
  }
  if (!std::isfinite(dipole_moment)) {
    throw ConfigError("dipole moment must be finite");
  }
  GravityScenario sc;
  sc.drift = drift;
  sc.initial = transform_of_disk(Complex(0.0), initial_coefficient);
  sc.has_dipole = true;
  sc.dipole_moment = dipole_moment;
  return sc;
}

CauchyTransform evolve_transform(const GravityScenario& scenario, double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("evolution time must be nonnegative");
  }
  if (t == 0.0) return scenario.initial;

  const double C = scenario.drift;
  if (scenario.has_dipole) {
    // The dipole pins a steady blob of coefficient mu / C at the origin;
    // the rest of the initial blob translates with the drift.  Written
    // with exactly these expressions so the split below reproduces the
    // coefficients bit for bit.
    double A = 0.0;
    if (!scenario.initial.poles.empty()) {
      A = scenario.initial.poles.front().residue.real();
    }
    const double mu = scenario.dipole_moment;
    CauchyTransform chi;
    chi.poles.push_back({Complex(mu / C), Complex(0.0)});
    chi.poles.push_back({Complex(A - mu / C), Complex(-(C * t))});
    return chi.simplified();
  }

  // Poles ride the drift; each source leaves a logarithmic wake between
  // its current image point z_i - C t and its fixed position z_i.  The
  // pair of log coefficients cancels, so the transform still decays at
  // infinity; the wake's first moment carries the injected area q t / pi.
  CauchyTransform chi = scenario.initial.translated(Complex(-(C * t)));
  for (const auto& s : scenario.sources) {
    const Complex c(s.strength / (kPi * C));
    chi.logs.push_back({c, s.position - Complex(C * t)});
    chi.logs.push_back({-c, s.position});
  }
  return chi.simplified();
}

SplitDecomposition split_decomposition(const GravityScenario& scenario,
                                       double t) {
  if (!scenario.has_dipole) {
    throw UnsupportedScenario(
        "split decomposition is defined for the dipole scenario only");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("evolution time must be nonnegative");
  }
  const double C = scenario.drift;
  const double mu = scenario.dipole_moment;

  SplitDecomposition out;
  out.stationary.poles.push_back({Complex(mu / C), Complex(0.0)});

  // sinking = chi0(w + C t) - (mu / C) / (w + C t): the initial blob
  // translated down plus the negative image of the steady blob, merged at
  // the shared pole so the residue becomes A + (-(mu / C)) = A - mu / C
  // exactly (IEEE negation-then-add equals subtraction).
  CauchyTransform sinking = scenario.initial.translated(Complex(-(C * t)));
  sinking.poles.push_back({Complex(-(mu / C)), Complex(-(C * t))});
  out.sinking = sinking.simplified();

  out.physical = true;
  for (const auto& p : out.sinking.poles) {
    if (p.residue.real() < 0.0) out.physical = false;
  }
  return out;
}

}  // namespace heleshaw::gravity
