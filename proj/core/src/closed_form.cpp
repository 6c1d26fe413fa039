#include "heleshaw/closed_form.hpp"

#include <cmath>
#include <utility>

#include "heleshaw/errors.hpp"

namespace heleshaw::closed_form {

namespace {

constexpr double kPi = 3.14159265358979323846;

field::FieldSpec origin_charge(double Q) {
  field::PointChargeField f;
  f.charges.push_back({Q, Complex(0.0)});
  return f;
}

}  // namespace

SourceSinkPairSolution solve_source_sink_pair(double q, double a, double b,
                                              double Q) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("positions must be positive");
  if (a == b) throw ConfigError("pair positions must be distinct");
  if (q == 0.0 || Q == 0.0) throw ConfigError("strengths must be nonzero");
  // Work against the field means q Q ln(b / a) > 0; otherwise no alpha in
  // (0, 1) satisfies the position constraint.
  if (!(q * Q * std::log(b / a) > 0.0))
    throw FeasibilityError(
        "pair does not work against the field; no equilibrium exists");

  const double lambda = Q / (2.0 * q);
  // (1 + alpha^2) / (1 - alpha^2) = t with t = (b/a)^(lambda/2) > 1.
  const double t = std::pow(b / a, lambda / 2.0);
  const double alpha = std::sqrt((t - 1.0) / (t + 1.0));

  SourceSinkPairSolution sol{
      geometry::ConformalMap::moebius_power(std::sqrt(a * b), alpha,
                                            1.0 / lambda),
      q,
      a,
      b,
      Q,
      lambda,
      alpha,
      origin_charge(Q),
      {moments::HydroSingularity::source(q, a),
       moments::HydroSingularity::source(-q, b)},
      false};
  const double ratio = std::min(a, b) / std::max(a, b);
  sol.univalent = ratio >= source_sink_critical_ratio(lambda);
  return sol;
}

double source_sink_critical_ratio(double lambda) {
  const double lam = std::fabs(lambda);
  if (!(lam > 0.0)) throw ConfigError("lambda must be nonzero");
  if (lam >= 0.5) return 0.0;
  return std::pow(std::cos(kPi * lam), 2.0 / lam);
}

DipoleSolution solve_dipole(double mu, double a, double Q) {
  if (!(a > 0.0)) throw ConfigError("dipole position must be positive");
  if (Q == 0.0) throw ConfigError("charge strength must be nonzero");
  if (!(mu / Q > 0.0))
    throw FeasibilityError(
        "dipole does not work against the field; no equilibrium exists");
  const double sigma = std::sqrt(2.0 * mu / (a * Q));
  DipoleSolution sol{geometry::ConformalMap::exponential(a, sigma),
                     mu,
                     a,
                     Q,
                     sigma,
                     origin_charge(Q),
                     {moments::HydroSingularity::dipole(mu, a)},
                     sigma <= kPi};
  return sol;
}

double dipole_critical_position(double mu, double Q) {
  if (!(mu / Q > 0.0)) throw ConfigError("moment and charge must share a sign");
  return 2.0 * mu / (kPi * kPi * Q);
}

DipoleOnChargeSolution solve_dipole_on_charge(double mu, double Q, double A) {
  if (!(A > 0.0)) throw ConfigError("map scale must be positive");
  if (Q == 0.0) throw ConfigError("charge strength must be nonzero");
  const double B = 2.0 * mu / (Q * A);
  DipoleOnChargeSolution sol{geometry::ConformalMap::linear_exponential(A, B),
                             mu,
                             Q,
                             A,
                             B,
                             origin_charge(Q),
                             {moments::HydroSingularity::dipole(mu, 0.0)},
                             std::fabs(B) <= 1.0};
  return sol;
}

double dipole_on_charge_critical_scale(double mu, double Q) {
  if (mu == 0.0 || Q == 0.0) throw ConfigError("strengths must be nonzero");
  return 2.0 * std::fabs(mu / Q);
}

QuadrupoleSolution solve_quadrupole(double beta, double Q, double a) {
  if (!(a > 0.0)) throw ConfigError("charge spacing must be positive");
  if (Q == 0.0) throw ConfigError("charge strength must be nonzero");
  if (!(beta / Q > 0.0))
    throw FeasibilityError(
        "quadrupole does not work against the field; no equilibrium exists");
  const double c = std::sqrt(beta / Q) / a;
  field::PointChargeField charges;
  charges.charges.push_back({Q, Complex(a)});
  charges.charges.push_back({Q, Complex(-a)});
  QuadrupoleSolution sol{geometry::ConformalMap::even_square_root(a, c),
                         beta,
                         Q,
                         a,
                         c,
                         field::FieldSpec(std::move(charges)),
                         {moments::HydroSingularity::quadrupole(beta, 0.0)},
                         c <= kPi};
  return sol;
}

double quadrupole_critical_spacing(double beta, double Q) {
  if (!(beta / Q > 0.0))
    throw ConfigError("strength and charge must share a sign");
  return std::sqrt(beta / Q) / kPi;
}

}  // namespace heleshaw::closed_form
