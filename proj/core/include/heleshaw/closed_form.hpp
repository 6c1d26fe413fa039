#pragma once

#include <complex>
#include <vector>

#include "heleshaw/field.hpp"
#include "heleshaw/geometry.hpp"
#include "heleshaw/moments.hpp"

namespace heleshaw::closed_form {

using Complex = std::complex<double>;

// Closed-form equilibrium shapes. Each solver returns the conformal map of
// the unit disk onto the fluid domain together with the field and the
// hydrodynamic singularities that the shape balances, ready to be fed to
// the equilibrium checker. The `univalent` flag reports whether the
// parameters lie in the closed range where the map is injective on the
// open disk; the endpoint of that range is the critical shape whose
// boundary just touches itself or forms a cusp.

// Source-sink pair on a ray from an external charge: volume rates +q at
// z = a and -q at z = b in the field of a charge Q at the origin, with
// f(zeta) = sqrt(a b) ((1 + alpha zeta) / (1 - alpha zeta))^(1 / lambda),
// lambda = Q / (2 q) and (1 + alpha^2) / (1 - alpha^2) = (b / a)^(lambda / 2).
struct SourceSinkPairSolution {
  geometry::ConformalMap map;
  double q, a, b, Q;
  double lambda;
  double alpha;
  field::FieldSpec fieldspec;
  std::vector<moments::HydroSingularity> singularities;
  bool univalent;
};

SourceSinkPairSolution solve_source_sink_pair(double q, double a, double b,
                                              double Q);

// Smallest inner/outer position ratio with a univalent shape at fixed
// lambda; 0 when every ratio works (|lambda| >= 1/2).
double source_sink_critical_ratio(double lambda);

// Coalescence limit of the pair: a dipole of moment mu at z = a in the
// field of a charge Q at the origin, f(zeta) = a e^(sigma zeta) with
// sigma^2 = 2 mu / (a Q).
struct DipoleSolution {
  geometry::ConformalMap map;
  double mu, a, Q;
  double sigma;
  field::FieldSpec fieldspec;
  std::vector<moments::HydroSingularity> singularities;
  bool univalent;  // sigma <= pi
};

DipoleSolution solve_dipole(double mu, double a, double Q);

// Position below which the dipole shape stops being univalent: 2 mu / (pi^2 Q).
double dipole_critical_position(double mu, double Q);

// Dipole of moment mu sitting on top of an enclosed charge Q, both at the
// origin: f(zeta) = A zeta e^(B zeta) with B = 2 mu / (Q A).
struct DipoleOnChargeSolution {
  geometry::ConformalMap map;
  double mu, Q, A;
  double B;
  field::FieldSpec fieldspec;
  std::vector<moments::HydroSingularity> singularities;
  bool univalent;  // |B| <= 1
};

DipoleOnChargeSolution solve_dipole_on_charge(double mu, double Q, double A);

// Map scale below which the enclosed-charge dipole shape stops being
// univalent: 2 |mu / Q|.
double dipole_on_charge_critical_scale(double mu, double Q);

// Quadrupole of strength beta at the origin between charges Q at -+a:
// f(zeta) = a zeta sqrt((1 - e^(-c zeta^2)) / (c zeta^2)) with
// c^2 = beta / (a^2 Q).
struct QuadrupoleSolution {
  geometry::ConformalMap map;
  double beta, Q, a;
  double c;
  field::FieldSpec fieldspec;
  std::vector<moments::HydroSingularity> singularities;
  bool univalent;  // c <= pi
};

QuadrupoleSolution solve_quadrupole(double beta, double Q, double a);

// Charge spacing below which the quadrupole shape stops being univalent:
// sqrt(beta / Q) / pi.
double quadrupole_critical_spacing(double beta, double Q);

}  // namespace heleshaw::closed_form
