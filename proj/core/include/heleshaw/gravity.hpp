#pragma once

// Closed-form evolution of the exterior Cauchy transform of a fluid blob
// sinking through a vertical background drift while point sources feed or
// drain it.  Everything here works at the transform level: a domain enters
// as chi(w) = integral over the domain of dA / (pi (w - z)), and evolution
// acts on the rational representation of chi directly.  No boundary is
// reconstructed; for non-circular transforms that inverse problem is out
// of scope by design.

#include <complex>
#include <vector>

#include "heleshaw/geometry.hpp"

namespace heleshaw::gravity {

using Complex = geometry::Complex;

// Rational-plus-logarithmic representation
//
//   chi(w) = sum_k residue_k / (w - pole_k)
//          + sum_j coefficient_j * log(w - point_j)
//
// Pole terms encode circular blobs (residue = area / pi); log pairs with
// opposite coefficients encode the fluid a moving source has injected
// along its track.  The log coefficients always sum to zero within one
// transform, so chi decays like 1 / w at infinity and area_coefficient()
// reads off that leading coefficient.
struct PoleTerm {
  Complex residue;
  Complex pole;
};

struct LogTerm {
  Complex coefficient;
  Complex point;
};

struct CauchyTransform {
  std::vector<PoleTerm> poles;
  std::vector<LogTerm> logs;

  // Pointwise value; w must avoid the poles and log points.
  Complex eval(Complex w) const;

  // Coefficient of 1/w at infinity: sum of residues minus the first
  // moment of the log coefficients.  Throws AnalyticityError if the log
  // coefficients do not cancel (the transform would grow like log w).
  Complex area_coefficient() const;

  // Same transform with every pole and log point moved by d.
  CauchyTransform translated(Complex d) const;

  // Merge terms sharing a pole (or log point) and drop exact zeros.
  CauchyTransform simplified() const;
};

// Sum of two transforms, merging coincident poles.
CauchyTransform add(const CauchyTransform& a, const CauchyTransform& b);

// Single-blob transform: a disk of area pi * coefficient centered on
// `center` has chi(w) = coefficient / (w - center).
CauchyTransform transform_of_disk(Complex center, double coefficient);

// Inverse of transform_of_disk.  Throws GeometryError if the transform is
// not a single pole with nonnegative real residue.
struct DiskData {
  Complex center;
  double coefficient;
};
DiskData disk_of_transform(const CauchyTransform& chi);

// A blob sinking with uniform drift speed C (poles translate to -C t),
// driven either by fixed point sources or by one dipole at the origin.
// The dipole variant requires the initial transform to be a single pole
// at the origin with real residue, because only then does the evolution
// stay rational and split cleanly.
struct PointSource {
  double strength;
  Complex position;
};

struct GravityScenario {
  double drift;                     // C > 0
  CauchyTransform initial;          // rational chi at t = 0
  std::vector<PointSource> sources; // fixed sources, used when no dipole
  bool has_dipole = false;
  double dipole_moment = 0.0;       // mu, dipole sits at the origin

  static GravityScenario with_sources(double drift, CauchyTransform initial,
                                      std::vector<PointSource> sources);
  static GravityScenario with_dipole(double drift, double initial_coefficient,
                                     double dipole_moment);
};

// Transform at time t >= 0.  Initial poles translate by -C t; each fixed
// source contributes (q / (pi C)) * [log(w + C t - z_i) - log(w - z_i)];
// the dipole scenario evaluates to its closed form
//   (mu / C) / w + (A - mu / C) / (w + C t).
// t = 0 returns the initial transform unchanged.
CauchyTransform evolve_transform(const GravityScenario& scenario, double t);

// Decomposition of the dipole evolution into the steady blob the dipole
// holds in place and the remainder that keeps sinking.  `physical` is
// false when the initial blob is smaller than the steady one (the
// sinking residue would be negative, which no domain realizes).
struct SplitDecomposition {
  CauchyTransform stationary;
  CauchyTransform sinking;
  bool physical;
};
SplitDecomposition split_decomposition(const GravityScenario& scenario,
                                       double t);

}  // namespace heleshaw::gravity
