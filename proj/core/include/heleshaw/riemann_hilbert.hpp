#pragma once

#include <complex>
#include <vector>

#include "heleshaw/field.hpp"
#include "heleshaw/geometry.hpp"
#include "heleshaw/moments.hpp"

namespace heleshaw::rh {

using Complex = std::complex<double>;

// Equilibrium shapes held by a dipole in a level-set field G, computed
// from a boundary value problem on the unit circle. The boundary data is
// always Theta(phi) = beta + 2 alpha cos(phi) with alpha > 0; the three
// solvers differ in how the map enters the boundary condition:
//
//   unidirectional  H(Re f)       = Theta   (field G = H(Re z))
//   axisymmetric    H(|f|^2)      = Theta   (field G = H(|z|^2))
//   composed        H(Re(f^2)/2)  = Theta   (field G = H(Re(z^2)/2))
//
// The dipole sits at f(0), which lands on the positive real axis, and its
// strength in the parameterization is mu = alpha f'(0). The physical
// dipole moment entering the moment identities is 2 pi times that.
struct RHSolution {
  geometry::ConformalMap map;
  double alpha = 0.0;
  double beta = 0.0;
  double position = 0.0;       // f(0)
  double mu_parameter = 0.0;   // alpha f'(0)
  int grid = 0;
  // Worst node violation of the defining boundary condition, measured in
  // the natural quantity of each problem kind.
  double boundary_residual = 0.0;
  // Set when the Fourier tail of the boundary data was still above the
  // resolution threshold at the largest affordable grid.
  bool resolution_limited = false;
  field::FieldSpec fieldspec;
  std::vector<moments::HydroSingularity> singularities;

  // Dipole moment in the convention of the moment functional.
  double moment() const;
};

// Position f(0) and derivative f'(0) for given boundary data, evaluated
// by Gauss-Legendre integration of the data itself; exact to machine
// precision even when the periodic extension of the data has endpoint
// kinks that slow the Fourier tail.
struct ForwardValues {
  double position = 0.0;
  double fprime0 = 0.0;
};

ForwardValues unidirectional_forward(const field::MonotoneProfile& profile,
                                     double alpha, double beta);
ForwardValues axisymmetric_forward(const field::MonotoneProfile& profile,
                                   double alpha, double beta);
ForwardValues composed_forward(const field::MonotoneProfile& profile,
                               double alpha, double beta);

// Full solutions for given (alpha, beta). The grid doubles automatically
// (up to the spectral cap) until the data tail is resolved.
RHSolution unidirectional_from_parameters(const field::MonotoneProfile& profile,
                                          double alpha, double beta,
                                          int n = 2048);
RHSolution axisymmetric_from_parameters(const field::MonotoneProfile& profile,
                                        double alpha, double beta,
                                        int n = 2048);
RHSolution composed_from_parameters(const field::MonotoneProfile& profile,
                                    double alpha, double beta, int n = 2048);

// Inverse problems: find (alpha, beta) so that the dipole sits at
// `position` with physical moment `moment`, then build the solution.
// Newton iteration in (ln alpha, ln(beta - 2 alpha)); ConvergenceError
// when no parameters match.
RHSolution solve_unidirectional(const field::MonotoneProfile& profile,
                                double position, double moment, int n = 2048);
RHSolution solve_axisymmetric(const field::MonotoneProfile& profile,
                              double position, double moment, int n = 2048);
RHSolution solve_composed(const field::MonotoneProfile& profile,
                          double position, double moment, int n = 2048);

}  // namespace heleshaw::rh
