#pragma once

#include "d2dsim/quadrature.hpp"

namespace d2d {

// Circular stand-ins for the typical cell, parameterized by the distance r_a
// between the typical RX and its serving AP:
//  kOffCenterDisc - disc of diameter r_a with the RX on its boundary,
//                   area pi (r_a/2)^2 (conservative, smaller cell);
//  kCenteredDisc  - disc of radius r_a centered on the RX, area pi r_a^2.
enum class CellApprox { kOffCenterDisc, kCenteredDisc };

constexpr CellApprox kB1 = CellApprox::kOffCenterDisc;
constexpr CellApprox kB2 = CellApprox::kCenteredDisc;

struct AnalyticParams {
  double lambda_a = 1.0;
  double lambda_d = 10.0;
  int n_subchannels = 10;
  double r_d = 0.3;
  double alpha = 4.0;
  CellApprox cell_approx = kB2;
  // Radial-boundary scale for the off-center disc. 1 keeps the polar boundary
  // r0(phi) = r_a cos(phi) consistent with the disc's area; 2 doubles the
  // radial extent (kept as a cross-check variant) while leaving the area
  // parameter untouched.
  double b1_radial_scale = 1.0;

  void validate() const;
};

// (2 pi^2 / alpha) / sin(2 pi / alpha); the path-loss constant of the
// interference-limited ccdf. Diverges as alpha -> 2+.
double kappa(double alpha);

// Gamma(n, z) / (n-1)! for integer n >= 1, z >= 0; equals the probability
// that a Poisson(z) variable is at most n-1.
double regularized_upper_gamma(int n, double z);

// Survival probability P(SIR >= theta) of the typical link when every TX
// picks its subchannel independently: exp(-(lambda_d/N) kappa r_d^2
// theta^(2/alpha)). Exact for the thinned-PPP bipolar network.
double uncoordinated_ccdf(const AnalyticParams& p, double theta);

// Area of the chosen cell approximation at serving distance r_a.
double cell_area(const AnalyticParams& p, double r_a);

struct InterfererDensities {
  double intercell = 0.0;  // lambda_d / N
  double intracell = 0.0;  // reduced by coordination inside the typical cell
};

// Cochannel interferer densities under coordinated scheduling, conditioned on
// r_a. Requires N >= 2.
InterfererDensities interferer_densities(const AnalyticParams& p, double r_a);

// Integral of u / (1 + theta^-1 (u/r_d)^alpha) over the cell approximation in
// polar coordinates around the RX; the payoff term coordination removes from
// the interference exponent.
double cell_exclusion_integral(const AnalyticParams& p, double theta, double r_a,
                               const QuadratureSpec& spec = {});

// Coordinated-scheduling ccdf of the typical-link SIR conditioned on the
// serving distance r_a. Requires N >= 2.
double conditional_ccdf(const AnalyticParams& p, double theta, double r_a,
                        const QuadratureSpec& spec = {});

// Rayleigh-weighted average of conditional_ccdf over the serving distance.
double unconditional_ccdf(const AnalyticParams& p, double theta,
                          const QuadratureSpec& spec = {});

// Coverage probability of a nearest-AP, Rayleigh-fading, interference-limited
// cellular downlink. Density-free; lambda_a is accepted only to mirror the
// call sites that know it.
double cellular_ccdf(double lambda_a, double alpha, double theta);

}  // namespace d2d
