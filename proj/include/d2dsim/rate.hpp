#pragma once

#include <cstdint>

#include "d2dsim/analytic.hpp"
#include "d2dsim/scheduler.hpp"

namespace d2d {

enum class RateBackend { kAnalytic, kMonteCarlo };

struct RateParams {
  double lambda_a = 1.0;
  double lambda_c = 10.0;
  double lambda_d = 10.0;
  double eta = 0.5;    // downlink bandwidth fraction handed to D2D
  double theta0 = 1.0; // linear SIR threshold of the rate model
  double alpha = 4.0;
  double r_d = 0.3;
  int n_min = 1;
  int n_max = 64;
  ScheduleMode mode = ScheduleMode::kCoordinated;
  CellApprox cell_approx = kB2;
  RateBackend backend = RateBackend::kAnalytic;
  std::size_t mc_trials = 20000;
  std::uint64_t seed = 0;
  double log_base = 2.0;  // b/s/Hz convention

  void validate() const;
  AnalyticParams analytic(int n) const;
};

// Cellular-side inputs of the average-rate model; independent of r_d and N,
// so callers cache them across sweeps.
struct CellularQuantities {
  double e_inv_kc = 1.0;  // mean TDMA share E[1/K_c]
  double p_cov = 1.0;     // P(SIR_c >= theta0)
};

CellularQuantities estimate_cellular(double lambda_a, double lambda_c, double alpha,
                                     double theta0, std::size_t n_trials, std::uint64_t seed);

struct RateBreakdown {
  double r_cellular = 0.0;
  double r_d2d = 0.0;
  double r_total = 0.0;
  int n = 1;
  double e_inv_kc = 0.0;
  double p_cov_cellular = 0.0;
  double p_cov_d2d = 0.0;
};

// D2D coverage P(SIR_d >= theta0) for a given subchannel count, via the
// chosen backend. Coordinated n = 1 falls back to the uncoordinated form
// (the two schemes coincide there).
double d2d_coverage(const RateParams& p, int n);

// Average user rate: population-weighted mix of the TDMA cellular rate and
// the 1/N-scaled D2D rate.
RateBreakdown average_rate(const RateParams& p, const CellularQuantities& cellular, int n);

// Exhaustive integer search over [n_min, n_max]; ties go to the smaller N.
RateBreakdown optimize_subchannels(const RateParams& p, const CellularQuantities& cellular);

// Cellular-only reference: every user cellular (density lambda_c_total), no
// bandwidth carved out.
double baseline_rate(const CellularQuantities& cellular_at_total, double theta0,
                     double log_base = 2.0);
double baseline_rate(double lambda_a, double lambda_c_total, double theta0, double alpha,
                     std::size_t mc_trials, std::uint64_t seed);

struct BeneficialDistance {
  double r_d = 0.0;
  bool crossed = false;  // false: no sign change inside the bracket
};

// Largest r_d at which the optimized-N rate still beats the no-D2D baseline;
// bisection on [r_lo, r_hi] to the given distance tolerance.
BeneficialDistance max_beneficial_distance(const RateParams& p,
                                           const CellularQuantities& cellular,
                                           double baseline, double r_lo, double r_hi,
                                           double tol);

}  // namespace d2d
