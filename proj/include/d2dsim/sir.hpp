#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "d2dsim/geometry.hpp"
#include "d2dsim/scheduler.hpp"

namespace d2d {

struct SirSample {
  double sir = 0.0;  // linear scale; +inf when the trial has no interferers
  double r_a = 0.0;
  std::uint32_t intracell_count = 0;
  std::uint32_t intercell_count = 0;
};

// One fading draw per node: SIR = g0 r_d^-alpha / sum_i g_i d_i^-alpha with
// all g i.i.d. unit-mean exponential.
SirSample compute_sir(const NetworkRealization& net, const CochannelInterferers& interferers,
                      double alpha, std::mt19937_64& fading_rng);

// Survival estimates over an ascending threshold grid, with 95%
// normal-approximation confidence half-widths.
struct EmpiricalCcdf {
  Eigen::ArrayXd thresholds;
  Eigen::ArrayXd survival;
  Eigen::ArrayXd half_width;
  std::size_t n_trials = 0;
};

Eigen::ArrayXd db_grid(double lo_db, double hi_db, int n_points);
Eigen::ArrayXd db_to_linear(const Eigen::ArrayXd& db);

EmpiricalCcdf empirical_ccdf(const std::vector<double>& samples,
                             const Eigen::ArrayXd& thresholds);

struct D2dTrialRecord {
  double sir = 0.0;
  double r_a = 0.0;
  std::uint32_t intracell_count = 0;
  std::uint32_t intercell_count = 0;
  // Intercell cochannel interferers restricted to the outer half-annulus
  // (window radii [R/2, R]), a region of exactly known area that lies outside
  // the typical cell in essentially every trial; used for density estimation.
  std::uint32_t intercell_annulus_count = 0;
};

struct D2dBatchConfig {
  PppConfig ppp;  // trial_index is overwritten per trial
  ScheduleConfig schedule;
  double alpha = 4.0;
  std::size_t n_trials = 100000;
  int n_threads = 0;  // 0 = hardware concurrency
};

// Independent trials, one world + one scheduling draw + one fading draw each.
// Records land at their trial index, so the output is identical for any
// thread count.
std::vector<D2dTrialRecord> run_d2d_trials(const D2dBatchConfig& config);

EmpiricalCcdf run_d2d_batch(const D2dBatchConfig& config, const Eigen::ArrayXd& thresholds);

// Cellular downlink side: typical cellular RX at the window center, served by
// its nearest AP, interfered by all other APs; k_c counts the cellular RXs
// sharing its cell, itself included.
struct CellularTrialRecord {
  double sir_c = 0.0;
  std::uint32_t k_c = 1;
};

struct CellularBatchConfig {
  double lambda_a = 1.0;
  double lambda_c = 10.0;
  double alpha = 4.0;
  SimWindow window = SimWindow::for_expected_count(1.0);
  std::uint64_t seed = 0;
  std::size_t n_trials = 100000;
  int n_threads = 0;
};

std::vector<CellularTrialRecord> run_cellular_trials(const CellularBatchConfig& config);

struct CellularEstimates {
  EmpiricalCcdf ccdf;
  double mean_inv_kc = 0.0;
  double se_inv_kc = 0.0;
};

CellularEstimates run_cellular_batch(const CellularBatchConfig& config,
                                     const Eigen::ArrayXd& thresholds);

}  // namespace d2d
