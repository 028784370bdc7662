#include "d2dsim/rate.hpp"

#include <cmath>
#include <stdexcept>

#include "d2dsim/sir.hpp"

namespace d2d {

void RateParams::validate() const {
  if (lambda_a <= 0.0 || lambda_c <= 0.0 || lambda_d <= 0.0) {
    throw std::invalid_argument("RateParams: densities must be > 0");
  }
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("RateParams: eta must be in [0,1]");
  if (theta0 <= 0.0) throw std::invalid_argument("RateParams: theta0 must be > 0");
  if (alpha <= 2.0) throw std::domain_error("RateParams: alpha must be > 2");
  if (r_d <= 0.0) throw std::invalid_argument("RateParams: r_d must be > 0");
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("RateParams: empty N range");
  if (log_base <= 1.0) throw std::invalid_argument("RateParams: log_base must be > 1");
}

AnalyticParams RateParams::analytic(int n) const {
  AnalyticParams a;
  a.lambda_a = lambda_a;
  a.lambda_d = lambda_d;
  a.n_subchannels = n;
  a.r_d = r_d;
  a.alpha = alpha;
  a.cell_approx = cell_approx;
  return a;
}

CellularQuantities estimate_cellular(double lambda_a, double lambda_c, double alpha,
                                     double theta0, std::size_t n_trials, std::uint64_t seed) {
  CellularBatchConfig cfg;
  cfg.lambda_a = lambda_a;
  cfg.lambda_c = lambda_c;
  cfg.alpha = alpha;
  cfg.window = SimWindow::for_expected_count(lambda_a);
  cfg.seed = seed;
  cfg.n_trials = n_trials;
  Eigen::ArrayXd grid(1);
  grid << theta0;
  const CellularEstimates est = run_cellular_batch(cfg, grid);
  return {est.mean_inv_kc, est.ccdf.survival[0]};
}

double d2d_coverage(const RateParams& p, int n) {
  p.validate();
  if (n < 1) throw std::invalid_argument("d2d_coverage: n must be >= 1");
  if (p.backend == RateBackend::kMonteCarlo) {
    D2dBatchConfig cfg;
    cfg.ppp.lambda_a = p.lambda_a;
    cfg.ppp.lambda_d = p.lambda_d;
    cfg.ppp.r_d = p.r_d;
    cfg.ppp.window = SimWindow::for_expected_count(p.lambda_a);
    cfg.ppp.seed = p.seed;
    cfg.schedule.n_subchannels = n;
    cfg.schedule.mode = p.mode;
    cfg.alpha = p.alpha;
    cfg.n_trials = p.mc_trials;
    Eigen::ArrayXd grid(1);
    grid << p.theta0;
    return run_d2d_batch(cfg, grid).survival[0];
  }
  if (p.mode == ScheduleMode::kCoordinated && n >= 2) {
    return unconditional_ccdf(p.analytic(n), p.theta0);
  }
  return uncoordinated_ccdf(p.analytic(n), p.theta0);
}

namespace {

double rate_factor(double theta0, double log_base) {
  return std::log1p(theta0) / std::log(log_base);
}

}  // namespace

RateBreakdown average_rate(const RateParams& p, const CellularQuantities& cellular, int n) {
  p.validate();
  const double lr = rate_factor(p.theta0, p.log_base);
  const double w_c = p.lambda_c / (p.lambda_c + p.lambda_d);
  const double w_d = p.lambda_d / (p.lambda_c + p.lambda_d);

  RateBreakdown r;
  r.n = n;
  r.e_inv_kc = cellular.e_inv_kc;
  r.p_cov_cellular = cellular.p_cov;
  r.p_cov_d2d = d2d_coverage(p, n);
  r.r_cellular = cellular.e_inv_kc * cellular.p_cov * lr;
  r.r_d2d = r.p_cov_d2d / n * lr;
  r.r_total = w_c * (1.0 - p.eta) * r.r_cellular + w_d * p.eta * r.r_d2d;
  return r;
}

RateBreakdown optimize_subchannels(const RateParams& p, const CellularQuantities& cellular) {
  p.validate();
  RateBreakdown best;
  bool have = false;
  for (int n = p.n_min; n <= p.n_max; ++n) {
    RateBreakdown r = average_rate(p, cellular, n);
    if (!have || r.r_total > best.r_total) {  // strict: ties keep the smaller N
      best = r;
      have = true;
    }
  }
  return best;
}

double baseline_rate(const CellularQuantities& cellular_at_total, double theta0,
                     double log_base) {
  return cellular_at_total.e_inv_kc * cellular_at_total.p_cov * rate_factor(theta0, log_base);
}

double baseline_rate(double lambda_a, double lambda_c_total, double theta0, double alpha,
                     std::size_t mc_trials, std::uint64_t seed) {
  return baseline_rate(estimate_cellular(lambda_a, lambda_c_total, alpha, theta0, mc_trials, seed),
                       theta0);
}

BeneficialDistance max_beneficial_distance(const RateParams& p,
                                           const CellularQuantities& cellular,
                                           double baseline, double r_lo, double r_hi,
                                           double tol) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) {
    throw std::invalid_argument("max_beneficial_distance: need 0 < r_lo < r_hi");
  }
  const auto margin = [&](double rd) {
    RateParams q = p;
    q.r_d = rd;
    return optimize_subchannels(q, cellular).r_total - baseline;
  };

  double f_lo = margin(r_lo);
  double f_hi = margin(r_hi);
  if (f_lo < 0.0) return {r_lo, false};  // never beneficial inside the bracket
  if (f_hi > 0.0) return {r_hi, false};  // still beneficial at the far edge

  double lo = r_lo, hi = r_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), true};
}

}  // namespace d2d
