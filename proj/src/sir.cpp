#include "d2dsim/sir.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace d2d {

namespace {

// Runs fn(trial) for every trial index on a small thread pool. Each call must
// write only to its own slot, which keeps the result independent of the
// thread count.
template <class Fn>
void parallel_trials(std::size_t n_trials, int n_threads, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned workers =
      n_threads > 0 ? static_cast<unsigned>(n_threads) : hw;
  if (workers <= 1 || n_trials < 2 * workers) {
    for (std::size_t t = 0; t < n_trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t t = w; t < n_trials; t += workers) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

double interference_power(const Point2& rx, const PointList& points, double alpha,
                          std::mt19937_64& rng) {
  std::exponential_distribution<double> fading(1.0);
  double sum = 0.0;
  for (const auto& x : points) {
    sum += fading(rng) * std::pow((x - rx).norm(), -alpha);
  }
  return sum;
}

}  // namespace

SirSample compute_sir(const NetworkRealization& net, const CochannelInterferers& interferers,
                      double alpha, std::mt19937_64& fading_rng) {
  if (alpha <= 2.0) throw std::domain_error("compute_sir: alpha must be > 2");
  const double r_d = (net.typical_tx - net.typical_rx).norm();
  if (r_d == 0.0) throw std::invalid_argument("compute_sir: r_d = 0 makes the path loss singular");

  SirSample s;
  s.r_a = net.r_a;
  s.intracell_count = static_cast<std::uint32_t>(interferers.intracell.size());
  s.intercell_count = static_cast<std::uint32_t>(interferers.intercell.size());

  std::exponential_distribution<double> fading(1.0);
  const double signal = fading(fading_rng) * std::pow(r_d, -alpha);
  const double interference = interference_power(net.typical_rx, interferers.intracell, alpha, fading_rng) +
                              interference_power(net.typical_rx, interferers.intercell, alpha, fading_rng);
  s.sir = interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
  return s;
}

Eigen::ArrayXd db_grid(double lo_db, double hi_db, int n_points) {
  return Eigen::ArrayXd::LinSpaced(n_points, lo_db, hi_db);
}

Eigen::ArrayXd db_to_linear(const Eigen::ArrayXd& db) {
  return Eigen::pow(10.0, db / 10.0);
}

EmpiricalCcdf empirical_ccdf(const std::vector<double>& samples,
                             const Eigen::ArrayXd& thresholds) {
  if (samples.empty()) throw std::invalid_argument("empirical_ccdf: no samples");
  EmpiricalCcdf c;
  c.thresholds = thresholds;
  c.survival = Eigen::ArrayXd::Zero(thresholds.size());
  c.half_width = Eigen::ArrayXd::Zero(thresholds.size());
  c.n_trials = samples.size();

  for (const double s : samples) {
    for (Eigen::Index i = 0; i < thresholds.size(); ++i) {
      if (s >= thresholds[i]) {
        c.survival[i] += 1.0;
      } else {
        break;  // ascending grid
      }
    }
  }
  const double n = static_cast<double>(c.n_trials);
  c.survival /= n;
  c.half_width = 1.96 * (c.survival * (1.0 - c.survival) / n).sqrt();
  return c;
}

std::vector<D2dTrialRecord> run_d2d_trials(const D2dBatchConfig& config) {
  if (config.n_trials < 1) throw std::invalid_argument("run_d2d_trials: n_trials must be >= 1");
  std::vector<D2dTrialRecord> records(config.n_trials);
  parallel_trials(config.n_trials, config.n_threads, [&](std::size_t t) {
    PppConfig ppp = config.ppp;
    ppp.trial_index = t;
    const NetworkRealization net = sample_network(ppp);

    auto sched_rng = substream(ppp.seed, t, StreamPurpose::kScheduling);
    const SubchannelAssignment assignment = schedule(net, config.schedule, sched_rng);
    const CochannelInterferers interferers = cochannel_interferers(net, assignment);

    auto fading_rng = substream(ppp.seed, t, StreamPurpose::kFading);
    const SirSample s = compute_sir(net, interferers, config.alpha, fading_rng);

    std::uint32_t annulus = 0;
    const double r_hi = config.ppp.window.radius;
    const double r_lo = 0.5 * r_hi;
    for (const auto& x : interferers.intercell) {
      const double d = (x - net.typical_rx).norm();
      if (d >= r_lo && d <= r_hi) ++annulus;
    }
    records[t] = {s.sir, s.r_a, s.intracell_count, s.intercell_count, annulus};
  });
  return records;
}

EmpiricalCcdf run_d2d_batch(const D2dBatchConfig& config, const Eigen::ArrayXd& thresholds) {
  const auto records = run_d2d_trials(config);
  std::vector<double> sirs(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) sirs[i] = records[i].sir;
  return empirical_ccdf(sirs, thresholds);
}

std::vector<CellularTrialRecord> run_cellular_trials(const CellularBatchConfig& config) {
  if (config.lambda_a <= 0.0 || config.lambda_c <= 0.0) {
    throw std::invalid_argument("run_cellular_trials: densities must be > 0");
  }
  if (config.n_trials < 1) throw std::invalid_argument("run_cellular_trials: n_trials must be >= 1");

  std::vector<CellularTrialRecord> records(config.n_trials);
  parallel_trials(config.n_trials, config.n_threads, [&](std::size_t t) {
    PointList aps;
    for (std::uint64_t attempt = 0;; ++attempt) {
      auto rng = substream(config.seed, t, StreamPurpose::kAccessPoints, attempt);
      aps = sample_ppp(config.lambda_a, config.window, rng);
      if (!aps.empty()) break;
      if (attempt > 1000) throw std::runtime_error("run_cellular_trials: no APs after 1000 resamples");
    }
    const Point2 rx = config.window.center;
    const std::int32_t serving = nearest_index(aps, rx);

    std::uint32_t k_c = 1;  // the typical RX itself
    {
      auto rng = substream(config.seed, t, StreamPurpose::kCellularUsers);
      const PointList users = sample_ppp(config.lambda_c, config.window, rng);
      for (const auto& u : users) {
        if (nearest_index(aps, u) == serving) ++k_c;
      }
    }

    auto rng = substream(config.seed, t, StreamPurpose::kCellularFading);
    std::exponential_distribution<double> fading(1.0);
    const double signal =
        fading(rng) * std::pow((aps[static_cast<std::size_t>(serving)] - rx).norm(), -config.alpha);
    double interference = 0.0;
    for (std::size_t i = 0; i < aps.size(); ++i) {
      if (static_cast<std::int32_t>(i) == serving) continue;
      interference += fading(rng) * std::pow((aps[i] - rx).norm(), -config.alpha);
    }
    records[t].sir_c =
        interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
    records[t].k_c = k_c;
  });
  return records;
}

CellularEstimates run_cellular_batch(const CellularBatchConfig& config,
                                     const Eigen::ArrayXd& thresholds) {
  const auto records = run_cellular_trials(config);
  std::vector<double> sirs(records.size());
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    sirs[i] = records[i].sir_c;
    const double inv = 1.0 / records[i].k_c;
    sum += inv;
    sum2 += inv * inv;
  }
  CellularEstimates est;
  est.ccdf = empirical_ccdf(sirs, thresholds);
  const double n = static_cast<double>(records.size());
  est.mean_inv_kc = sum / n;
  const double var = (sum2 - sum * sum / n) / (n > 1 ? n - 1 : 1);
  est.se_inv_kc = std::sqrt(var / n);
  return est;
}

}  // namespace d2d
