#include "d2dsim/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2d {

SimWindow SimWindow::for_expected_count(double density, double expected_count) {
  if (density <= 0.0) throw std::invalid_argument("SimWindow: density must be > 0");
  if (expected_count <= 0.0) throw std::invalid_argument("SimWindow: expected_count must be > 0");
  SimWindow w;
  w.radius = std::sqrt(expected_count / (M_PI * density));
  return w;
}

PointList sample_ppp(double density, const SimWindow& window, std::mt19937_64& rng) {
  if (density <= 0.0) throw std::invalid_argument("sample_ppp: density must be > 0");
  if (window.radius <= 0.0) throw std::invalid_argument("sample_ppp: window radius must be > 0");

  std::poisson_distribution<std::size_t> count(density * window.area());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t n = count(rng);
  PointList points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Uniform on the disc: sqrt-radius trick.
    const double r = window.radius * std::sqrt(unit(rng));
    const double phi = 2.0 * M_PI * unit(rng);
    points.emplace_back(window.center + Point2(r * std::cos(phi), r * std::sin(phi)));
  }
  return points;
}

std::int32_t nearest_index(const PointList& points, const Point2& query) {
  std::int32_t best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d2 = (points[i] - query).squaredNorm();
    if (d2 < best_d2) {  // strict: first (lowest) index wins ties
      best_d2 = d2;
      best = static_cast<std::int32_t>(i);
    }
  }
  return best;
}

NetworkRealization sample_network(const PppConfig& config) {
  if (config.r_d < 0.0) throw std::invalid_argument("sample_network: r_d must be >= 0");

  NetworkRealization net;
  net.typical_rx = config.window.center;

  // A window with zero APs cannot define cells; retry on a salted substream.
  // With the default 30-AP window this is a ~1e-13 event.
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto rng = substream(config.seed, config.trial_index, StreamPurpose::kAccessPoints, attempt);
    net.aps = sample_ppp(config.lambda_a, config.window, rng);
    if (!net.aps.empty()) break;
    if (attempt > 1000) throw std::runtime_error("sample_network: no APs after 1000 resamples");
  }

  {
    auto rng = substream(config.seed, config.trial_index, StreamPurpose::kD2dTransmitters);
    net.d2d_txs = sample_ppp(config.lambda_d, config.window, rng);
  }

  {
    auto rng = substream(config.seed, config.trial_index, StreamPurpose::kTypicalLink);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double phi = 2.0 * M_PI * unit(rng);
    net.typical_tx = net.typical_rx + config.r_d * Point2(std::cos(phi), std::sin(phi));
  }

  net.cell_of_tx.resize(net.d2d_txs.size());
  for (std::size_t i = 0; i < net.d2d_txs.size(); ++i) {
    net.cell_of_tx[i] = nearest_index(net.aps, net.d2d_txs[i]);
  }
  net.cell_of_typical_tx = nearest_index(net.aps, net.typical_tx);
  net.cell_of_typical_rx = nearest_index(net.aps, net.typical_rx);
  net.r_a = (net.aps[static_cast<std::size_t>(net.cell_of_typical_rx)] - net.typical_rx).norm();
  return net;
}

std::size_t count_in_cell(const NetworkRealization& net, std::int32_t cell_index) {
  std::size_t n = 0;
  for (const auto c : net.cell_of_tx) {
    if (c == cell_index) ++n;
  }
  return n;
}

}  // namespace d2d
