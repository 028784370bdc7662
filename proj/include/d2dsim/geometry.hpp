#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "d2dsim/rng.hpp"

namespace d2d {

using Point2 = Eigen::Vector2d;
using PointList = std::vector<Point2>;

// Circular observation window. All densities are per unit area, so the
// default radius is picked to contain a target expected number of APs.
struct SimWindow {
  Point2 center = Point2::Zero();
  double radius = 1.0;

  double area() const { return M_PI * radius * radius; }

  // Radius such that density * area == expected_count.
  static SimWindow for_expected_count(double density, double expected_count = 30.0);
};

struct PppConfig {
  double lambda_a = 1.0;   // AP density
  double lambda_d = 10.0;  // D2D TX density
  double r_d = 0.3;        // typical link distance
  SimWindow window = SimWindow::for_expected_count(1.0);
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
};

// One sampled world, conditioned on the typical link. The typical RX sits at
// the window center; the typical TX is an extra point at distance r_d in a
// uniformly random direction and is kept out of d2d_txs.
struct NetworkRealization {
  PointList aps;
  PointList d2d_txs;
  Point2 typical_tx = Point2::Zero();
  Point2 typical_rx = Point2::Zero();
  std::vector<std::int32_t> cell_of_tx;  // nearest-AP index per d2d_txs entry
  std::int32_t cell_of_typical_tx = -1;
  std::int32_t cell_of_typical_rx = -1;
  double r_a = 0.0;  // distance from typical RX to its nearest AP
};

// Homogeneous PPP restricted to the window: Poisson count, uniform positions.
PointList sample_ppp(double density, const SimWindow& window, std::mt19937_64& rng);

// Samples APs and D2D TXs, places the typical link, and resolves all
// nearest-AP cell memberships. Deterministic given (seed, trial_index).
NetworkRealization sample_network(const PppConfig& config);

// Index of the nearest point; ties go to the lowest index. Returns -1 when
// points is empty.
std::int32_t nearest_index(const PointList& points, const Point2& query);

// Number of d2d_txs whose nearest AP is cell_index. The typical TX is never
// included in this count.
std::size_t count_in_cell(const NetworkRealization& net, std::int32_t cell_index);

}  // namespace d2d
