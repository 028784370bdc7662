#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "d2dsim/geometry.hpp"

namespace d2d {

enum class ScheduleMode { kUncoordinated, kCoordinated };

struct ScheduleConfig {
  int n_subchannels = 1;
  ScheduleMode mode = ScheduleMode::kUncoordinated;
};

// Subchannel indices are 0-based, i.e. {0..N-1}. TX index convention used by
// `groups`: 0..d2d_txs.size()-1 address d2d_txs, d2d_txs.size() addresses the
// typical TX.
struct SubchannelAssignment {
  std::vector<std::int32_t> sc_of_tx;  // parallel to NetworkRealization::d2d_txs
  std::int32_t sc_of_typical = 0;
  int n_subchannels = 1;
  // Coordinated mode only, for introspection: per AP cell, the TX groups that
  // received mutually distinct subchannels.
  std::vector<std::vector<std::vector<std::int32_t>>> groups;
};

// Every TX (typical included) draws its subchannel independently and
// uniformly.
SubchannelAssignment schedule_uncoordinated(const NetworkRealization& net,
                                            const ScheduleConfig& config,
                                            std::mt19937_64& rng);

// Per cell: the member TXs (typical included, in the cell of its own nearest
// AP) are randomly permuted and cut into consecutive blocks of size N plus a
// remainder block; each block receives distinct subchannels drawn uniformly
// without replacement from all N. Cells are scheduled independently.
SubchannelAssignment schedule_coordinated(const NetworkRealization& net,
                                          const ScheduleConfig& config,
                                          std::mt19937_64& rng);

// Dispatch on config.mode.
SubchannelAssignment schedule(const NetworkRealization& net,
                              const ScheduleConfig& config,
                              std::mt19937_64& rng);

// Non-typical TXs sharing the typical TX's subchannel, split by whether they
// sit in the same cell as the typical RX.
struct CochannelInterferers {
  PointList intracell;
  PointList intercell;
  std::size_t total() const { return intracell.size() + intercell.size(); }
};

CochannelInterferers cochannel_interferers(const NetworkRealization& net,
                                           const SubchannelAssignment& assignment);

}  // namespace d2d
