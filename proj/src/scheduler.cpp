#include "d2dsim/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace d2d {

namespace {

void check_config(const ScheduleConfig& config) {
  if (config.n_subchannels < 1) {
    throw std::invalid_argument("schedule: n_subchannels must be >= 1");
  }
}

// Draws k distinct subchannels from {0..n-1} via partial Fisher-Yates.
void draw_distinct(std::vector<std::int32_t>& pool, int k, std::mt19937_64& rng,
                   std::vector<std::int32_t>& out) {
  const int n = static_cast<int>(pool.size());
  out.clear();
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
    out.push_back(pool[static_cast<std::size_t>(i)]);
  }
}

}  // namespace

SubchannelAssignment schedule_uncoordinated(const NetworkRealization& net,
                                            const ScheduleConfig& config,
                                            std::mt19937_64& rng) {
  check_config(config);
  SubchannelAssignment a;
  a.n_subchannels = config.n_subchannels;
  a.sc_of_tx.resize(net.d2d_txs.size());
  std::uniform_int_distribution<std::int32_t> pick(0, config.n_subchannels - 1);
  for (auto& sc : a.sc_of_tx) sc = pick(rng);
  a.sc_of_typical = pick(rng);
  return a;
}

SubchannelAssignment schedule_coordinated(const NetworkRealization& net,
                                          const ScheduleConfig& config,
                                          std::mt19937_64& rng) {
  check_config(config);
  const int n_sc = config.n_subchannels;
  const std::size_t n_tx = net.d2d_txs.size();
  const std::int32_t typical_id = static_cast<std::int32_t>(n_tx);

  SubchannelAssignment a;
  a.n_subchannels = n_sc;
  a.sc_of_tx.resize(n_tx);
  a.groups.resize(net.aps.size());

  // Cell membership lists; the typical TX joins the cell of its own nearest AP.
  std::vector<std::vector<std::int32_t>> members(net.aps.size());
  for (std::size_t i = 0; i < n_tx; ++i) {
    members[static_cast<std::size_t>(net.cell_of_tx[i])].push_back(static_cast<std::int32_t>(i));
  }
  members[static_cast<std::size_t>(net.cell_of_typical_tx)].push_back(typical_id);

  std::vector<std::int32_t> pool(static_cast<std::size_t>(n_sc));
  std::vector<std::int32_t> block_scs;
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& m = members[c];
    if (m.empty()) continue;
    std::shuffle(m.begin(), m.end(), rng);
    for (std::size_t start = 0; start < m.size(); start += static_cast<std::size_t>(n_sc)) {
      const std::size_t len = std::min(static_cast<std::size_t>(n_sc), m.size() - start);
      std::iota(pool.begin(), pool.end(), 0);
      draw_distinct(pool, static_cast<int>(len), rng, block_scs);
      std::vector<std::int32_t> group;
      group.reserve(len);
      for (std::size_t k = 0; k < len; ++k) {
        const std::int32_t tx = m[start + k];
        group.push_back(tx);
        if (tx == typical_id) {
          a.sc_of_typical = block_scs[k];
        } else {
          a.sc_of_tx[static_cast<std::size_t>(tx)] = block_scs[k];
        }
      }
      a.groups[c].push_back(std::move(group));
    }
  }
  return a;
}

SubchannelAssignment schedule(const NetworkRealization& net, const ScheduleConfig& config,
                              std::mt19937_64& rng) {
  return config.mode == ScheduleMode::kCoordinated ? schedule_coordinated(net, config, rng)
                                                   : schedule_uncoordinated(net, config, rng);
}

CochannelInterferers cochannel_interferers(const NetworkRealization& net,
                                           const SubchannelAssignment& assignment) {
  if (assignment.sc_of_tx.size() != net.d2d_txs.size()) {
    throw std::invalid_argument("cochannel_interferers: assignment does not cover all TXs");
  }
  CochannelInterferers out;
  for (std::size_t i = 0; i < net.d2d_txs.size(); ++i) {
    if (assignment.sc_of_tx[i] != assignment.sc_of_typical) continue;
    if (net.cell_of_tx[i] == net.cell_of_typical_rx) {
      out.intracell.push_back(net.d2d_txs[i]);
    } else {
      out.intercell.push_back(net.d2d_txs[i]);
    }
  }
  return out;
}

}  // namespace d2d
