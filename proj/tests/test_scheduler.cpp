#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "d2dsim/scheduler.hpp"

using namespace d2d;

namespace {

// One AP hosting `n_plain` TXs plus the typical link right next to it.
NetworkRealization single_cell(int n_plain) {
  NetworkRealization net;
  net.aps.emplace_back(0.0, 0.0);
  for (int i = 0; i < n_plain; ++i) {
    net.d2d_txs.emplace_back(0.1 + 0.01 * i, 0.2);
    net.cell_of_tx.push_back(0);
  }
  net.typical_rx = Point2(0.0, 0.0);
  net.typical_tx = Point2(0.05, 0.0);
  net.cell_of_typical_tx = 0;
  net.cell_of_typical_rx = 0;
  net.r_a = 0.0;
  return net;
}

}  // namespace

TEST_CASE("uncoordinated: N=1 puts everyone on the single subchannel") {
  const auto net = single_cell(5);
  auto rng = substream(3, 0, StreamPurpose::kScheduling);
  const auto a = schedule_uncoordinated(net, {1, ScheduleMode::kUncoordinated}, rng);
  for (const auto sc : a.sc_of_tx) CHECK(sc == 0);
  CHECK(a.sc_of_typical == 0);
}

TEST_CASE("uncoordinated: subchannel frequencies are uniform") {
  // ~1e5 TX draws pooled over realizations; each frequency within 0.1 +- 0.003.
  PppConfig cfg;
  cfg.lambda_d = 10.0;
  cfg.seed = 21;
  std::array<double, 10> freq{};
  double total = 0.0;
  for (std::uint64_t t = 0; total < 100000.0; ++t) {
    cfg.trial_index = t;
    const auto net = sample_network(cfg);
    auto rng = substream(cfg.seed, t, StreamPurpose::kScheduling);
    const auto a = schedule_uncoordinated(net, {10, ScheduleMode::kUncoordinated}, rng);
    for (const auto sc : a.sc_of_tx) freq[static_cast<std::size_t>(sc)] += 1.0;
    total += static_cast<double>(a.sc_of_tx.size());
  }
  for (const double f : freq) CHECK(f / total == doctest::Approx(0.1).epsilon(0.03));
}

TEST_CASE("uncoordinated: assignments of distinct TXs are independent") {
  const auto net = single_cell(2);
  const int draws = 20000;
  double s0 = 0.0, s1 = 0.0, s01 = 0.0;
  for (int d = 0; d < draws; ++d) {
    auto rng = substream(8, static_cast<std::uint64_t>(d), StreamPurpose::kScheduling);
    const auto a = schedule_uncoordinated(net, {4, ScheduleMode::kUncoordinated}, rng);
    const double x = a.sc_of_tx[0] == 0 ? 1.0 : 0.0;
    const double y = a.sc_of_tx[1] == 0 ? 1.0 : 0.0;
    s0 += x;
    s1 += y;
    s01 += x * y;
  }
  const double p0 = s0 / draws, p1 = s1 / draws, p01 = s01 / draws;
  const double corr = (p01 - p0 * p1) / std::sqrt(p0 * (1 - p0) * p1 * (1 - p1));
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("coordinated: group sizes and per-subchannel loads for K=7, N=3") {
  const auto net = single_cell(6);  // 6 plain + typical = 7 in the cell
  for (int d = 0; d < 200; ++d) {
    auto rng = substream(17, static_cast<std::uint64_t>(d), StreamPurpose::kScheduling);
    const auto a = schedule_coordinated(net, {3, ScheduleMode::kCoordinated}, rng);

    REQUIRE(a.groups.size() == 1);
    std::vector<std::size_t> sizes;
    for (const auto& g : a.groups[0]) sizes.push_back(g.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 3});

    // loads: floor(7/3)=2 or 3 on every subchannel
    std::array<int, 3> load{};
    for (const auto sc : a.sc_of_tx) ++load[static_cast<std::size_t>(sc)];
    ++load[static_cast<std::size_t>(a.sc_of_typical)];
    for (const int l : load) CHECK((l == 2 || l == 3));

    // within each group all subchannels distinct
    const auto sc_of = [&](std::int32_t id) {
      return id == 6 ? a.sc_of_typical : a.sc_of_tx[static_cast<std::size_t>(id)];
    };
    for (const auto& g : a.groups[0]) {
      std::vector<std::int32_t> scs;
      for (const auto id : g) scs.push_back(sc_of(id));
      std::sort(scs.begin(), scs.end());
      CHECK(std::adjacent_find(scs.begin(), scs.end()) == scs.end());
    }
  }
}

TEST_CASE("coordinated: K <= N forms one fully orthogonal group") {
  const auto net = single_cell(4);  // 5 TXs total, N = 8
  auto rng = substream(18, 0, StreamPurpose::kScheduling);
  const auto a = schedule_coordinated(net, {8, ScheduleMode::kCoordinated}, rng);
  REQUIRE(a.groups[0].size() == 1);
  std::vector<std::int32_t> scs(a.sc_of_tx);
  scs.push_back(a.sc_of_typical);
  std::sort(scs.begin(), scs.end());
  CHECK(std::adjacent_find(scs.begin(), scs.end()) == scs.end());

  const auto cc = cochannel_interferers(net, a);
  CHECK(cc.intracell.empty());  // full orthogonality within the lone group
}

TEST_CASE("coordinated: mean load of a fixed subchannel is K_i/N") {
  // A generic cell (no typical member): put the typical link far away in its
  // own cell so that the probe cell holds exactly K_i = 7 plain TXs.
  NetworkRealization net;
  net.aps.emplace_back(0.0, 0.0);
  net.aps.emplace_back(50.0, 0.0);
  for (int i = 0; i < 7; ++i) {
    net.d2d_txs.emplace_back(0.1 * i, 0.3);
    net.cell_of_tx.push_back(0);
  }
  net.typical_rx = Point2(50.0, 0.0);
  net.typical_tx = Point2(50.1, 0.0);
  net.cell_of_typical_tx = 1;
  net.cell_of_typical_rx = 1;

  const int draws = 30000, n_sc = 3;
  double on_sc0 = 0.0;
  for (int d = 0; d < draws; ++d) {
    auto rng = substream(19, static_cast<std::uint64_t>(d), StreamPurpose::kScheduling);
    const auto a = schedule_coordinated(net, {n_sc, ScheduleMode::kCoordinated}, rng);
    for (int i = 0; i < 7; ++i) {
      if (a.sc_of_tx[static_cast<std::size_t>(i)] == 0) on_sc0 += 1.0;
    }
  }
  CHECK(on_sc0 / draws == doctest::Approx(7.0 / n_sc).epsilon(0.02));
}

TEST_CASE("coordinated N=1 equals uncoordinated N=1 exactly") {
  PppConfig cfg;
  cfg.seed = 41;
  for (std::uint64_t t = 0; t < 50; ++t) {
    cfg.trial_index = t;
    const auto net = sample_network(cfg);
    auto r1 = substream(cfg.seed, t, StreamPurpose::kScheduling);
    auto r2 = substream(cfg.seed, t, StreamPurpose::kScheduling);
    const auto cu = cochannel_interferers(net, schedule_uncoordinated(net, {1, ScheduleMode::kUncoordinated}, r1));
    const auto cc = cochannel_interferers(net, schedule_coordinated(net, {1, ScheduleMode::kCoordinated}, r2));
    // with one subchannel both schemes expose every non-typical TX
    CHECK(cu.total() == net.d2d_txs.size());
    CHECK(cc.total() == net.d2d_txs.size());
  }
}

TEST_CASE("cochannel_interferers: thinning level and bookkeeping") {
  PppConfig cfg;
  cfg.lambda_d = 10.0;
  cfg.seed = 43;
  const int n_sc = 10;
  const double expect = cfg.lambda_d / n_sc * cfg.window.area();
  double coord_inter = 0.0, uncoord_sum = 0.0, uncoord_inter = 0.0;
  double coord_intra = 0.0, uncoord_intra = 0.0;
  const int draws = 2000;
  for (int t = 0; t < draws; ++t) {
    cfg.trial_index = static_cast<std::uint64_t>(t);
    const auto net = sample_network(cfg);
    auto r1 = substream(cfg.seed, cfg.trial_index, StreamPurpose::kScheduling);
    auto r2 = substream(cfg.seed, cfg.trial_index, StreamPurpose::kScheduling, 1);
    const auto cu = cochannel_interferers(net, schedule_uncoordinated(net, {n_sc, ScheduleMode::kUncoordinated}, r1));
    const auto cc = cochannel_interferers(net, schedule_coordinated(net, {n_sc, ScheduleMode::kCoordinated}, r2));
    uncoord_sum += static_cast<double>(cu.total());
    uncoord_inter += static_cast<double>(cu.intercell.size());
    coord_inter += static_cast<double>(cc.intercell.size());
    uncoord_intra += static_cast<double>(cu.intracell.size());
    coord_intra += static_cast<double>(cc.intracell.size());
  }
  const double se = std::sqrt(expect / draws);  // Poisson-ish scale
  CHECK(uncoord_sum / draws == doctest::Approx(expect).epsilon(4.0 * se / expect));
  // outside the typical cell both schemes thin at the same 1/N level
  CHECK(coord_inter / draws ==
        doctest::Approx(uncoord_inter / draws).epsilon(6.0 * se / expect));
  // coordination strictly thins the typical cell on average
  CHECK(coord_intra < uncoord_intra);
}

TEST_CASE("schedule: invalid subchannel count") {
  const auto net = single_cell(2);
  auto rng = substream(1, 0, StreamPurpose::kScheduling);
  CHECK_THROWS_AS(schedule_uncoordinated(net, {0, ScheduleMode::kUncoordinated}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(schedule_coordinated(net, {-3, ScheduleMode::kCoordinated}, rng),
                  std::invalid_argument);
}
