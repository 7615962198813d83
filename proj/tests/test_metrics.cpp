#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <map>

#include "conjlen/ball.hpp"
#include "conjlen/errors.hpp"
#include "conjlen/metrics.hpp"
#include "support.hpp"

using namespace conjlen;

namespace {

// Plain BFS keyed by printed elements, independent of Ball's storage.
std::map<std::string, std::uint32_t> reference_ball(const GroupConfig& cfg, std::uint32_t radius) {
  std::map<std::string, std::uint32_t> dist;
  std::deque<Element> queue{identity(cfg)};
  dist[to_string(identity(cfg))] = 0;
  std::vector<Element> gens;
  for (std::uint32_t g = 0; g < cfg.num_generators(); ++g)
    for (int s : {1, -1}) gens.push_back(generator(cfg, Letter{g, s}));
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    const std::uint32_t dx = dist[to_string(x)];
    if (dx == radius) continue;
    for (const auto& s : gens) {
      Element y = mul(cfg, x, s);
      if (dist.emplace(to_string(y), dx + 1).second) queue.push_back(std::move(y));
    }
  }
  return dist;
}

Element a_power(long r) { return GmElement{0, IntVector{Int(r)}, 0}; }

}  // namespace

TEST(Ball, MatchesReferenceBfs) {
  for (const auto& cfg : {GroupConfig::bs(2), GroupConfig::gamma_m(IntMatrix{{8, 4}, {4, 4}}),
                          GroupConfig::semidirect({IntMatrix{{2, 1}, {1, 1}}})}) {
    const std::uint32_t r = 6;
    const auto ref = reference_ball(cfg, r);
    const Ball ball = bfs_ball(cfg, r);
    ASSERT_EQ(ball.size(), ref.size());
    for (std::uint32_t i = 0; i < ball.size(); ++i) {
      const Element g = ball.element(i);
      ASSERT_EQ(ball.length(i), ref.at(to_string(g)));
      const Word w = ball.geodesic(i);
      EXPECT_EQ(w.size(), ball.length(i));
      EXPECT_EQ(eval_word(cfg, w), g);
    }
    for (std::uint32_t k = 0; k <= r; ++k)
      for (std::size_t i = ball.level_begin(k); i < ball.level_end(k); ++i)
        EXPECT_EQ(ball.length(static_cast<std::uint32_t>(i)), k);
  }
}

TEST(Ball, ExtendAgreesWithFreshBuildAndCapRollsBack) {
  const GroupConfig cfg = GroupConfig::bs(2);
  Ball grown = bfs_ball(cfg, 3);
  grown.extend(7);
  const Ball fresh = bfs_ball(cfg, 7);
  ASSERT_EQ(grown.size(), fresh.size());
  for (std::uint32_t i = 0; i < fresh.size(); ++i) EXPECT_EQ(grown.key(i), fresh.key(i));
  const std::size_t before = grown.size();
  EXPECT_THROW(grown.extend(20, before + 10), CapExceeded);
  EXPECT_EQ(grown.size(), before);
  EXPECT_EQ(grown.radius(), 7u);
  EXPECT_EQ(bfs_ball(cfg, 0).size(), 1u);
}

TEST(Ball, WordLengthAndCsv) {
  const GroupConfig cfg = GroupConfig::bs(2);
  const Ball ball = bfs_ball(cfg, 8);
  EXPECT_EQ(word_length(ball, a_power(16)), 8u);  // b^2 a^4 b^-2
  EXPECT_EQ(word_length(ball, a_power(1)), 1u);
  EXPECT_THROW(word_length(ball, a_power(1 << 20)), BeyondRadius);
  EXPECT_EQ(ball_to_csv(bfs_ball(cfg, 0)), "element,length\n\"(0,(0),0)\",0\n");
}

TEST(Metrics, BsLengthBoundsContainBfsLengths) {
  for (long m : {2L, 3L}) {
    const GroupConfig cfg = GroupConfig::bs(m);
    const Ball ball = bfs_ball(cfg, 12);
    for (long r = 2; r <= 300; ++r) {
      for (long sr : {r, -r}) {
        const auto idx = ball.find(a_power(sr));
        if (!idx) continue;
        const LengthBounds b = bs_length_bounds(Int(sr), m);
        const double len = ball.length(*idx);
        EXPECT_LE(b.lower, len + 1e-12) << "r=" << sr;
        EXPECT_LE(len, b.upper + 1e-12) << "r=" << sr;
      }
    }
  }
}

TEST(Metrics, DistortionAgreesWithReference) {
  const GroupConfig cfg = GroupConfig::bs(2);
  const std::uint32_t radius = 14;
  const auto ref = reference_ball(cfg, radius);
  // |a^r| for r in the ball.
  std::map<long, std::uint32_t> len;
  for (long r = -5000; r <= 5000; ++r)
    if (auto it = ref.find(to_string(a_power(r))); it != ref.end()) len[r] = it->second;

  const Ball ball = bfs_ball(cfg, radius);
  const auto rows = distortion_table(ball, {}, 6);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& row : rows) {
    if (!row.certified) continue;
    long delta = 0;
    for (const auto& [r, l] : len)
      if (l <= row.n) delta = std::max(delta, std::labs(r));
    EXPECT_EQ(row.delta, delta) << "n=" << row.n;
    // Smallest |r| whose length reaches n; absent means beyond the ball.
    long ldist = -1;
    for (long r = 0; r <= 5000; ++r) {
      const bool reach = (!len.count(r) || len[r] >= row.n) || (!len.count(-r) || len[-r] >= row.n);
      if (reach) {
        ldist = r;
        break;
      }
    }
    EXPECT_EQ(row.ldist, ldist) << "n=" << row.n;
  }
  EXPECT_TRUE(rows[4].certified);
}

TEST(Metrics, DistortionDomain) {
  SubgroupSelector sel;
  sel.subgroup = SubgroupSelector::Subgroup::whole;
  sel.metric = SubgroupSelector::Metric::a_generator;
  EXPECT_THROW(distortion_table(GroupConfig::bs(2), sel, 4), DomainError);
  // The whole group with its own metric is undistorted.
  sel.metric = SubgroupSelector::Metric::restricted;
  for (const auto& row : distortion_table(GroupConfig::bs(2), sel, 5))
    if (row.certified) EXPECT_EQ(row.delta, row.n);
}

TEST(Metrics, HorocyclicDistance) {
  const GroupConfig sol = GroupConfig::gamma_m(IntMatrix{{2, 1}, {1, 1}});
  const HeightPoint o{RatVector{Rat(0), Rat(0)}, Rat(0)};
  EXPECT_THROW(dl_distance(sol, o, o), HypothesisViolated);
  const GroupConfig rot = GroupConfig::gamma_m(IntMatrix{{0, -2}, {1, 0}});
  EXPECT_THROW(dl_distance(rot, o, o), HypothesisViolated);

  // Bi-Lipschitz band against BFS on elements with integral kernel part.
  // Elements deep in the tree direction (large p) are invisible to the
  // real model and are excluded.
  constexpr double kBand = 4.0;
  for (const auto& cfg : {GroupConfig::bs(2), GroupConfig::bs(3), GroupConfig::gamma_m(IntMatrix{{8, 4}, {4, 4}})}) {
    const Ball ball = bfs_ball(cfg, cfg.d() == 1 ? 10 : 7);
    const HeightPoint origin{RatVector(cfg.d(), Rat(0)), Rat(0)};
    for (std::uint32_t i = 1; i < ball.size(); ++i) {
      const auto g = std::get<GmElement>(ball.element(i));
      if (g.p != 0) continue;
      const HeightPoint h{to_rat(g.w), Rat(g.s)};
      const double d = dl_distance(cfg, origin, h);
      EXPECT_NEAR(d, dl_distance(cfg, h, origin), 1e-9);
      EXPECT_GE(d, ball.length(i) / kBand);
      EXPECT_LE(d, ball.length(i) * kBand);
    }
    EXPECT_NEAR(dl_distance(cfg, origin, origin), 0.0, 1e-12);
  }
}
