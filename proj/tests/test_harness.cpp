#include <gtest/gtest.h>

#include <cmath>

#include "conjlen/ball.hpp"
#include "conjlen/errors.hpp"
#include "conjlen/harness.hpp"
#include "conjlen/oracle.hpp"
#include "conjlen/solvers.hpp"

using namespace conjlen;

namespace {

void expect_table_invariants(const GroupConfig& cfg, const ClfTable& t) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    EXPECT_EQ(r.n, i);
    if (i > 0) EXPECT_GE(r.clf, t.rows[i - 1].clf);
    EXPECT_EQ(conj(cfg, r.conjugator, r.u), r.v);
    EXPECT_EQ(r.conjugator_word.size(), r.clf);
    EXPECT_EQ(eval_word(cfg, r.u_word), r.u);
    EXPECT_EQ(eval_word(cfg, r.v_word), r.v);
    EXPECT_LE(r.u_word.size() + r.v_word.size(), r.n);
  }
}

}  // namespace

TEST(Clf, BaumslagSolitarTable) {
  const GroupConfig cfg = GroupConfig::bs(2);
  ClfOptions opts;
  opts.n_max = 7;
  const ClfTable t = empirical_clf(cfg, opts);
  ASSERT_EQ(t.rows.size(), 8u);
  expect_table_invariants(cfg, t);
  for (const auto& r : t.rows) EXPECT_TRUE(r.certified);
  // (a, a^4) sits at n = 1 + 4 and needs b^2.
  EXPECT_GE(t.rows[5].clf, 2u);
}

TEST(Clf, AgreesWithBallScanOracle) {
  // Per-n maximum of minimal conjugators recomputed by scanning a large
  // ball for every conjugate pair.
  const GroupConfig cfg = GroupConfig::bs(2);
  const std::uint32_t n_max = 6;
  ClfOptions opts;
  opts.n_max = n_max;
  const ClfTable t = empirical_clf(cfg, opts);
  const Ball small = bfs_ball(cfg, n_max);
  const Ball big = bfs_ball(cfg, 3 * n_max);
  std::vector<std::uint32_t> at(n_max + 1, 0);
  for (std::uint32_t i = 0; i < small.size(); ++i)
    for (std::uint32_t j = 0; j < small.size(); ++j) {
      const std::uint32_t n = small.length(i) + small.length(j);
      if (n > n_max || !conj_solve(cfg, small.element(i), small.element(j)).conjugate) continue;
      const auto m = min_conjugator(big, small.element(i), small.element(j));
      if (m) at[n] = std::max(at[n], m->length);
    }
  std::uint32_t run = 0;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    run = std::max(run, at[n]);
    EXPECT_EQ(t.rows[n].clf, run) << "n=" << n;
  }
}

TEST(Clf, AbelianGroupIsZero) {
  const GroupConfig cfg = GroupConfig::semidirect({}, 2);
  ClfOptions opts;
  opts.n_max = 6;
  const ClfTable t = empirical_clf(cfg, opts);
  for (const auto& r : t.rows) {
    EXPECT_EQ(r.clf, 0u);
    EXPECT_TRUE(r.certified);
  }
}

TEST(Clf, UncertifiedWhenRadiusTooSmall) {
  const GroupConfig cfg = GroupConfig::bs(2);
  ClfOptions opts;
  opts.n_max = 6;
  opts.conjugator_radius = 1;
  const ClfTable t = empirical_clf(cfg, opts);
  EXPECT_FALSE(t.rows.back().certified);
  expect_table_invariants(cfg, t);
}

TEST(Clf, CsvIsDeterministic) {
  const GroupConfig cfg = GroupConfig::gamma_m(IntMatrix{{8, 4}, {4, 4}});
  ClfOptions opts;
  opts.n_max = 4;
  const std::string a = clf_to_csv(cfg, empirical_clf(cfg, opts));
  const std::string b = clf_to_csv(cfg, empirical_clf(cfg, opts));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "n,clf,u_word,v_word,conjugator_word,certified");
}

TEST(Tclf, MultiplicationByTwoIsExact) {
  // u + 2 gamma = gamma + v forces gamma = v - u, so tclf(n) = n.
  const auto rows = empirical_tclf(IntMatrix{{2}}, 12);
  ASSERT_EQ(rows.size(), 13u);
  for (const auto& r : rows) EXPECT_EQ(r.value, r.n);
}

TEST(Tclf, BelowSpectralBound) {
  const IntMatrix phi{{2, 1}, {1, 1}};
  const double lambda = (3 + std::sqrt(5.0)) / 2;
  const auto rows = empirical_tclf(phi, 10);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].value.get_d(), (1 + lambda) * rows[i].n + 1e-9);
    if (i > 0) EXPECT_GE(rows[i].value, rows[i - 1].value);
  }
}

TEST(Rclf, PaperSandwich) {
  const auto rows = empirical_rclf_bs(2, 16);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().n, 2u);
  for (const auto& r : rows) {
    EXPECT_LE(Int(r.n) - 2, 2 * r.value) << "n=" << r.n;
    EXPECT_LE(r.value, 2 * Int(r.n)) << "n=" << r.n;
  }
  // (a^-4, a^-1): b^2.
  EXPECT_EQ(rows[3].value, 2);
}

TEST(Fit, LeastConstant) {
  const std::vector<FitPoint> pts{{0, 0, true}, {1, 2, true}, {2, 3, true}, {3, 9, false}};
  const FitResult lin = fit_bound(pts, FitModel::linear);
  EXPECT_DOUBLE_EQ(lin.constant, 2.0);
  EXPECT_DOUBLE_EQ(lin.max_residual, 1.0);
  for (const auto& p : pts)
    if (p.certified) EXPECT_LE(p.value, lin.constant * p.n);
  const FitResult ex = fit_bound(pts, FitModel::exponential);
  EXPECT_GE(ex.constant, 2.0);
  for (const auto& p : pts)
    if (p.certified) EXPECT_LE(p.value, std::pow(ex.constant, p.n));
  EXPECT_THROW(fit_bound(std::vector<FitPoint>{{1, 1, false}}, FitModel::linear), EmptyTable);
  EXPECT_EQ(model_name(FitModel::exponential), "exponential");
}
