#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "support/fixtures.hpp"
#include "tdg/assignment.hpp"

namespace tdg {
namespace {

using testing::kTwoThirds;

const SpeedRatio kNu{kTwoThirds};

TEST(CostMatrix, WorkedExample) {
  const CostMatrix c = build_cost_matrix(testing::example_state(), kNu);
  EXPECT_NEAR(c(0, 0), 0.0963, 1e-4);
  EXPECT_NEAR(c(0, 1), 0.0, 1e-4);
  EXPECT_NEAR(c(1, 0), 0.4641, 1e-4);
  EXPECT_NEAR(c(1, 1), 0.3211, 1e-4);
}

TEST(CostMatrix, AllTargetsInside) {
  // Defenders far behind: every circle swallows the target.
  const auto s = GameState::initial({0, 0}, {Point2{0.1, 0}, Point2{0, 0.1}},
                                    {Point2{5, 5}, Point2{-5, 5}});
  const CostMatrix c = build_cost_matrix(s, kNu);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(c(i, j), 0.0);
}

TEST(CostMatrix, MirrorSymmetry) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const auto a1 = testing::random_point(rng, -2, 2), a2 = testing::random_point(rng, -2, 2);
    const auto d1 = testing::random_point(rng, -2, 2), d2 = testing::random_point(rng, -2, 2);
    auto mirror = [](Point2 p) { return Point2{p.x, -p.y}; };
    const auto s = GameState::initial({0, 0}, {a1, a2}, {d1, d2});
    const auto m = GameState::initial({0, 0}, {mirror(a1), mirror(a2)}, {mirror(d1), mirror(d2)});
    const CostMatrix c = build_cost_matrix(s, kNu), cm = build_cost_matrix(m, kNu);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(c(i, j), cm(i, j), 1e-12);
  }
}

TEST(Lbap, WorkedExample) {
  const auto a = solve_lbap(build_cost_matrix(testing::example_state(), kNu));
  ASSERT_EQ(a.psi.size(), 2u);
  EXPECT_EQ(a.psi[0], 0u);
  EXPECT_EQ(a.psi[1], 1u);
  EXPECT_NEAR(a.value, 0.0963, 1e-4);
  EXPECT_EQ(a.critical_attacker, 0u);
  EXPECT_EQ(a.critical_defender, 0u);
  EXPECT_EQ(a.attacker_of(1), std::optional<std::size_t>(1));
}

TEST(Lbap, Examples) {
  const auto a = solve_lbap(CostMatrix{{1, 5}, {5, 1}});
  EXPECT_EQ(a.psi, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(a.value, 5.0);

  const auto b = solve_lbap(CostMatrix{{3, 1}, {2, 4}});
  EXPECT_EQ(b.psi, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(b.value, 3.0);
  EXPECT_EQ(b.critical_attacker, 0u);
}

TEST(Lbap, TieBreaksLexicographically) {
  const auto a = solve_lbap(CostMatrix{{2, 2}, {2, 2}});
  EXPECT_EQ(a.psi, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(a.critical_attacker, 0u);
}

TEST(Lbap, SingleEntry) {
  const auto a = solve_lbap(CostMatrix{{0.7}});
  EXPECT_EQ(a.psi, (std::vector<std::size_t>{0}));
  EXPECT_EQ(a.value, 0.7);
}

// Independent oracle: bottleneck value by threshold search. The answer is
// the largest cost c such that the bipartite graph of entries >= c has a
// perfect matching (checked with augmenting paths).
bool has_perfect_matching(const CostMatrix& c, double thr) {
  const std::size_t n = c.size();
  std::vector<int> match(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t j = 0; j < n; ++j) {
        if (c(u, j) < thr || seen[j]) continue;
        seen[j] = true;
        if (match[j] < 0 || augment(static_cast<std::size_t>(match[j]))) {
          match[j] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (!augment(i)) return false;
  }
  return true;
}

double bottleneck_oracle(const CostMatrix& c) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c(i, j) > best && has_perfect_matching(c, c(i, j))) best = c(i, j);
  return best;
}

CostMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool integer) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> ui(0, 3);
  CostMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = integer ? ui(rng) : u(rng);
  return c;
}

TEST(Lbap, MatchesThresholdOracle) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
    const CostMatrix c = random_matrix(rng, n, k % 2 == 0);
    const auto a = solve_lbap(c);
    EXPECT_EQ(a.value, bottleneck_oracle(c));
    // psi is a permutation and every assigned cost is at least the value.
    std::vector<std::size_t> sorted = a.psi;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(sorted[i], i);
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GE(c(i, a.psi[i]), a.value);
      mn = std::min(mn, c(i, a.psi[i]));
    }
    EXPECT_EQ(mn, a.value);
    EXPECT_EQ(c(a.critical_attacker, a.critical_defender), a.value);
    for (std::size_t i = 0; i < a.critical_attacker; ++i) EXPECT_GT(c(i, a.psi[i]), a.value);
  }
}

TEST(Lbap, ValueInvariantUnderRelabeling) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const CostMatrix c = random_matrix(rng, n, false);
    std::vector<std::size_t> pr(n), pc(n);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    CostMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = c(pr[i], pc[j]);
    EXPECT_EQ(solve_lbap(c).value, solve_lbap(p).value);
  }
}

TEST(WinCondition, WorkedExampleDefendersWin) {
  const auto s = testing::example_state();
  const auto a = solve_lbap(build_cost_matrix(s, kNu));
  EXPECT_TRUE(defender_win_condition(s, a, kNu));
}

TEST(WinCondition, FailsWhenTargetInsideAssignedCircle) {
  const auto s = GameState::initial({0, 0}, {Point2{0.1, 0}, Point2{0, 0.1}},
                                    {Point2{5, 5}, Point2{-5, 5}});
  const auto a = solve_lbap(build_cost_matrix(s, kNu));
  EXPECT_FALSE(defender_win_condition(s, a, kNu));
}

TEST(NominalControls, PairsHeadForTheirCapturePoints) {
  const auto s = testing::example_state();
  const auto a = solve_lbap(build_cost_matrix(s, kNu));
  const TeamControls u = nominal_controls(s, a, kNu);
  const Point2 xb = capture_point(apollonius(s.attackers[0].position, s.defenders[0].position, kNu),
                                  s.target)
                        .point;
  const Point2 ua = unit_vector(s.attackers[0].position, xb);
  const Point2 ud = unit_vector(s.defenders[0].position, xb);
  EXPECT_NEAR(u.attackers[0].x, ua.x, 1e-15);
  EXPECT_NEAR(u.attackers[0].y, ua.y, 1e-15);
  EXPECT_NEAR(u.defenders[0].x, ud.x, 1e-15);
  EXPECT_NEAR(u.defenders[0].y, ud.y, 1e-15);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(norm(u.attackers[i]), 1.0, 1e-12);
    EXPECT_NEAR(norm(u.defenders[i]), 1.0, 1e-12);
  }
}

TEST(NominalControls, InactiveAndUnassignedGetZero) {
  auto s = testing::example_state();
  auto a = solve_lbap(build_cost_matrix(s, kNu));
  s.attackers[1].active = false;
  a.psi[1] = kUnassigned;
  const TeamControls u = nominal_controls(s, a, kNu);
  EXPECT_EQ(u.attackers[1], (Point2{0, 0}));
  EXPECT_EQ(u.defenders[1], (Point2{0, 0}));
  EXPECT_NEAR(norm(u.attackers[0]), 1.0, 1e-12);
}

}  // namespace
}  // namespace tdg
