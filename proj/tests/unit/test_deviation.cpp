#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "tdg/deviation.hpp"
#include "tdg/errors.hpp"

namespace tdg {
namespace {

using testing::kTwoThirds;

const SpeedRatio kNu{kTwoThirds};

struct Setup {
  GameState state;
  Assignment assign;
  Roles roles;
};

Setup setup(const GameState& s) {
  Setup out{s, solve_lbap(build_cost_matrix(s, kNu)), {}};
  out.roles = Roles::from(out.assign);
  return out;
}

TEST(Roles, WorkedExample) {
  const auto su = setup(testing::example_state());
  EXPECT_EQ(su.roles.critical_attacker, 0u);
  EXPECT_EQ(su.roles.critical_defender, 0u);
  EXPECT_EQ(su.roles.support_attacker, 1u);
  EXPECT_EQ(su.roles.support_defender, 1u);
}

TEST(OneDeviation, WorkedExampleCandidates) {
  const auto su = setup(testing::example_state());
  const auto c = one_deviation_candidates(su.state, su.assign, kNu);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0].x, -1.2362, 1e-4);
  EXPECT_NEAR(c[0].y, 0.5877, 1e-4);
  EXPECT_NEAR(c[1].x, -0.4603, 1e-4);
  EXPECT_NEAR(c[1].y, 0.2574, 1e-4);
  const auto plan = one_deviation_plan(su.state, su.assign, kNu);
  ASSERT_TRUE(plan.has_value());
  EXPECT_EQ(plan->point, c[0]);
  EXPECT_EQ(plan->mode, DeviationMode::kOne);
  // On the circle boundary both arrive together.
  EXPECT_NEAR(plan->eta_attacker, plan->eta_defender, 1e-12);
}

TEST(OneDeviation, NoCandidateWhenSupportIsFar) {
  auto s = testing::example_state();
  s.attackers[1].position = {2.0, -2.0};
  const auto su = setup(s);
  EXPECT_TRUE(one_deviation_candidates(su.state, su.assign, kNu).empty());
  EXPECT_FALSE(one_deviation_plan(su.state, su.assign, kNu).has_value());
}

// Dense sampling of the defender's segment: sign changes of the boundary
// function, kept when nearer the critical than the support defender.
std::vector<Point2> candidates_oracle(const GameState& s, const Roles& r, int n) {
  const Point2 da = s.defenders[r.critical_defender].position;
  const Point2 db = s.defenders[r.support_defender].position;
  const Point2 as = s.attackers[r.support_attacker].position;
  const Point2 xb =
      capture_point(apollonius(s.attackers[r.critical_attacker].position, da, kNu), s.target).point;
  auto f = [&](const Point2& p) { return dist(p, as) - kNu.value() * dist(p, da); };
  std::vector<Point2> out;
  Point2 prev = da;
  for (int k = 1; k <= n; ++k) {
    const Point2 p = da + (static_cast<double>(k) / n) * (xb - da);
    if ((f(prev) <= 0.0) != (f(p) <= 0.0)) {
      const Point2 mid = 0.5 * (prev + p);
      if (dist(mid, da) < dist(mid, db)) out.push_back(mid);
    }
    prev = p;
  }
  return out;
}

TEST(OneDeviation, MatchesSamplingOracle) {
  std::mt19937_64 rng(41);
  int compared = 0;
  for (int k = 0; k < 400; ++k) {
    auto sc = testing::random_layout(rng, GameMode::kOneDeviation);
    sc.nu = kTwoThirds;
    const auto s = sc.initial_state();
    const auto su = setup(s);
    const auto got = one_deviation_candidates(s, su.assign, kNu);
    const auto want = candidates_oracle(s, su.roles, 20000);
    // Skip layouts where a root sits within sampling error of the bisector
    // or of a segment end.
    bool fragile = false;
    for (const auto& p : got) {
      const double gap = std::abs(dist(p, s.defenders[su.roles.critical_defender].position) -
                                  dist(p, s.defenders[su.roles.support_defender].position));
      fragile = fragile || gap < 1e-3;
    }
    if (fragile) continue;
    ++compared;
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LE(dist(got[i], want[i]), 1e-3);
  }
  EXPECT_GT(compared, 300);
}

TEST(Precompute, WorkedExampleEndsInsideSector) {
  const auto su = setup(testing::example_state());
  const auto traj = precompute_defender_trajectory(su.state, su.roles, kNu);
  ASSERT_GT(traj.samples.size(), 2u);
  EXPECT_TRUE(traj.attacker_captured);
  const auto regions = build_feasibility_regions(su.state, su.roles, kNu);
  const double r_end = dist(traj.samples.back().attacker, su.state.target);
  EXPECT_GT(r_end, regions.safe_circle_radius);
  EXPECT_LT(r_end, dist(regions.p1, su.state.target));
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const auto& a = traj.samples[k - 1];
    const auto& b = traj.samples[k];
    EXPECT_NEAR(dist(a.defender, b.defender), traj.step, 1e-12);
    EXPECT_NEAR(dist(a.attacker, b.attacker), kNu.value() * traj.step, 1e-12);
  }
}

TEST(Precompute, CollinearPathStaysStraight) {
  const auto s = GameState::initial({0, 0}, {Point2{-1, 0}, Point2{-1.2, 0.4}},
                                    {Point2{-1.5, 0}, Point2{-1.7, 0.3}});
  Roles r;
  const auto traj = precompute_defender_trajectory(s, r, kNu);
  for (const auto& p : traj.samples) {
    EXPECT_NEAR(p.defender.y, 0.0, 1e-12);
    EXPECT_NEAR(p.attacker.y, 0.0, 1e-12);
  }
}

TEST(Precompute, TimesOut) {
  const auto su = setup(testing::example_state());
  EXPECT_THROW(precompute_defender_trajectory(su.state, su.roles, kNu, {1e-4, 1e-3, 0.05}),
               NonConvergence);
}

TEST(TwoDeviation, WorkedExamplePlan) {
  const auto su = setup(testing::example_state());
  const auto traj = precompute_defender_trajectory(su.state, su.roles, kNu);
  const auto plan = two_deviation_plan(traj, su.state, su.roles, kNu);
  EXPECT_EQ(plan.mode, DeviationMode::kTwo);
  EXPECT_NEAR(plan.point.x, -0.4595, 5e-4);
  EXPECT_NEAR(plan.point.y, 0.2529, 5e-4);
  EXPECT_LE(plan.eta_attacker, plan.eta_defender + 1e-9);

  const auto early =
      two_deviation_plan(traj, su.state, su.roles, kNu, InterceptSelection::kEarliest);
  EXPECT_LE(early.eta_defender, plan.eta_defender);
  EXPECT_LE(early.eta_attacker, early.eta_defender + 1e-9);
}

TEST(TwoDeviation, StableUnderFinerStep) {
  const auto su = setup(testing::example_state());
  const auto coarse = two_deviation_plan(precompute_defender_trajectory(su.state, su.roles, kNu),
                                         su.state, su.roles, kNu);
  const auto fine = two_deviation_plan(
      precompute_defender_trajectory(su.state, su.roles, kNu, {1e-5, 1e-3, 100.0}), su.state,
      su.roles, kNu);
  EXPECT_LE(dist(coarse.point, fine.point), 1e-3);
}

TEST(TwoDeviation, SupportOnCriticalDefenderIsImmediate) {
  auto s = testing::example_state();
  s.attackers[1].position = s.defenders[0].position;
  Roles r;
  const auto traj = precompute_defender_trajectory(s, r, kNu);
  const auto plan = two_deviation_plan(traj, s, r, kNu);
  EXPECT_EQ(plan.point, s.defenders[0].position);
  EXPECT_EQ(plan.eta_defender, 0.0);
}

TEST(TwoDeviation, InfeasibleWhenSupportIsFar) {
  auto s = testing::example_state();
  s.attackers[1].position = {2.0, -2.0};
  Roles r;
  const auto traj = precompute_defender_trajectory(s, r, kNu);
  EXPECT_THROW(two_deviation_plan(traj, s, r, kNu), Infeasible);
}

TEST(Regions, WorkedExampleInvariants) {
  const auto su = setup(testing::example_state());
  const auto r = build_feasibility_regions(su.state, su.roles, kNu);
  const Point2 t = su.state.target;
  const auto ac = apollonius(su.state.attackers[0].position, su.state.defenders[0].position, kNu);
  EXPECT_NEAR(r.safe_circle_radius, 0.0963, 1e-4);
  EXPECT_NEAR(dist(r.p1, ac.center), ac.radius, 1e-12);
  EXPECT_LE(distance_to_segment(r.p1, {su.state.attackers[0].position, t}), 1e-12);
  EXPECT_NEAR(dist(r.p2, t), r.safe_circle_radius, 1e-12);
  EXPECT_NEAR(dist(r.p3, t), dist(r.p1, t), 1e-12);
  EXPECT_LT(r.safe_circle_radius, dist(r.p1, t));
  EXPECT_TRUE(r.in_omega_d_closure(su.state.defenders[0].position, 1e-12));
  EXPECT_TRUE(r.in_omega_b_closure(r.p1, 1e-9));
  EXPECT_FALSE(r.in_omega_b_closure(t, 1e-9));
}

TEST(Regions, DegenerateWhenTargetInside) {
  const auto s = GameState::initial({0, 0}, {Point2{0.1, 0}, Point2{0, 0.1}},
                                    {Point2{5, 5}, Point2{-5, 5}});
  EXPECT_THROW(build_feasibility_regions(s, Roles{}, kNu), DegenerateGeometry);
}

TEST(Regions, TrajectoryStaysInsideAndCapturePointMovesOutward) {
  const auto su = setup(testing::example_state());
  const auto r = build_feasibility_regions(su.state, su.roles, kNu);
  const auto traj = precompute_defender_trajectory(su.state, su.roles, kNu);
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const auto& p = traj.samples[k];
    EXPECT_TRUE(r.in_omega_d_closure(p.defender, 1e-6)) << "t=" << p.t;
    if (dist(p.attacker, p.defender) < 1e-2) break;
    const auto xb = capture_point(apollonius(p.attacker, p.defender, kNu), su.state.target);
    EXPECT_TRUE(r.in_omega_b_closure(xb.point, 1e-6)) << "t=" << p.t;
  }
}

TEST(Theorem2, HoldsOnWorkedExampleAtEveryResolution) {
  const auto su = setup(testing::example_state());
  const auto r = build_feasibility_regions(su.state, su.roles, kNu);
  for (int n : {16, 32, 64, 128}) {
    const auto c = check_theorem2_condition(r, su.state, su.roles, kNu, n);
    EXPECT_TRUE(c.holds) << n;
    EXPECT_GT(c.samples_tested, n);
    EXPECT_FALSE(c.counterexample.has_value());
  }
}

TEST(Theorem2, FailsWhenSupportIsFar) {
  auto s = testing::example_state();
  s.attackers[1].position = {2.0, -2.0};
  Roles r;
  const auto regions = build_feasibility_regions(s, r, kNu);
  const auto c = check_theorem2_condition(regions, s, r, kNu, 32);
  EXPECT_FALSE(c.holds);
  ASSERT_TRUE(c.counterexample.has_value());
  EXPECT_TRUE(regions.in_omega_b_closure(*c.counterexample, 1e-9));
}

TEST(Theorem2, RejectsCoarseGrid) {
  const auto su = setup(testing::example_state());
  const auto r = build_feasibility_regions(su.state, su.roles, kNu);
  EXPECT_THROW(check_theorem2_condition(r, su.state, su.roles, kNu, 8), Error);
}

TEST(PostInterception, WinCheck) {
  auto s = testing::example_state();
  s.attackers[1].active = false;
  s.defenders[0].active = false;
  // A1 alone against D2: the target lies inside their circle.
  EXPECT_TRUE(check_win_condition_after_interception(s, kNu));
  s.defenders[1].position = {-0.1, 0.1};
  EXPECT_FALSE(check_win_condition_after_interception(s, kNu));
  s.defenders[1].active = false;
  EXPECT_TRUE(check_win_condition_after_interception(s, kNu));
  s.attackers[0].active = false;
  EXPECT_FALSE(check_win_condition_after_interception(s, kNu));
  EXPECT_THROW(check_win_condition_after_interception(testing::example_state(), kNu), Error);
}

}  // namespace
}  // namespace tdg
