#pragma once

// Attacker-team deviations from the assignment-based play.
//
// One deviation: the non-critical ("support") attacker leaves its nominal
// path and meets the critical defender on that defender's straight nominal
// path. Two deviations: additionally the critical attacker runs straight for
// the target, so the critical defender's path curves; the support attacker
// then aims at a point of a precomputed defender trajectory.

#include <cstddef>
#include <optional>
#include <vector>

#include "tdg/assignment.hpp"
#include "tdg/engagement.hpp"
#include "tdg/game_state.hpp"
#include "tdg/geom.hpp"

namespace tdg {

// Who plays which role, derived from the frozen assignment.
struct Roles {
  std::size_t critical_attacker = 0;
  std::size_t critical_defender = 0;
  std::size_t support_attacker = 1;
  std::size_t support_defender = 1;

  static Roles from(const Assignment& assign);
};

enum class DeviationMode { kOne, kTwo };

struct InterceptPlan {
  Point2 point;
  double eta_attacker = 0.0;  // support attacker's straight-line travel time
  double eta_defender = 0.0;  // critical defender's arrival time at `point`
  DeviationMode mode = DeviationMode::kOne;
};

// Points of the critical defender's nominal segment [x_D, x_B] lying on the
// boundary of the support attacker's circle against it, and strictly nearer
// the critical than the support defender. Ordered by defender arrival.
std::vector<Point2> one_deviation_candidates(const GameState& state, const Assignment& assign,
                                             SpeedRatio nu);

// Earliest candidate, or nullopt when no candidate exists.
std::optional<InterceptPlan> one_deviation_plan(const GameState& state, const Assignment& assign,
                                                SpeedRatio nu);

struct TrajectorySample {
  double t = 0.0;
  Point2 defender;
  Point2 attacker;
};

struct DefenderTrajectory {
  std::vector<TrajectorySample> samples;
  double step = 0.0;
  bool attacker_captured = false;  // otherwise the attacker reached the target
};

struct TrajectoryOptions {
  double step = 1e-4;
  double capture_eps = 1e-3;
  double t_max = 100.0;
};

// Critical pair in isolation: attacker straight to the target, defender
// heading for the moving capture point. Integrated until capture or arrival.
// Throws NonConvergence if neither happens before options.t_max.
DefenderTrajectory precompute_defender_trajectory(const GameState& state, const Roles& roles,
                                                  SpeedRatio nu,
                                                  const TrajectoryOptions& options = {});

enum class InterceptSelection {
  kEarliest,  // first sample where interception becomes possible
  kLatest,    // last sample of that first feasible window
};

// Picks a point of the precomputed trajectory that the support attacker
// reaches (straight line, speed nu) no later than the defender and that lies
// in both of the support attacker's initial circles. The window edge is
// refined between samples by bisection on the linear interpolant.
// Throws Infeasible when no sample qualifies.
InterceptPlan two_deviation_plan(const DefenderTrajectory& traj, const GameState& state,
                                 const Roles& roles, SpeedRatio nu,
                                 InterceptSelection selection = InterceptSelection::kLatest);

// Ω_D2 is a triangle with the closed disk of radius `excluded_radius` around
// the target removed.
struct ClippedTriangle {
  Triangle hull;
  Point2 excluded_center;
  double excluded_radius = 0.0;
};

struct FeasibilityRegions {
  double safe_circle_radius = 0.0;  // rho_T = |x_T - x_B|
  Point2 capture_point;             // x_B of the critical pair at t = 0
  Point2 p1;                        // [x_A, x_T] meets the critical circle
  Point2 p2;                        // [x_A, x_T] meets the safe circle
  Point2 p3;                        // on ray x_T -> x_B at |x_T - p1|
  AnnularSector omega_b;
  Triangle omega_d1;
  ClippedTriangle omega_d2;

  bool in_omega_b_closure(const Point2& p, double tol) const;
  bool in_omega_d_closure(const Point2& p, double tol) const;
};

// Throws DegenerateGeometry when the target lies inside the critical circle
// or the attacker-target segment misses its boundary.
FeasibilityRegions build_feasibility_regions(const GameState& state, const Roles& roles,
                                             SpeedRatio nu);

struct Theorem2Check {
  bool holds = false;
  int grid_n = 0;
  int samples_tested = 0;
  std::optional<Point2> counterexample;
};

// Discretized check that every segment from the critical defender to a point
// of Ω_B meets both support-attacker circles. Ω_B is sampled on a polar
// grid_n x grid_n grid (closure included). grid_n must be at least 16.
Theorem2Check check_theorem2_condition(const FeasibilityRegions& regions, const GameState& state,
                                       const Roles& roles, SpeedRatio nu, int grid_n);

// After Phase I: true iff the surviving attacker reaches the target first
// against the surviving defender. True when no defender survives.
bool check_win_condition_after_interception(const GameState& state_at_tf1, SpeedRatio nu);

}  // namespace tdg
