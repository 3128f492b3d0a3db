#pragma once

// One-attacker-vs-one-defender constructions: the Apollonius circle of a
// pair, the optimal capture point, the equilibrium headings, and the time
// derivative of the capture point along arbitrary play.

#include "tdg/geom.hpp"

namespace tdg {

// Attacker-to-defender speed ratio, strictly inside (0, 1).
class SpeedRatio {
 public:
  // Throws ValidationError("nu") outside (0, 1).
  explicit SpeedRatio(double nu);

  double value() const { return nu_; }
  double alpha() const { return 1.0 / (1.0 - nu_ * nu_); }
  double beta() const { return nu_ * nu_ / (1.0 - nu_ * nu_); }
  double gamma() const { return nu_ / (1.0 - nu_ * nu_); }

 private:
  double nu_;
};

struct ApolloniusCircle {
  Point2 center;
  double radius = 0.0;
  Point2 attacker;
  Point2 defender;

  Circle disk() const { return {center, radius}; }
  // Closed disk: points the attacker reaches no later than the defender.
  bool contains(const Point2& p) const { return dist(p, center) <= radius; }
};

struct CapturePoint {
  Point2 point;
  double distance_to_target = 0.0;
  bool target_inside = false;
};

// Throws CoincidentAgents when attacker and defender coincide.
ApolloniusCircle apollonius(const Point2& attacker, const Point2& defender, SpeedRatio nu);

// Point of the closed disk nearest the target. When the target is inside,
// the target itself is returned with zero distance.
CapturePoint capture_point(const ApolloniusCircle& ac, const Point2& target);

// Convenience: the pair cost phi = distance from x_B to the target.
double pair_cost(const Point2& attacker, const Point2& defender, const Point2& target,
                 SpeedRatio nu);

// Equilibrium headings: both players head for the current capture point.
// DegenerateDirection when the agent already sits on x_B.
Point2 strategy_1v1_attacker(const Point2& attacker, const Point2& defender,
                             const Point2& target, SpeedRatio nu);
Point2 strategy_1v1_defender(const Point2& attacker, const Point2& defender,
                             const Point2& target, SpeedRatio nu);

// Analytic d/dt of x_B for the given agent velocities (not unit controls:
// attacker_vel is nu * u). Requires the target strictly outside the circle.
//
// With a = x_A - x_D, b = x_T - x_C and x_B = x_C + rho b/|b|:
//   dx_B = -db + gamma (a.da/|a|) b/|b| - gamma |a| (b (b.db)/|b|^3 - db/|b|)
// where da = v_A - v_D and db = -(alpha v_A - beta v_D).
Point2 capture_point_velocity(const Point2& attacker, const Point2& defender,
                              const Point2& target, const Point2& attacker_vel,
                              const Point2& defender_vel, SpeedRatio nu);

}  // namespace tdg
