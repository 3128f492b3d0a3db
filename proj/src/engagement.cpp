#include "tdg/engagement.hpp"

#include <cmath>

#include "tdg/errors.hpp"

namespace tdg {

SpeedRatio::SpeedRatio(double nu) : nu_(nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw ValidationError("nu", "speed ratio must lie in (0, 1)");
}

ApolloniusCircle apollonius(const Point2& attacker, const Point2& defender, SpeedRatio nu) {
  const double sep = dist(attacker, defender);
  if (sep <= kDegenerateTol) throw CoincidentAgents("attacker and defender coincide");
  return {nu.alpha() * attacker - nu.beta() * defender, nu.gamma() * sep, attacker, defender};
}

CapturePoint capture_point(const ApolloniusCircle& ac, const Point2& target) {
  const double d = dist(ac.center, target);
  if (d <= ac.radius) return {target, 0.0, true};
  return {ac.center + ac.radius * ((target - ac.center) / d), d - ac.radius, false};
}

double pair_cost(const Point2& attacker, const Point2& defender, const Point2& target,
                 SpeedRatio nu) {
  return capture_point(apollonius(attacker, defender, nu), target).distance_to_target;
}

Point2 strategy_1v1_attacker(const Point2& attacker, const Point2& defender,
                             const Point2& target, SpeedRatio nu) {
  const auto xb = capture_point(apollonius(attacker, defender, nu), target);
  return unit_vector(attacker, xb.point);
}

Point2 strategy_1v1_defender(const Point2& attacker, const Point2& defender,
                             const Point2& target, SpeedRatio nu) {
  const auto xb = capture_point(apollonius(attacker, defender, nu), target);
  return unit_vector(defender, xb.point);
}

Point2 capture_point_velocity(const Point2& attacker, const Point2& defender,
                              const Point2& target, const Point2& attacker_vel,
                              const Point2& defender_vel, SpeedRatio nu) {
  const auto ac = apollonius(attacker, defender, nu);
  if (ac.contains(target)) throw TargetInsideCircle();

  const Point2 a = attacker - defender;
  const Point2 da = attacker_vel - defender_vel;
  const Point2 b = target - ac.center;
  const Point2 db = -(nu.alpha() * attacker_vel - nu.beta() * defender_vel);
  const double na = norm(a);
  const double nb = norm(b);
  const double g = nu.gamma();

  const Point2 radial = (g * dot(a, da) / na) * (b / nb);
  const Point2 turn = (g * na) * (b * (dot(b, db) / (nb * nb * nb)) - db / nb);
  return -db + radial - turn;
}

}  // namespace tdg
