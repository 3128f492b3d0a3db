#include "tdg/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdg/errors.hpp"

namespace tdg {

Roles Roles::from(const Assignment& assign) {
  if (assign.psi.size() != kTeamSize) throw Error("deviation roles need a 2v2 assignment");
  Roles r;
  r.critical_attacker = assign.critical_attacker;
  r.critical_defender = assign.critical_defender;
  r.support_attacker = 1 - r.critical_attacker;
  r.support_defender = assign.psi[r.support_attacker];
  return r;
}

std::vector<Point2> one_deviation_candidates(const GameState& state, const Assignment& assign,
                                             SpeedRatio nu) {
  const Roles roles = Roles::from(assign);
  const Point2 crit_a = state.attackers[roles.critical_attacker].position;
  const Point2 crit_d = state.defenders[roles.critical_defender].position;
  const Point2 supp_a = state.attackers[roles.support_attacker].position;
  const Point2 supp_d = state.defenders[roles.support_defender].position;

  const Point2 xb = capture_point(apollonius(crit_a, crit_d, nu), state.target).point;
  const auto support_ac = apollonius(supp_a, crit_d, nu);
  const HalfPlane first_to_reach{crit_d, supp_d};

  std::vector<Point2> out;
  for (const Point2& p : segment_circle_intersections({crit_d, xb}, support_ac.disk()))
    if (in_half_plane(p, first_to_reach)) out.push_back(p);
  return out;
}

std::optional<InterceptPlan> one_deviation_plan(const GameState& state, const Assignment& assign,
                                                SpeedRatio nu) {
  const auto candidates = one_deviation_candidates(state, assign, nu);
  if (candidates.empty()) return std::nullopt;
  const Roles roles = Roles::from(assign);
  const Point2 p = candidates.front();
  return InterceptPlan{p, dist(state.attackers[roles.support_attacker].position, p) / nu.value(),
                       dist(state.defenders[roles.critical_defender].position, p),
                       DeviationMode::kOne};
}

DefenderTrajectory precompute_defender_trajectory(const GameState& state, const Roles& roles,
                                                  SpeedRatio nu,
                                                  const TrajectoryOptions& options) {
  const Point2 target = state.target;
  Point2 att = state.attackers[roles.critical_attacker].position;
  Point2 def = state.defenders[roles.critical_defender].position;
  const double h = options.step;

  DefenderTrajectory traj;
  traj.step = h;
  const auto n_max = static_cast<long long>(std::ceil(options.t_max / h));
  for (long long k = 0;; ++k) {
    const double t = static_cast<double>(k) * h;
    traj.samples.push_back({t, def, att});
    if (dist(att, def) <= options.capture_eps) {
      traj.attacker_captured = true;
      return traj;
    }
    if (dist(att, target) <= options.capture_eps) return traj;
    if (k >= n_max) throw NonConvergence("critical pair did not terminate within t_max");

    const Point2 xb = capture_point(apollonius(att, def, nu), target).point;
    const Point2 u = try_unit_vector(att, target).value_or(Point2{});
    const Point2 v = try_unit_vector(def, xb).value_or(Point2{});
    att += (nu.value() * h) * u;
    def += h * v;
  }
}

namespace {

TrajectorySample lerp(const TrajectorySample& a, const TrajectorySample& b, double s) {
  return {a.t + s * (b.t - a.t), a.defender + s * (b.defender - a.defender),
          a.attacker + s * (b.attacker - a.attacker)};
}

}  // namespace

InterceptPlan two_deviation_plan(const DefenderTrajectory& traj, const GameState& state,
                                 const Roles& roles, SpeedRatio nu,
                                 InterceptSelection selection) {
  if (traj.samples.empty()) throw Infeasible("empty defender trajectory");
  const Point2 supp_a = state.attackers[roles.support_attacker].position;
  const Point2 crit_d = state.defenders[roles.critical_defender].position;
  const Point2 supp_d = state.defenders[roles.support_defender].position;

  if (dist(supp_a, crit_d) <= kDegenerateTol)
    return {crit_d, 0.0, 0.0, DeviationMode::kTwo};

  const auto ac_vs_crit = apollonius(supp_a, crit_d, nu);
  const auto ac_vs_supp = apollonius(supp_a, supp_d, nu);
  auto qualifies = [&](const TrajectorySample& s) {
    return dist(supp_a, s.defender) <= nu.value() * s.t && ac_vs_crit.contains(s.defender) &&
           ac_vs_supp.contains(s.defender);
  };

  const auto& samples = traj.samples;
  const auto first = std::find_if(samples.begin(), samples.end(), qualifies);
  if (first == samples.end()) throw Infeasible("no trajectory sample is interceptable");

  // Bisect on the interpolant between a qualifying and a failing sample,
  // keeping the qualifying side.
  auto refine = [&](const TrajectorySample& good, const TrajectorySample& bad) {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (qualifies(lerp(good, bad, mid)) ? lo : hi) = mid;
    }
    return lerp(good, bad, lo);
  };

  TrajectorySample chosen;
  if (selection == InterceptSelection::kEarliest) {
    chosen = (first == samples.begin()) ? *first : refine(*first, *std::prev(first));
  } else {
    const auto past = std::find_if_not(first, samples.end(), qualifies);
    const auto last = std::prev(past);
    chosen = (past == samples.end()) ? *last : refine(*last, *past);
  }
  return {chosen.defender, dist(supp_a, chosen.defender) / nu.value(), chosen.t,
          DeviationMode::kTwo};
}

bool FeasibilityRegions::in_omega_b_closure(const Point2& p, double tol) const {
  return in_annular_sector_closure(p, omega_b, tol);
}

bool FeasibilityRegions::in_omega_d_closure(const Point2& p, double tol) const {
  if (distance_to_triangle(p, omega_d1) <= tol) return true;
  return distance_to_triangle(p, omega_d2.hull) <= tol &&
         dist(p, omega_d2.excluded_center) >= omega_d2.excluded_radius - tol;
}

FeasibilityRegions build_feasibility_regions(const GameState& state, const Roles& roles,
                                             SpeedRatio nu) {
  const Point2 target = state.target;
  const Point2 att = state.attackers[roles.critical_attacker].position;
  const Point2 def = state.defenders[roles.critical_defender].position;
  const auto ac = apollonius(att, def, nu);
  const auto xb = capture_point(ac, target);
  if (xb.target_inside) throw DegenerateGeometry("target inside the critical pair's circle");

  const auto hits = segment_circle_intersections({att, target}, ac.disk());
  if (hits.empty()) throw DegenerateGeometry("attacker-target segment misses the critical circle");

  FeasibilityRegions r;
  r.safe_circle_radius = xb.distance_to_target;
  r.capture_point = xb.point;
  r.p1 = hits.front();
  const double rho_p1 = dist(target, r.p1);
  r.p2 = target + r.safe_circle_radius * unit_vector(target, att);
  r.p3 = target + rho_p1 * unit_vector(target, xb.point);
  r.omega_b = {target, r.safe_circle_radius, rho_p1, Triangle{target, ac.center, att}};
  r.omega_d1 = {def, r.p1, r.p2};
  r.omega_d2 = {Triangle{def, r.p1, r.p3}, target, rho_p1};
  return r;
}

Theorem2Check check_theorem2_condition(const FeasibilityRegions& regions, const GameState& state,
                                       const Roles& roles, SpeedRatio nu, int grid_n) {
  if (grid_n < 16) throw Error("region check grid must be at least 16 x 16");
  const Point2 supp_a = state.attackers[roles.support_attacker].position;
  const Point2 crit_d = state.defenders[roles.critical_defender].position;
  const Point2 supp_d = state.defenders[roles.support_defender].position;
  const Circle disk_crit = apollonius(supp_a, crit_d, nu).disk();
  const Circle disk_supp = apollonius(supp_a, supp_d, nu).disk();

  const auto& sector = regions.omega_b;
  const Point2 c = sector.center;
  // Ω_B is bounded by the rays from the target through x_B and through the
  // critical attacker; sweep the angle between them.
  const Point2 ray0 = regions.capture_point - c;
  const Point2 ray1 = sector.clip.v3 - c;
  const double a0 = std::atan2(ray0.y, ray0.x);
  double span = std::atan2(ray1.y, ray1.x) - a0;
  if (span > std::numbers::pi) span -= 2.0 * std::numbers::pi;
  if (span < -std::numbers::pi) span += 2.0 * std::numbers::pi;

  Theorem2Check out;
  out.grid_n = grid_n;
  out.holds = true;
  for (int ir = 0; ir < grid_n; ++ir) {
    const double r = sector.rho_inner +
                     (sector.rho_outer - sector.rho_inner) * ir / static_cast<double>(grid_n - 1);
    for (int ia = 0; ia < grid_n; ++ia) {
      const double ang = a0 + span * ia / static_cast<double>(grid_n - 1);
      const Point2 x = c + r * Point2{std::cos(ang), std::sin(ang)};
      if (distance_to_triangle(x, sector.clip) > 1e-12) continue;
      ++out.samples_tested;
      const Segment path{crit_d, x};
      const auto i1 = segment_disk_interval(path, disk_crit);
      const auto i2 = segment_disk_interval(path, disk_supp);
      const bool meets = i1 && i2 && std::max(i1->first, i2->first) <= std::min(i1->second, i2->second);
      if (!meets) {
        out.holds = false;
        out.counterexample = x;
        return out;
      }
    }
  }
  return out;
}

bool check_win_condition_after_interception(const GameState& state_at_tf1, SpeedRatio nu) {
  const AttackerState* att = nullptr;
  const DefenderState* def = nullptr;
  for (const auto& a : state_at_tf1.attackers)
    if (a.active) att = &a;
  for (const auto& d : state_at_tf1.defenders)
    if (d.active) def = &d;
  if (state_at_tf1.active_attackers() > 1 || state_at_tf1.active_defenders() > 1)
    throw Error("win check expects at most one surviving attacker and defender");
  if (att == nullptr) return false;
  if (def == nullptr) return true;
  return capture_point(apollonius(att->position, def->position, nu), state_at_tf1.target)
      .target_inside;
}

}  // namespace tdg
