#include "tdg/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tdg/errors.hpp"

namespace tdg {

std::string strategy_name(const AgentStrategy& s) {
  struct Namer {
    std::string operator()(const Nominal&) const { return "nominal"; }
    std::string operator()(const StraightToTarget&) const { return "straight-to-target"; }
    std::string operator()(const Intercept&) const { return "intercept"; }
    std::string operator()(const Dwell&) const { return "dwell"; }
    std::string operator()(const Zero&) const { return "zero"; }
  };
  return std::visit(Namer{}, s);
}

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "must be positive");
  if (!(capture_eps > 0.0) || !std::isfinite(capture_eps))
    throw ValidationError("capture_eps", "must be positive");
  if (dt > capture_eps / 2.0)
    throw ValidationError("dt", "must not exceed capture_eps / 2");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max", "must be positive");
  if (record_every == 0) throw ValidationError("record_every", "must be at least 1");
  if (theorem2_grid < 16) throw ValidationError("theorem2_grid", "must be at least 16");
}

std::string to_string(GameMode m) {
  switch (m) {
    case GameMode::kNominal: return "nominal";
    case GameMode::kOneDeviation: return "one-dev";
    case GameMode::kTwoDeviation: return "two-dev";
  }
  return "?";
}

GameMode parse_game_mode(const std::string& s) {
  if (s == "nominal") return GameMode::kNominal;
  if (s == "one-dev" || s == "one-deviation") return GameMode::kOneDeviation;
  if (s == "two-dev" || s == "two-deviation") return GameMode::kTwoDeviation;
  throw ValidationError("mode", "unknown mode '" + s + "'");
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::kAttackerReachesTarget: return "attacker-reaches-target";
    case EventKind::kAttackerInterceptsDefender: return "attacker-intercepts-defender";
    case EventKind::kDefenderCapturesAttacker: return "defender-captures-attacker";
  }
  return "?";
}

std::string to_string(Winner w) {
  switch (w) {
    case Winner::kAttackers: return "attackers";
    case Winner::kDefenders: return "defenders";
    case Winner::kNone: return "none";
  }
  return "?";
}

namespace {

std::size_t paired_defender(const Assignment& assign, std::size_t attacker) {
  return attacker < assign.psi.size() ? assign.psi[attacker] : kUnassigned;
}

std::optional<Point2> pair_capture_point(const GameState& s, std::size_t i, std::size_t j,
                                         SpeedRatio nu) {
  if (j == kUnassigned || !s.attackers[i].active || !s.defenders[j].active) return std::nullopt;
  return capture_point(apollonius(s.attackers[i].position, s.defenders[j].position, nu), s.target)
      .point;
}

// Unit heading toward `aim`, shortened on the final step so the agent lands on it.
Point2 arrive_control(const Point2& from, const Point2& aim, double reach) {
  const double d = dist(from, aim);
  const auto u = try_unit_vector(from, aim);
  if (!u) return {};
  return std::min(1.0, d / reach) * *u;
}

}  // namespace

TeamControls compute_controls(const GameState& state, const StrategyProfile& profile,
                              const Assignment& assign, SpeedRatio nu, double dt) {
  TeamControls out;
  for (std::size_t i = 0; i < kTeamSize; ++i) {
    const auto& a = state.attackers[i];
    if (!a.active) continue;
    const auto& strat = profile.attackers[i];
    if (std::holds_alternative<Nominal>(strat)) {
      if (auto xb = pair_capture_point(state, i, paired_defender(assign, i), nu))
        out.attackers[i] = try_unit_vector(a.position, *xb).value_or(Point2{});
      else
        out.attackers[i] = try_unit_vector(a.position, state.target).value_or(Point2{});
    } else if (std::holds_alternative<StraightToTarget>(strat)) {
      out.attackers[i] = try_unit_vector(a.position, state.target).value_or(Point2{});
    } else if (const auto* ic = std::get_if<Intercept>(&strat)) {
      out.attackers[i] = arrive_control(a.position, ic->plan.point, nu.value() * dt);
    }
  }
  for (std::size_t j = 0; j < kTeamSize; ++j) {
    const auto& d = state.defenders[j];
    if (!d.active || !std::holds_alternative<Nominal>(profile.defenders[j])) continue;
    const auto i = assign.attacker_of(j);
    if (!i) continue;
    if (auto xb = pair_capture_point(state, *i, j, nu))
      out.defenders[j] = try_unit_vector(d.position, *xb).value_or(Point2{});
  }
  return out;
}

StepResult step(const GameState& state, const StrategyProfile& profile, const Assignment& assign,
                SpeedRatio nu, double dt) {
  StepResult r{state, compute_controls(state, profile, assign, nu, dt)};
  for (std::size_t i = 0; i < kTeamSize; ++i)
    if (r.state.attackers[i].active)
      r.state.attackers[i].position += (nu.value() * dt) * r.controls.attackers[i];
  for (std::size_t j = 0; j < kTeamSize; ++j)
    if (r.state.defenders[j].active) r.state.defenders[j].position += dt * r.controls.defenders[j];
  r.state.clock = state.clock + dt;
  return r;
}

std::vector<Event> detect_events(const GameState& state, const StrategyProfile& profile,
                                 const Assignment& assign, double capture_eps, bool any_pairing) {
  std::vector<Event> events;
  std::array<bool, kTeamSize> att_used{};
  std::array<bool, kTeamSize> def_used{};

  for (std::size_t i = 0; i < kTeamSize; ++i) {
    const auto& a = state.attackers[i];
    if (a.active && dist(a.position, state.target) <= capture_eps) {
      events.push_back({state.clock, EventKind::kAttackerReachesTarget, i, std::nullopt});
      att_used[i] = true;
    }
  }

  for (std::size_t i = 0; i < kTeamSize; ++i) {
    const auto& a = state.attackers[i];
    if (!a.active || att_used[i]) continue;
    std::optional<std::size_t> prey;
    if (const auto* ic = std::get_if<Intercept>(&profile.attackers[i])) prey = ic->defender;
    if (const auto* dw = std::get_if<Dwell>(&profile.attackers[i])) prey = dw->defender;
    if (!prey || def_used[*prey] || !state.defenders[*prey].active) continue;
    if (dist(a.position, state.defenders[*prey].position) <= capture_eps) {
      events.push_back({state.clock, EventKind::kAttackerInterceptsDefender, i, *prey});
      att_used[i] = true;
      def_used[*prey] = true;
    }
  }

  for (std::size_t j = 0; j < kTeamSize; ++j) {
    const auto& d = state.defenders[j];
    if (!d.active || def_used[j]) continue;
    for (std::size_t i = 0; i < kTeamSize; ++i) {
      const auto& a = state.attackers[i];
      if (!a.active || att_used[i]) continue;
      if (!any_pairing && paired_defender(assign, i) != j) continue;
      if (dist(a.position, d.position) <= capture_eps) {
        events.push_back({state.clock, EventKind::kDefenderCapturesAttacker, i, j});
        att_used[i] = true;
        def_used[j] = true;
        break;
      }
    }
  }
  return events;
}

void apply_events(GameState& state, const std::vector<Event>& events) {
  for (const auto& e : events) {
    auto& a = state.attackers[e.attacker];
    a.active = false;
    a.final_time = e.t;
    if (e.kind == EventKind::kAttackerReachesTarget) a.position = state.target;
    if (e.defender) state.defenders[*e.defender].active = false;
  }
}

double payoff_from_row(const TraceRow& row, const Point2& target) {
  double j = std::numeric_limits<double>::infinity();
  for (const auto& p : row.attackers) j = std::min(j, dist(p, target));
  return j;
}

Assessment assess(const GameState& initial, SpeedRatio nu, int theorem2_grid) {
  Assessment as;
  as.phi = build_cost_matrix(initial, nu);
  as.assignment = solve_lbap(as.phi);
  as.roles = Roles::from(as.assignment);
  as.nominal_condition = defender_win_condition(initial, as.assignment, nu);
  as.one_dev_candidates = one_deviation_candidates(initial, as.assignment, nu);
  as.theorem1_feasible = !as.one_dev_candidates.empty();
  try {
    as.regions = build_feasibility_regions(initial, as.roles, nu);
    as.theorem2 = check_theorem2_condition(*as.regions, initial, as.roles, nu, theorem2_grid);
  } catch (const Error& e) {
    as.regions.reset();
    as.regions_error = e.what();
  }
  return as;
}

namespace {

// Keeps surviving pairs, then matches leftover survivors in index order.
Assignment phase2_pairing(const GameState& s, const Assignment& phase1) {
  Assignment out = phase1;
  std::array<bool, kTeamSize> def_taken{};
  for (std::size_t i = 0; i < kTeamSize; ++i) {
    const std::size_t j = out.psi[i];
    if (!s.attackers[i].active || j == kUnassigned || !s.defenders[j].active)
      out.psi[i] = kUnassigned;
    else
      def_taken[j] = true;
  }
  for (std::size_t i = 0; i < kTeamSize; ++i) {
    if (!s.attackers[i].active || out.psi[i] != kUnassigned) continue;
    for (std::size_t j = 0; j < kTeamSize; ++j) {
      if (s.defenders[j].active && !def_taken[j]) {
        out.psi[i] = j;
        def_taken[j] = true;
        break;
      }
    }
  }
  return out;
}

StrategyProfile phase2_profile(const Assignment& pairing) {
  StrategyProfile p;
  for (std::size_t i = 0; i < kTeamSize; ++i)
    p.attackers[i] = pairing.psi[i] == kUnassigned ? AgentStrategy{StraightToTarget{}}
                                                   : AgentStrategy{Nominal{}};
  for (std::size_t j = 0; j < kTeamSize; ++j)
    p.defenders[j] = pairing.attacker_of(j) ? AgentStrategy{Nominal{}} : AgentStrategy{Zero{}};
  return p;
}

void configure_deviation(RunResult& r, const GameState& initial, SpeedRatio nu,
                         const SimConfig& config, StrategyProfile& profile) {
  const auto& as = r.assessment;
  const Roles& roles = as.roles;
  if (!as.nominal_condition) {
    r.fallback_reason = "defender-win condition fails at t=0; deviation not applicable";
    return;
  }
  if (r.mode == GameMode::kOneDeviation) {
    r.plan = one_deviation_plan(initial, as.assignment, nu);
    if (!r.plan) {
      r.fallback_reason = "no interception point satisfies the one-deviation condition";
      return;
    }
  } else {
    try {
      const auto traj = precompute_defender_trajectory(
          initial, roles, nu, {config.dt, config.capture_eps, config.t_max});
      r.plan = two_deviation_plan(traj, initial, roles, nu, InterceptSelection::kLatest);
    } catch (const Error& e) {
      r.fallback_reason = std::string("two-deviation plan unavailable: ") + e.what();
      return;
    }
    profile.attackers[roles.critical_attacker] = StraightToTarget{};
  }
  profile.attackers[roles.support_attacker] = Intercept{*r.plan, roles.critical_defender};
  r.deviation_applied = true;
}

TraceRow make_row(const GameState& s, const TeamControls& c, const Roles& roles,
                  const Assignment& phase1, SpeedRatio nu, int phase) {
  TraceRow row;
  row.t = s.clock;
  for (std::size_t k = 0; k < kTeamSize; ++k) {
    row.attackers[k] = s.attackers[k].position;
    row.defenders[k] = s.defenders[k].position;
  }
  row.controls = c;
  row.xb_critical = pair_capture_point(s, roles.critical_attacker, roles.critical_defender, nu);
  row.xb_support = pair_capture_point(s, roles.support_attacker,
                                      paired_defender(phase1, roles.support_attacker), nu);
  row.phase = phase;
  return row;
}

}  // namespace

RunResult run(const GameState& initial, SpeedRatio nu, GameMode mode, const SimConfig& config) {
  config.validate();
  RunResult r;
  r.mode = mode;
  r.nu = nu.value();
  r.assessment = assess(initial, nu, config.theorem2_grid);

  StrategyProfile profile;
  if (mode != GameMode::kNominal) configure_deviation(r, initial, nu, config, profile);

  const Assignment& phase1 = r.assessment.assignment;
  const Roles& roles = r.assessment.roles;
  Assignment pairing = phase1;
  GameState state = initial;
  state.clock = 0.0;
  int phase = 1;
  bool reached = false;

  for (std::size_t k = 0;; ++k) {
    state.clock = static_cast<double>(k) * config.dt;

    auto events = detect_events(state, profile, pairing, config.capture_eps, phase == 2);
    if (!events.empty()) {
      apply_events(state, events);
      for (const auto& e : events) {
        reached |= e.kind == EventKind::kAttackerReachesTarget;
        r.trace.events.push_back(e);
      }
      if (phase == 1) {
        r.trace.phase1_end = state.clock;
        r.state_at_phase1_end = state;
        phase = 2;
        pairing = phase2_pairing(state, phase1);
        profile = phase2_profile(pairing);
      }
    }

    const bool over = reached || state.active_attackers() == 0;
    const bool timeout = !over && state.clock >= config.t_max;
    if (over || timeout) {
      r.status = timeout ? RunStatus::kTimeout : RunStatus::kCompleted;
      for (auto& a : state.attackers) {
        if (a.active || !a.final_time) a.final_time = state.clock;
      }
      r.trace.rows.push_back(make_row(state, TeamControls{}, roles, phase1, nu, phase));
      break;
    }

    // Intercepting attackers that have landed on their point wait there.
    for (std::size_t i = 0; i < kTeamSize; ++i) {
      if (const auto* ic = std::get_if<Intercept>(&profile.attackers[i])) {
        if (dist(state.attackers[i].position, ic->plan.point) <= kDegenerateTol)
          profile.attackers[i] = Dwell{ic->defender};
      }
    }

    auto next = step(state, profile, pairing, nu, config.dt);
    if (k % config.record_every == 0)
      r.trace.rows.push_back(make_row(state, next.controls, roles, phase1, nu, phase));
    state = next.state;
  }

  r.trace.t_final = state.clock;
  double payoff = std::numeric_limits<double>::infinity();
  for (const auto& a : state.attackers) payoff = std::min(payoff, dist(a.position, state.target));
  r.trace.payoff = payoff;
  if (r.status == RunStatus::kCompleted) r.winner = reached ? Winner::kAttackers : Winner::kDefenders;
  r.final_state = state;
  return r;
}

}  // namespace tdg
