#pragma once

// Fixed-step simulation of the 2v2 game. Phase I runs the team-vs-team
// strategies until the first capture or interception; survivors then play
// the 1v1 equilibrium in Phase II.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tdg/assignment.hpp"
#include "tdg/deviation.hpp"
#include "tdg/engagement.hpp"
#include "tdg/game_state.hpp"

namespace tdg {

// Head for the capture point of the agent's current pair.
struct Nominal {};
struct StraightToTarget {};
// Head for a fixed point, then wait there for `defender`.
struct Intercept {
  InterceptPlan plan;
  std::size_t defender = 0;
};
struct Dwell {
  std::size_t defender = 0;
};
struct Zero {};

using AgentStrategy = std::variant<Nominal, StraightToTarget, Intercept, Dwell, Zero>;

struct StrategyProfile {
  std::array<AgentStrategy, kTeamSize> attackers{Nominal{}, Nominal{}};
  std::array<AgentStrategy, kTeamSize> defenders{Nominal{}, Nominal{}};
};

std::string strategy_name(const AgentStrategy& s);

struct SimConfig {
  double dt = 1e-4;
  double capture_eps = 1e-3;
  double t_max = 100.0;
  std::size_t record_every = 1;
  int theorem2_grid = 64;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

enum class GameMode { kNominal, kOneDeviation, kTwoDeviation };

std::string to_string(GameMode m);
// Accepts "nominal", "one-dev", "two-dev" and the long forms
// "one-deviation", "two-deviation".
GameMode parse_game_mode(const std::string& s);

struct StepResult {
  GameState state;
  TeamControls controls;
};

// Controls for every active agent from the current state. Inactive agents
// and agents sitting on their aim point get zero control.
TeamControls compute_controls(const GameState& state, const StrategyProfile& profile,
                              const Assignment& assign, SpeedRatio nu, double dt);

// One explicit Euler step under compute_controls.
StepResult step(const GameState& state, const StrategyProfile& profile, const Assignment& assign,
                SpeedRatio nu, double dt);

enum class EventKind { kAttackerReachesTarget, kAttackerInterceptsDefender, kDefenderCapturesAttacker };

std::string to_string(EventKind k);

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::kAttackerReachesTarget;
  std::size_t attacker = 0;
  std::optional<std::size_t> defender;
};

// Events at the current state in precedence order: target reach, then
// interception, then capture. An agent takes part in at most one event.
// Captures count only assigned pairs unless `any_pairing` is set.
std::vector<Event> detect_events(const GameState& state, const StrategyProfile& profile,
                                 const Assignment& assign, double capture_eps, bool any_pairing);

// Deactivates the participants and stamps attacker final times. An attacker
// reaching the target is placed on it.
void apply_events(GameState& state, const std::vector<Event>& events);

struct TraceRow {
  double t = 0.0;
  std::array<Point2, kTeamSize> attackers{};
  std::array<Point2, kTeamSize> defenders{};
  TeamControls controls;
  std::optional<Point2> xb_critical;  // capture point of the critical pair
  std::optional<Point2> xb_support;   // capture point of the other assigned pair
  int phase = 1;
};

struct SimTrace {
  std::vector<TraceRow> rows;
  std::vector<Event> events;
  std::optional<double> phase1_end;
  double t_final = 0.0;
  double payoff = 0.0;
};

enum class RunStatus { kCompleted, kTimeout };
enum class Winner { kAttackers, kDefenders, kNone };

std::string to_string(Winner w);

// Everything decided at t = 0: costs, assignment, and the deviation tests.
struct Assessment {
  CostMatrix phi{kTeamSize};
  Assignment assignment;
  Roles roles;
  bool nominal_condition = false;
  std::vector<Point2> one_dev_candidates;
  bool theorem1_feasible = false;
  std::optional<FeasibilityRegions> regions;
  std::optional<Theorem2Check> theorem2;
  std::string regions_error;
};

Assessment assess(const GameState& initial, SpeedRatio nu, int theorem2_grid = 64);

struct RunResult {
  GameMode mode = GameMode::kNominal;
  Assessment assessment;
  bool deviation_applied = false;
  std::string fallback_reason;
  std::optional<InterceptPlan> plan;
  RunStatus status = RunStatus::kCompleted;
  Winner winner = Winner::kNone;
  SimTrace trace;
  GameState final_state;
  std::optional<GameState> state_at_phase1_end;
  double nu = 0.0;
};

RunResult run(const GameState& initial, SpeedRatio nu, GameMode mode, const SimConfig& config);

// Payoff from the last trace row: min distance of the attackers to the target.
double payoff_from_row(const TraceRow& row, const Point2& target);

}  // namespace tdg
