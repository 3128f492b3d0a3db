#pragma once

// Scenario files, run artifacts (trace.csv / summary.json) and parameter
// sweeps over one agent's initial position.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tdg/sim.hpp"

#include "json.hpp"

namespace tdg {

struct Scenario {
  Point2 target;
  std::array<Point2, kTeamSize> attacker_positions{};
  std::array<Point2, kTeamSize> defender_positions{};
  double nu = 0.5;
  GameMode mode = GameMode::kNominal;
  SimConfig sim;

  GameState initial_state() const {
    return GameState::initial(target, attacker_positions, defender_positions);
  }
  // Throws ValidationError("nu"), ("positions"), or a SimConfig field.
  void validate() const;
};

// Defaults for omitted sim fields. TDG_SEED_TOL, when set to a positive
// number, replaces the default capture radius (dt shrinks to match).
SimConfig default_sim_config();

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario parse_scenario(const std::string& text);
// Throws ParseError on malformed input and ValidationError on bad values.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

RunResult run_scenario(const Scenario& s);

// Column contract: t,xA1,yA1,xA2,yA2,xD1,yD1,xD2,yD2,xB11x,xB11y,phase
void write_trace_csv(const RunResult& r, std::ostream& out);
nlohmann::json summary_json(const RunResult& r);

// Reads the contract above back; used to cross-check summaries.
std::vector<TraceRow> read_trace_csv(std::istream& in);

enum class AgentId { kA1, kA2, kD1, kD2 };
AgentId parse_agent_id(const std::string& s);
std::string to_string(AgentId id);

struct SweepGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  std::size_t nx = 2;
  std::size_t ny = 2;
};

struct SweepSpec {
  Scenario base;
  AgentId varied = AgentId::kA2;
  SweepGrid grid;
  std::vector<GameMode> modes{GameMode::kNominal};
  std::size_t threads = 0;  // 0: hardware concurrency

  void validate() const;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
SweepSpec load_sweep_spec(const std::string& path);

struct SweepRow {
  std::size_t ix = 0;
  std::size_t iy = 0;
  Point2 position;
  GameMode mode = GameMode::kNominal;
  std::string winner;
  double payoff = 0.0;
  std::optional<double> t_f1;
  bool nominal_condition = false;
  bool theorem1 = false;
  std::optional<bool> theorem2;
  bool deviation_applied = false;
  std::string status;
  std::string error;
};

// Rows in grid order (y outer, x inner), modes innermost.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace tdg
