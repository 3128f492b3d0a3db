#include "tdg/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tdg/errors.hpp"

namespace tdg {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Point2 point_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(field, "expected [x, y]");
  const Point2 p{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(p)) throw ValidationError(field, "non-finite coordinate");
  return p;
}

json point_to_json(const Point2& p) { return json::array({p.x, p.y}); }

const json& require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(key, "missing field");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

// Accepts a plain number or a "p/q" fraction string.
double parse_nu(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } catch (const std::exception&) {
    }
  }
  throw ParseError("nu", "expected a number or a fraction string");
}

}  // namespace

SimConfig default_sim_config() {
  SimConfig c;
  if (const char* env = std::getenv("TDG_SEED_TOL")) {
    char* end = nullptr;
    const double eps = std::strtod(env, &end);
    if (end != env && eps > 0.0 && std::isfinite(eps)) {
      c.capture_eps = eps;
      c.dt = std::min(c.dt, eps / 2.0);
    }
  }
  return c;
}

void Scenario::validate() const {
  if (!(nu > 0.0 && nu < 1.0)) throw ValidationError("nu", "speed ratio must lie in (0, 1)");
  std::array<Point2, 2 * kTeamSize> agents{attacker_positions[0], attacker_positions[1],
                                           defender_positions[0], defender_positions[1]};
  for (const auto& p : agents)
    if (!is_finite(p)) throw ValidationError("positions", "non-finite coordinate");
  if (!is_finite(target)) throw ValidationError("target", "non-finite coordinate");
  for (std::size_t a = 0; a < agents.size(); ++a)
    for (std::size_t b = a + 1; b < agents.size(); ++b)
      if (dist(agents[a], agents[b]) <= kDegenerateTol)
        throw ValidationError("positions", "agents must start at distinct positions");
  sim.validate();
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("<document>", "expected a JSON object");
  Scenario s;
  s.target = point_from_json(require(j, "target"), "target");
  const auto& atts = require(j, "attacker_positions");
  const auto& defs = require(j, "defender_positions");
  if (!atts.is_array() || atts.size() != kTeamSize)
    throw ParseError("attacker_positions", "expected two points");
  if (!defs.is_array() || defs.size() != kTeamSize)
    throw ParseError("defender_positions", "expected two points");
  for (std::size_t k = 0; k < kTeamSize; ++k) {
    s.attacker_positions[k] = point_from_json(atts[k], "attacker_positions");
    s.defender_positions[k] = point_from_json(defs[k], "defender_positions");
  }
  s.nu = parse_nu(require(j, "nu"));
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ParseError("mode", "expected a string");
    s.mode = parse_game_mode(j["mode"].get<std::string>());
  }
  s.sim = default_sim_config();
  if (j.contains("sim")) {
    const auto& sim = j["sim"];
    if (!sim.is_object()) throw ParseError("sim", "expected an object");
    const bool has_dt = sim.contains("dt");
    if (has_dt) s.sim.dt = number(sim["dt"], "dt");
    if (sim.contains("capture_eps")) {
      s.sim.capture_eps = number(sim["capture_eps"], "capture_eps");
      if (!has_dt) s.sim.dt = std::min(s.sim.dt, s.sim.capture_eps / 2.0);
    }
    if (sim.contains("t_max")) s.sim.t_max = number(sim["t_max"], "t_max");
    if (sim.contains("record_every")) {
      const double re = number(sim["record_every"], "record_every");
      if (re < 1.0 || re != std::floor(re))
        throw ValidationError("record_every", "must be a positive integer");
      s.sim.record_every = static_cast<std::size_t>(re);
    }
    if (sim.contains("theorem2_grid"))
      s.sim.theorem2_grid = static_cast<int>(number(sim["theorem2_grid"], "theorem2_grid"));
  }
  s.validate();
  return s;
}

json scenario_to_json(const Scenario& s) {
  return json{
      {"target", point_to_json(s.target)},
      {"attacker_positions",
       json::array({point_to_json(s.attacker_positions[0]), point_to_json(s.attacker_positions[1])})},
      {"defender_positions",
       json::array({point_to_json(s.defender_positions[0]), point_to_json(s.defender_positions[1])})},
      {"nu", s.nu},
      {"mode", to_string(s.mode)},
      {"sim",
       {{"dt", s.sim.dt},
        {"capture_eps", s.sim.capture_eps},
        {"t_max", s.sim.t_max},
        {"record_every", s.sim.record_every},
        {"theorem2_grid", s.sim.theorem2_grid}}},
  };
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<document>", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  // nlohmann emits doubles with round-trip precision.
  out << scenario_to_json(s).dump(2) << '\n';
}

RunResult run_scenario(const Scenario& s) {
  s.validate();
  return run(s.initial_state(), SpeedRatio(s.nu), s.mode, s.sim);
}

void write_trace_csv(const RunResult& r, std::ostream& out) {
  out << "t,xA1,yA1,xA2,yA2,xD1,yD1,xD2,yD2,xB11x,xB11y,phase\n";
  for (const auto& row : r.trace.rows) {
    out << fmt(row.t);
    for (const auto& p : row.attackers) out << ',' << fmt(p.x) << ',' << fmt(p.y);
    for (const auto& p : row.defenders) out << ',' << fmt(p.x) << ',' << fmt(p.y);
    const Point2 xb = row.xb_critical.value_or(Point2{NAN, NAN});
    out << ',' << fmt(xb.x) << ',' << fmt(xb.y) << ',' << row.phase << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::vector<TraceRow> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(cell == "nan" ? NAN : std::stod(cell));
    if (v.size() != 12) throw ParseError("trace.csv", "expected 12 columns");
    TraceRow row;
    row.t = v[0];
    row.attackers = {Point2{v[1], v[2]}, Point2{v[3], v[4]}};
    row.defenders = {Point2{v[5], v[6]}, Point2{v[7], v[8]}};
    if (!std::isnan(v[9])) row.xb_critical = Point2{v[9], v[10]};
    row.phase = static_cast<int>(v[11]);
    rows.push_back(row);
  }
  return rows;
}

json summary_json(const RunResult& r) {
  const auto& as = r.assessment;
  auto opt_time = [](const std::optional<double>& t) { return t ? json(*t) : json(nullptr); };
  auto attacker_clock = [&](const std::optional<double>& t) {
    return t ? json(*t * r.nu) : json(nullptr);
  };

  json phi = json::array();
  for (std::size_t i = 0; i < as.phi.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < as.phi.size(); ++j) row.push_back(as.phi(i, j));
    phi.push_back(row);
  }
  json psi = json::array();
  for (auto j : as.assignment.psi) psi.push_back(j + 1);
  json candidates = json::array();
  for (const auto& p : as.one_dev_candidates) candidates.push_back(point_to_json(p));
  json events = json::array();
  for (const auto& e : r.trace.events)
    events.push_back({{"t", e.t},
                      {"kind", to_string(e.kind)},
                      {"attacker", e.attacker + 1},
                      {"defender", e.defender ? json(*e.defender + 1) : json(nullptr)}});

  json post_win = nullptr;
  if (r.state_at_phase1_end && r.state_at_phase1_end->active_attackers() <= 1 &&
      r.state_at_phase1_end->active_defenders() <= 1)
    post_win = check_win_condition_after_interception(*r.state_at_phase1_end, SpeedRatio(r.nu));

  return json{
      {"mode", to_string(r.mode)},
      {"status", r.status == RunStatus::kCompleted ? "completed" : "timeout"},
      {"winner", to_string(r.winner)},
      {"payoff", r.trace.payoff},
      {"nu", r.nu},
      {"t_f1", opt_time(r.trace.phase1_end)},
      {"t_f1_attacker_clock", attacker_clock(r.trace.phase1_end)},
      {"t_f", r.trace.t_final},
      {"t_f_attacker_clock", r.trace.t_final * r.nu},
      {"assignment",
       {{"psi", psi},
        {"value", as.assignment.value},
        {"critical_pair",
         json::array({as.assignment.critical_attacker + 1, as.assignment.critical_defender + 1})}}},
      {"phi", phi},
      {"feasibility",
       {{"nominal_condition", as.nominal_condition},
        {"theorem1", as.theorem1_feasible},
        {"theorem2", as.theorem2 ? json(as.theorem2->holds) : json(nullptr)},
        {"theorem2_grid", as.theorem2 ? json(as.theorem2->grid_n) : json(nullptr)},
        {"deviation_applied", r.deviation_applied},
        {"fallback_reason",
         r.fallback_reason.empty() ? json(nullptr) : json(r.fallback_reason)}}},
      {"one_dev_candidates", candidates},
      {"x_I", r.plan ? point_to_json(r.plan->point) : json(nullptr)},
      {"post_phase1_attacker_win", post_win},
      {"events", events},
  };
}

AgentId parse_agent_id(const std::string& s) {
  if (s == "A1") return AgentId::kA1;
  if (s == "A2") return AgentId::kA2;
  if (s == "D1") return AgentId::kD1;
  if (s == "D2") return AgentId::kD2;
  throw ValidationError("vary", "unknown agent '" + s + "'");
}

std::string to_string(AgentId id) {
  switch (id) {
    case AgentId::kA1: return "A1";
    case AgentId::kA2: return "A2";
    case AgentId::kD1: return "D1";
    case AgentId::kD2: return "D2";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (grid.nx < 2 || grid.ny < 2) throw ValidationError("grid", "nx and ny must be at least 2");
  if (!(grid.x_min < grid.x_max) || !(grid.y_min < grid.y_max))
    throw ValidationError("grid", "bounds must be ordered");
  if (modes.empty()) throw ValidationError("modes", "at least one mode required");
}

SweepSpec sweep_spec_from_json(const json& j, const std::string& base_dir) {
  SweepSpec spec;
  if (j.contains("base")) {
    spec.base = scenario_from_json(j["base"]);
  } else {
    const auto& path = require(j, "base_scenario");
    if (!path.is_string()) throw ParseError("base_scenario", "expected a path");
    std::filesystem::path p(path.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    spec.base = load_scenario(p.string());
  }
  const auto& vary = require(j, "vary");
  if (!vary.is_string()) throw ParseError("vary", "expected an agent id");
  spec.varied = parse_agent_id(vary.get<std::string>());
  const auto& g = require(j, "grid");
  spec.grid.x_min = number(require(g, "x_min"), "x_min");
  spec.grid.x_max = number(require(g, "x_max"), "x_max");
  spec.grid.y_min = number(require(g, "y_min"), "y_min");
  spec.grid.y_max = number(require(g, "y_max"), "y_max");
  const double nx = number(require(g, "nx"), "nx");
  const double ny = number(require(g, "ny"), "ny");
  if (nx < 0 || ny < 0) throw ValidationError("grid", "nx and ny must be at least 2");
  spec.grid.nx = static_cast<std::size_t>(nx);
  spec.grid.ny = static_cast<std::size_t>(ny);
  if (j.contains("modes")) {
    spec.modes.clear();
    for (const auto& m : j["modes"]) {
      if (!m.is_string()) throw ParseError("modes", "expected mode names");
      spec.modes.push_back(parse_game_mode(m.get<std::string>()));
    }
  }
  if (j.contains("threads")) spec.threads = static_cast<std::size_t>(number(j["threads"], "threads"));
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<document>", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  return sweep_spec_from_json(j, std::filesystem::path(path).parent_path().string());
}

namespace {

SweepRow run_cell(const SweepSpec& spec, std::size_t ix, std::size_t iy, GameMode mode) {
  const auto& g = spec.grid;
  SweepRow row;
  row.ix = ix;
  row.iy = iy;
  row.mode = mode;
  row.position = {g.x_min + (g.x_max - g.x_min) * ix / static_cast<double>(g.nx - 1),
                  g.y_min + (g.y_max - g.y_min) * iy / static_cast<double>(g.ny - 1)};
  Scenario s = spec.base;
  s.mode = mode;
  // Sweeps keep only the first and last rows.
  s.sim.record_every = static_cast<std::size_t>(1) << 40;
  switch (spec.varied) {
    case AgentId::kA1: s.attacker_positions[0] = row.position; break;
    case AgentId::kA2: s.attacker_positions[1] = row.position; break;
    case AgentId::kD1: s.defender_positions[0] = row.position; break;
    case AgentId::kD2: s.defender_positions[1] = row.position; break;
  }
  try {
    const auto r = run_scenario(s);
    row.winner = to_string(r.winner);
    row.payoff = r.trace.payoff;
    row.t_f1 = r.trace.phase1_end;
    row.nominal_condition = r.assessment.nominal_condition;
    row.theorem1 = r.assessment.theorem1_feasible;
    if (r.assessment.theorem2) row.theorem2 = r.assessment.theorem2->holds;
    row.deviation_applied = r.deviation_applied;
    row.status = r.status == RunStatus::kCompleted ? "completed" : "timeout";
  } catch (const std::exception& e) {
    row.winner = "none";
    row.payoff = NAN;
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t n_modes = spec.modes.size();
  const std::size_t total = spec.grid.nx * spec.grid.ny * n_modes;
  std::vector<SweepRow> rows(total);

  std::size_t threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(total, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t m = k % n_modes;
      const std::size_t cell = k / n_modes;
      rows[k] = run_cell(spec, cell % spec.grid.nx, cell / spec.grid.nx, spec.modes[m]);
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  auto flag = [](bool b) { return b ? "1" : "0"; };
  out << "ix,iy,x,y,mode,winner,payoff,t_f1,nominal_condition,theorem1,theorem2,"
         "deviation_applied,status,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << r.ix << ',' << r.iy << ',' << fmt(r.position.x) << ',' << fmt(r.position.y) << ','
        << to_string(r.mode) << ',' << r.winner << ',' << fmt(r.payoff) << ','
        << (r.t_f1 ? fmt(*r.t_f1) : std::string()) << ',' << flag(r.nominal_condition) << ','
        << flag(r.theorem1) << ',' << (r.theorem2 ? flag(*r.theorem2) : "") << ','
        << flag(r.deviation_applied) << ',' << r.status << ',' << err << '\n';
  }
}

}  // namespace tdg
