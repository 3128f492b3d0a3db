#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tdg/deviation.hpp"
#include "tdg/errors.hpp"
#include "tdg/scenario.hpp"

namespace py = pybind11;

namespace {

tdg::Point2 to_point(const std::pair<double, double>& p) { return {p.first, p.second}; }
std::pair<double, double> from_point(const tdg::Point2& p) { return {p.x, p.y}; }

tdg::GameState make_state(const std::pair<double, double>& target,
                          const std::array<std::pair<double, double>, 2>& attackers,
                          const std::array<std::pair<double, double>, 2>& defenders) {
  return tdg::GameState::initial(to_point(target), {to_point(attackers[0]), to_point(attackers[1])},
                                 {to_point(defenders[0]), to_point(defenders[1])});
}

}  // namespace

PYBIND11_MODULE(_tdg, m) {
  m.doc() = "2v2 target-defense game: Apollonius-circle strategies and attacker deviations";

  // Later registrations are tried first, so the base class goes first.
  py::register_exception<tdg::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<tdg::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<tdg::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "apollonius",
      [](std::pair<double, double> a, std::pair<double, double> d, double nu) {
        const auto ac = tdg::apollonius(to_point(a), to_point(d), tdg::SpeedRatio(nu));
        return py::make_tuple(from_point(ac.center), ac.radius);
      },
      py::arg("attacker"), py::arg("defender"), py::arg("nu"),
      "Center and radius of the Apollonius circle.");

  m.def(
      "capture_point",
      [](std::pair<double, double> a, std::pair<double, double> d, std::pair<double, double> t,
         double nu) {
        const auto xb = tdg::capture_point(
            tdg::apollonius(to_point(a), to_point(d), tdg::SpeedRatio(nu)), to_point(t));
        return py::make_tuple(from_point(xb.point), xb.distance_to_target, xb.target_inside);
      },
      py::arg("attacker"), py::arg("defender"), py::arg("target"), py::arg("nu"),
      "(x_B, phi, target_inside) for one attacker-defender pair.");

  m.def(
      "capture_point_velocity",
      [](std::pair<double, double> a, std::pair<double, double> d, std::pair<double, double> t,
         std::pair<double, double> va, std::pair<double, double> vd, double nu) {
        return from_point(tdg::capture_point_velocity(to_point(a), to_point(d), to_point(t),
                                                      to_point(va), to_point(vd),
                                                      tdg::SpeedRatio(nu)));
      },
      py::arg("attacker"), py::arg("defender"), py::arg("target"), py::arg("attacker_vel"),
      py::arg("defender_vel"), py::arg("nu"));

  m.def(
      "solve_lbap",
      [](const std::vector<std::vector<double>>& phi) {
        tdg::CostMatrix c(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) {
          if (phi[i].size() != phi.size()) throw tdg::Error("cost matrix must be square");
          for (std::size_t j = 0; j < phi.size(); ++j) c(i, j) = phi[i][j];
        }
        const auto a = tdg::solve_lbap(c);
        return py::make_tuple(a.psi, a.value, a.critical_attacker, a.critical_defender);
      },
      py::arg("phi"), "(psi, value, critical_attacker, critical_defender), 0-based.");

  m.def(
      "assess",
      [](std::pair<double, double> target, std::array<std::pair<double, double>, 2> attackers,
         std::array<std::pair<double, double>, 2> defenders, double nu, int grid) {
        const auto as =
            tdg::assess(make_state(target, attackers, defenders), tdg::SpeedRatio(nu), grid);
        py::dict out;
        std::vector<std::vector<double>> phi(2, std::vector<double>(2));
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) phi[i][j] = as.phi(i, j);
        out["phi"] = phi;
        out["psi"] = as.assignment.psi;
        out["nominal_condition"] = as.nominal_condition;
        std::vector<std::pair<double, double>> cands;
        for (const auto& p : as.one_dev_candidates) cands.push_back(from_point(p));
        out["one_dev_candidates"] = cands;
        out["theorem1"] = as.theorem1_feasible;
        out["theorem2"] = as.theorem2 ? py::object(py::bool_(as.theorem2->holds)) : py::none();
        return out;
      },
      py::arg("target"), py::arg("attackers"), py::arg("defenders"), py::arg("nu"),
      py::arg("grid") = 64, "Costs, assignment and deviation feasibility at t = 0.");

  m.def(
      "run_scenario_json",
      [](const std::string& scenario_json, const std::string& mode) {
        auto s = tdg::parse_scenario(scenario_json);
        if (!mode.empty()) s.mode = tdg::parse_game_mode(mode);
        tdg::RunResult r;
        {
          py::gil_scoped_release release;
          r = tdg::run_scenario(s);
        }
        std::ostringstream trace;
        tdg::write_trace_csv(r, trace);
        return py::make_tuple(tdg::summary_json(r).dump(), trace.str());
      },
      py::arg("scenario_json"), py::arg("mode") = "",
      "Run a scenario given as JSON text; returns (summary_json, trace_csv).");
}
