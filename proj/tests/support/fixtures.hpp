#pragma once

#include <cmath>
#include <random>

#include "tdg/scenario.hpp"

namespace tdg::testing {

inline constexpr double kTwoThirds = 2.0 / 3.0;

// Initial conditions of the worked examples.
inline Scenario example_scenario(GameMode mode = GameMode::kNominal) {
  Scenario s;
  s.target = {0.0, 0.0};
  s.attacker_positions = {Point2{-0.9, 0.7}, Point2{-1.2, 0.4}};
  s.defender_positions = {Point2{-1.5, 0.7}, Point2{-1.7, 0.3}};
  s.nu = kTwoThirds;
  s.mode = mode;
  return s;
}

inline GameState example_state() { return example_scenario().initial_state(); }

inline Point2 random_point(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng)};
}

inline Point2 polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

// A 2v2 layout shaped like the worked example: the critical attacker ahead of
// its defender, the support attacker near the defender's line of approach.
// Not guaranteed feasible; callers filter.
inline Scenario random_layout(std::mt19937_64& rng, GameMode mode) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario s;
  s.target = {0.0, 0.0};
  s.nu = 0.55 + 0.2 * u(rng);
  const double th = 2.0 * M_PI * u(rng);
  const Point2 a1 = polar(0.8 + 0.5 * u(rng), th);
  const Point2 d1 = a1 + polar(0.4 + 0.4 * u(rng), th + (u(rng) - 0.5) * 1.6);
  const Point2 mid = d1 + (0.2 + 0.5 * u(rng)) * (a1 - d1);
  const Point2 a2 = mid + polar(0.1 + 0.3 * u(rng), 2.0 * M_PI * u(rng));
  const Point2 d2 = a2 + polar(0.3 + 0.5 * u(rng), th + (u(rng) - 0.5) * 2.0);
  s.attacker_positions = {a1, a2};
  s.defender_positions = {d1, d2};
  s.mode = mode;
  return s;
}

}  // namespace tdg::testing
