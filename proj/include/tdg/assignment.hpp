#pragma once

// Defender-side bottleneck assignment and the nominal strategies derived
// from it.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "tdg/engagement.hpp"
#include "tdg/game_state.hpp"

namespace tdg {

// Square matrix of pair costs; rows are attackers, columns defenders.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n) : n_(n), phi_(n * n, 0.0) {}
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return phi_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return phi_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> phi_;
};

// psi entry for an attacker left without a defender.
inline constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

struct Assignment {
  // psi[i] is the defender assigned to attacker i (0-based), or kUnassigned.
  std::vector<std::size_t> psi;
  double value = 0.0;
  std::size_t critical_attacker = 0;
  std::size_t critical_defender = 0;

  // Attacker assigned to defender j, if any.
  std::optional<std::size_t> attacker_of(std::size_t defender) const;
};

inline constexpr std::size_t kMaxLbapSize = 8;

CostMatrix build_cost_matrix(const GameState& state, SpeedRatio nu);

// Exhaustive bottleneck assignment: maximizes min_i phi(i, psi[i]).
// Ties go to the lexicographically smallest psi; the critical attacker is the
// lowest index attaining the bottleneck.
Assignment solve_lbap(const CostMatrix& c);

// True when neither assigned pair's circle contains the target at this state.
bool defender_win_condition(const GameState& state, const Assignment& assign, SpeedRatio nu);

struct TeamControls {
  std::array<Point2, kTeamSize> attackers{};
  std::array<Point2, kTeamSize> defenders{};
};

// Each active assigned pair heads for its own capture point. Agents without
// an active partner, or already sitting on x_B, receive zero control.
TeamControls nominal_controls(const GameState& state, const Assignment& assign, SpeedRatio nu);

}  // namespace tdg
