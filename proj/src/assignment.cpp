#include "tdg/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tdg/errors.hpp"

namespace tdg {

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : CostMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error("cost matrix must be square");
    std::size_t j = 0;
    for (double v : row) (*this)(i, j++) = v;
    ++i;
  }
}

std::optional<std::size_t> Assignment::attacker_of(std::size_t defender) const {
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (psi[i] == defender) return i;
  return std::nullopt;
}

CostMatrix build_cost_matrix(const GameState& state, SpeedRatio nu) {
  CostMatrix c(kTeamSize);
  for (std::size_t i = 0; i < kTeamSize; ++i)
    for (std::size_t j = 0; j < kTeamSize; ++j)
      c(i, j) = pair_cost(state.attackers[i].position, state.defenders[j].position, state.target,
                          nu);
  return c;
}

Assignment solve_lbap(const CostMatrix& c) {
  const std::size_t n = c.size();
  if (n == 0 || n > kMaxLbapSize)
    throw Error("bottleneck assignment supports 1.." + std::to_string(kMaxLbapSize) + " agents");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Assignment best;
  best.value = -std::numeric_limits<double>::infinity();
  // next_permutation walks lexicographic order, so keeping only strict
  // improvements yields the lexicographically smallest maximizer.
  do {
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) v = std::min(v, c(i, perm[i]));
    if (v > best.value) {
      best.value = v;
      best.psi = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (std::size_t i = 0; i < n; ++i) {
    if (c(i, best.psi[i]) == best.value) {
      best.critical_attacker = i;
      best.critical_defender = best.psi[i];
      break;
    }
  }
  return best;
}

bool defender_win_condition(const GameState& state, const Assignment& assign, SpeedRatio nu) {
  for (std::size_t i = 0; i < assign.psi.size(); ++i) {
    if (assign.psi[i] == kUnassigned) continue;
    const auto ac =
        apollonius(state.attackers[i].position, state.defenders[assign.psi[i]].position, nu);
    if (ac.contains(state.target)) return false;
  }
  return true;
}

TeamControls nominal_controls(const GameState& state, const Assignment& assign, SpeedRatio nu) {
  TeamControls out;
  for (std::size_t i = 0; i < assign.psi.size(); ++i) {
    const std::size_t j = assign.psi[i];
    if (j == kUnassigned) continue;
    const auto& att = state.attackers[i];
    const auto& def = state.defenders[j];
    if (!att.active || !def.active) continue;
    const auto xb = capture_point(apollonius(att.position, def.position, nu), state.target);
    out.attackers[i] = try_unit_vector(att.position, xb.point).value_or(Point2{});
    out.defenders[j] = try_unit_vector(def.position, xb.point).value_or(Point2{});
  }
  return out;
}

}  // namespace tdg
