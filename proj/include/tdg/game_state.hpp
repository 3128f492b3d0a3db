#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "tdg/geom.hpp"

namespace tdg {

inline constexpr std::size_t kTeamSize = 2;

struct AttackerState {
  Point2 position;
  bool active = true;
  std::optional<double> final_time;
};

struct DefenderState {
  Point2 position;
  bool active = true;
};

// Full 2v2 configuration plus liveness. Inactive agents keep their last
// position; attackers additionally record when they left play.
struct GameState {
  Point2 target;
  std::array<AttackerState, kTeamSize> attackers;
  std::array<DefenderState, kTeamSize> defenders;
  double clock = 0.0;

  static GameState initial(const Point2& target, const std::array<Point2, kTeamSize>& attackers,
                           const std::array<Point2, kTeamSize>& defenders) {
    GameState s;
    s.target = target;
    for (std::size_t i = 0; i < kTeamSize; ++i) {
      s.attackers[i].position = attackers[i];
      s.defenders[i].position = defenders[i];
    }
    return s;
  }

  std::size_t active_attackers() const {
    std::size_t n = 0;
    for (const auto& a : attackers) n += a.active ? 1 : 0;
    return n;
  }
  std::size_t active_defenders() const {
    std::size_t n = 0;
    for (const auto& d : defenders) n += d.active ? 1 : 0;
    return n;
  }
};

}  // namespace tdg
