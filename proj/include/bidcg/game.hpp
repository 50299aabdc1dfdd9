#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>

namespace bidcg {

/// Handle of an interned game form. Ids are dense, assigned in interning
/// order, so every option of a form has a smaller id than the form itself.
struct GameId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(GameId, GameId) = default;
};

enum class Player : std::uint8_t { Left, Right };

constexpr Player opponent(Player p) {
  return p == Player::Left ? Player::Right : Player::Left;
}

constexpr std::string_view to_string(Player p) {
  return p == Player::Left ? "Left" : "Right";
}

}  // namespace bidcg

template <>
struct std::hash<bidcg::GameId> {
  std::size_t operator()(bidcg::GameId g) const noexcept {
    return std::hash<std::uint32_t>{}(g.index);
  }
};
