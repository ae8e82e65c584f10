#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace tga {

template <class Tag>
struct Id {
  std::uint32_t v = 0;
  constexpr auto operator<=>(const Id&) const = default;
};

using ClockId = Id<struct ClockTag>;
using LocId = Id<struct LocTag>;
using ActionId = Id<struct ActionTag>;

enum class Player : std::uint8_t { One = 1, Two = 2 };

constexpr Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }
constexpr int index_of(Player p) { return static_cast<int>(p); }

}  // namespace tga

template <class Tag>
struct std::hash<tga::Id<Tag>> {
  std::size_t operator()(tga::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.v); }
};
