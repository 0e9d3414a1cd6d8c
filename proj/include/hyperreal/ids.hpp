#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace hyperreal {

struct ObjectId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(ObjectId, ObjectId) = default;
};

}  // namespace hyperreal

template <>
struct std::hash<hyperreal::ObjectId> {
  std::size_t operator()(hyperreal::ObjectId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
