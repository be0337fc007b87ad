#pragma once

#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "thompson/pl_map.hpp"

namespace thompson::test {

inline Rational q(std::string_view text) { return Rational::parse(text); }

/// Map from "x y" breakpoint strings.
inline PLMap map_of(const GroupContext& ctx, std::initializer_list<std::pair<std::string_view, std::string_view>> bp) {
  std::vector<Breakpoint> out;
  for (const auto& [x, y] : bp) out.push_back({q(x), q(y)});
  return PLMap(ctx, std::move(out));
}

inline const GroupContext& F() {
  static const GroupContext ctx = GroupContext::thompson();
  return ctx;
}

}  // namespace thompson::test
