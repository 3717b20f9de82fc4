#pragma once

#include <optional>
#include <string_view>

namespace mwfapf {

enum class Mode { APF, WFM };

/// Which side the followed wall is kept on.
enum class FollowDirection { Left, Right };

inline FollowDirection opposite(FollowDirection d) {
  return d == FollowDirection::Left ? FollowDirection::Right : FollowDirection::Left;
}

inline std::string_view to_string(Mode m) { return m == Mode::APF ? "APF" : "WFM"; }

inline std::string_view to_string(FollowDirection d) {
  return d == FollowDirection::Left ? "left" : "right";
}

}  // namespace mwfapf
