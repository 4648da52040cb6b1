#ifndef UE_SRC_GAMES_PARAMS_H_
#define UE_SRC_GAMES_PARAMS_H_

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include "ue/errors.h"
#include "ue/game.h"

namespace ue::games::internal {

inline void check_known(const GameParams& params, std::string_view game,
                        std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (auto k : known) ok = ok || (k == key);
    if (!ok) {
      throw InvalidArgument(std::string(game) + ": unknown parameter '" + key +
                            "'");
    }
  }
}

inline std::int64_t get_int(const GameParams& params, const std::string& key,
                            std::int64_t fallback, std::int64_t lo,
                            std::int64_t hi) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::int64_t value = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("parameter '" + key + "' is not an integer: '" + s +
                          "'");
  }
  if (value < lo || value > hi) {
    throw InvalidArgument("parameter '" + key + "'=" + s + " out of range [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return value;
}

}  // namespace ue::games::internal

#endif  // UE_SRC_GAMES_PARAMS_H_
