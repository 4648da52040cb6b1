#ifndef UE_FORMAT_H_
#define UE_FORMAT_H_

#include <charconv>
#include <string>
#include <string_view>

#include "ue/errors.h"

namespace ue {

// Shortest decimal that parses back to exactly `value`.
inline std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ue

#endif  // UE_FORMAT_H_
