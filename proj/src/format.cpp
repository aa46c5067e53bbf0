#include "lsw/format.hpp"

#include <array>
#include <charconv>

namespace lsw {

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

}  // namespace lsw
