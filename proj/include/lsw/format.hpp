#pragma once

#include <string>

namespace lsw {

/// Shortest decimal representation that round-trips to the same double.
std::string format_number(double value);

}  // namespace lsw
