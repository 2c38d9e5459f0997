#pragma once

#include <string_view>

namespace sudoku_potts {

inline constexpr std::string_view kVersion = "0.1.0";

} // namespace sudoku_potts
