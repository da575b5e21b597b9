#pragma once

#include <string>
#include <vector>

namespace ballmap {

const std::vector<std::string>& hexagon_h_coefficients();

}  // namespace ballmap
