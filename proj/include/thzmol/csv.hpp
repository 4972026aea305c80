#pragma once

#include <string>

namespace thzmol {

/// Scientific notation, 9 significant digits, locale independent ("1.23456789e+02").
std::string format_double(double value);

}  // namespace thzmol
