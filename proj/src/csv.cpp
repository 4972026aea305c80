#include "thzmol/csv.hpp"

#include <charconv>

namespace thzmol {

std::string format_double(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 8);
    return std::string(buf, ptr);
}

}  // namespace thzmol
