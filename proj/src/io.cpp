#include "shakn/io.hpp"

#include <cstdio>

namespace shakn {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace shakn
