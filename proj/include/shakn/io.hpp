#ifndef SHAKN_IO_HPP
#define SHAKN_IO_HPP

#include <string>

namespace shakn {

/// Formats a double with 17 significant digits (%.17g): lossless round-trip.
std::string format_g17(double v);

} // namespace shakn

#endif
