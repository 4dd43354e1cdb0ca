#ifndef PENSTAT_FORMAT_HPP
#define PENSTAT_FORMAT_HPP

#include <string>

namespace penstat {

// Shortest decimal form that round-trips to the same double, so emitted
// reports diff cleanly across platforms. Non-finite values print as
// "inf", "-inf", "nan".
std::string format_double(double value);

// "0.2"-style fixed two-decimal rounding with trailing zeros trimmed.
std::string format_rho_table1(double value);

// "6.80E-05"-style scientific notation with two digits after the point.
std::string format_p_table1(double value);

}  // namespace penstat

#endif  // PENSTAT_FORMAT_HPP
