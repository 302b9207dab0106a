#ifndef EULER1D_CSV_HPP
#define EULER1D_CSV_HPP

#include <string>

namespace euler1d::csv {

/// Shortest decimal representation that round-trips to the same double
/// (std::to_chars); "nan"/"inf"/"-inf" for non-finite values. Reruns of a
/// deterministic simulation therefore serialize byte-identically.
std::string format_double(double x);

}  // namespace euler1d::csv

#endif
