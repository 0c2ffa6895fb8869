#pragma once

// Absolute-time helpers. These are 64-bit only: a Julian date near 2.46e6
// cannot hold sub-second resolution in single precision, which is why the
// kernel itself only ever sees minutes since epoch.

#include <cmath>
#include <stdexcept>
#include <string>

#include "sgp4x/tle.hpp"

namespace sgp4x {

/// Julian date of (year, day-of-year, fraction of day). Day 1.0 is January 1
/// at 0h. Valid for 1901-2099, which covers every two-digit TLE year.
inline double epoch_to_julian(int year, int day_int, double day_frac) {
  if (year < 1901 || year > 2099) throw std::out_of_range("year " + std::to_string(year) + " outside 1901-2099");
  const int max_day = detail::is_leap(year) ? 366 : 365;
  if (day_int < 1 || day_int > max_day)
    throw std::out_of_range("day " + std::to_string(day_int) + " out of range for year " + std::to_string(year));
  if (!(day_frac >= 0.0 && day_frac < 1.0)) throw std::out_of_range("fraction of day outside [0, 1)");
  // January 1, 0h; no century correction is needed inside 1901-2099.
  const double jan1 = 367.0 * year - std::floor(7.0 * year * 0.25) + 30.0 + 1.0 + 1721013.5;
  return jan1 + (day_int - 1) + day_frac;
}

inline double epoch_to_julian(const MeanElements& e) {
  return epoch_to_julian(e.epoch_year, e.epoch_day_int, e.epoch_day_frac);
}

/// Minutes from the element epoch to an absolute Julian date.
inline double minutes_since_epoch(const MeanElements& e, double julian_date) {
  return (julian_date - epoch_to_julian(e)) * 1440.0;
}

}  // namespace sgp4x
