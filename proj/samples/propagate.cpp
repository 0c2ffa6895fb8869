// Parses one element set, propagates it over a day in both precisions, and
// prints the state and its sensitivity to B*.

#include <cmath>
#include <cstdio>

#include "sgp4x/sgp4x.hpp"

int main() {
  const char* line1 = "1 88888U          80275.98708465  .00073094  13844-3  66816-4 0    87";
  const char* line2 = "2 88888  72.8435 115.9689 0086731  52.6988 110.5714 16.05824518  1058";

  const sgp4x::TwoLineElement tle = sgp4x::parse_tle(line1, line2);
  const sgp4x::MeanElements elems = sgp4x::tle_to_elements(tle);
  const auto init64 = sgp4x::sgp4_init<double>(elems, sgp4x::wgs72());
  const auto init32 = sgp4x::sgp4_init<float>(elems, sgp4x::wgs72());

  std::printf("%8s %14s %14s %14s %10s\n", "tsince", "rx_km", "ry_km", "rz_km", "fp32_dr_m");
  for (double t = 0.0; t <= 1440.0; t += 360.0) {
    const auto s = sgp4x::sgp4_propagate(init64, t);
    const auto f = sgp4x::sgp4_propagate(init32, static_cast<float>(t));
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double d = static_cast<double>(f.r[a]) - s.r[a];
      d2 += d * d;
    }
    std::printf("%8.1f %14.6f %14.6f %14.6f %10.3f\n", t, s.r[0], s.r[1], s.r[2], std::sqrt(d2) * 1e3);
  }

  const auto jac = sgp4x::jacobian_state_wrt_elements(elems, sgp4x::wgs72(), 1440.0);
  std::printf("d r / d bstar at one day: %.6g %.6g %.6g km per 1/ER\n", jac.d[0][6], jac.d[1][6], jac.d[2][6]);
  return 0;
}
