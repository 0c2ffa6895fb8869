#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sgp4x/batch.hpp"
#include "sgp4x/dual.hpp"
#include "sgp4x/sgp4.hpp"

namespace sgp4x {

inline constexpr std::size_t kElementCount = 7;
using Dual7 = Dual<double, kElementCount>;

/// Column labels, in column order.
inline constexpr std::array<const char*, kElementCount> kElementNames{"no_kozai", "ecco",  "inclo", "nodeo",
                                                                      "argpo",    "mo",    "bstar"};
/// Row labels, in row order.
inline constexpr std::array<const char*, 6> kStateNames{"rx", "ry", "rz", "vx", "vy", "vz"};

/// d(r, v) / d(elements). Rows in km or km/s, columns per element unit
/// (rad/min for no_kozai, rad for angles, 1/earth-radii for bstar).
struct StateJacobian {
  std::array<std::array<double, kElementCount>, 6> d{};
  StateVector<double> state;
  ErrorCode error_code = ErrorCode::ok;
  bool valid = false;
  std::vector<std::string> warnings;
};

inline std::array<double, kElementCount> element_values(const MeanElements& e) {
  return {e.no_kozai, e.ecco, e.inclo, e.nodeo, e.argpo, e.mo, e.bstar};
}

namespace detail {

inline ElementSet<double> element_set_from(const std::array<double, kElementCount>& x) {
  return {x[0], x[1], x[2], x[3], x[4], x[5], x[6]};
}

inline ElementSet<Dual7> seeded_elements(const MeanElements& e) {
  const auto x = element_values(e);
  return {Dual7::variable(x[0], 0), Dual7::variable(x[1], 1), Dual7::variable(x[2], 2), Dual7::variable(x[3], 3),
          Dual7::variable(x[4], 4), Dual7::variable(x[5], 5), Dual7::variable(x[6], 6)};
}

inline StateJacobian jacobian_from_init(const SatInit<Dual7>& init, double tsince) {
  StateJacobian jac;
  if (init.error_code_at_init != ErrorCode::ok) {
    jac.error_code = init.error_code_at_init;
    return jac;
  }
  const StateVector<Dual7> sv = sgp4_propagate(init, Dual7(tsince));
  for (std::size_t a = 0; a < 3; ++a) {
    jac.state.r[a] = sv.r[a].value();
    jac.state.v[a] = sv.v[a].value();
    jac.d[a] = sv.r[a].tangent();
    jac.d[3 + a] = sv.v[a].tangent();
  }
  jac.state.error_code = sv.error_code;
  jac.error_code = sv.error_code;
  jac.valid = sv.error_code == ErrorCode::ok;
  return jac;
}

}  // namespace detail

/// Forward-mode Jacobian of the state at `tsince` minutes with respect to the
/// seven mean elements, differentiated through initialization and
/// propagation. Not valid when either stage reports an error.
inline StateJacobian jacobian_state_wrt_elements(const MeanElements& elems, const GravityModel& grav, double tsince) {
  return detail::jacobian_from_init(sgp4_init(detail::seeded_elements(elems), grav), tsince);
}

/// Jacobians for every (satellite, time) pair, row-major. Each entry is the
/// same computation as the scalar call.
inline std::vector<StateJacobian> jacobian_batch(std::span<const MeanElements> elems, const GravityModel& grav,
                                                 std::span<const double> times, WorkerPool& pool) {
  std::vector<SatInit<Dual7>> inits;
  inits.reserve(elems.size());
  for (const auto& e : elems) inits.push_back(sgp4_init(detail::seeded_elements(e), grav));
  std::vector<StateJacobian> out(elems.size() * times.size());
  const auto ranges = partition_work(elems.size(), times.size(), pool.size());
  pool.run(ranges.size(), [&](std::size_t w) {
    for (std::size_t k = ranges[w].begin; k < ranges[w].end; ++k)
      out[k] = detail::jacobian_from_init(inits[k / times.size()], times[k % times.size()]);
  });
  return out;
}

/// Absolute step floors per element. The state responds to bstar only through
/// drag, so its derivative is small and a purely relative step would be lost
/// in rounding of a ~7000 km position; the other floors only matter for
/// elements that are zero or nearly so.
inline constexpr std::array<double, kElementCount> kDefaultStepFloors{1e-9, 1e-7, 1e-9, 1e-9, 1e-9, 1e-9, 1e-6};

/// Central-difference Jacobian. The step for element k is
/// max(rel_step * |x_k|, floors[k]); a warning is recorded for every element
/// whose magnitude is below its floor, where the step is no longer relative.
inline StateJacobian finite_difference_jacobian(const MeanElements& elems, const GravityModel& grav, double tsince,
                                                double rel_step = 1e-6,
                                                const std::array<double, kElementCount>& floors = kDefaultStepFloors) {
  StateJacobian jac;
  const auto x0 = element_values(elems);
  const auto init = sgp4_init(detail::element_set_from(x0), grav);
  const auto center = sgp4_propagate(init, tsince);
  jac.state = center;
  jac.error_code = init.error_code_at_init != ErrorCode::ok ? init.error_code_at_init : center.error_code;
  jac.valid = jac.error_code == ErrorCode::ok;

  for (std::size_t k = 0; k < kElementCount; ++k) {
    if (std::abs(x0[k]) < floors[k])
      jac.warnings.push_back(std::string("step underflow: |") + kElementNames[k] + "| below absolute floor");
    const double h = std::max(rel_step * std::abs(x0[k]), floors[k]);
    auto xp = x0;
    auto xm = x0;
    xp[k] += h;
    xm[k] -= h;
    const double span = xp[k] - xm[k];  // the step actually representable
    const auto sp = sgp4_propagate(sgp4_init(detail::element_set_from(xp), grav), tsince);
    const auto sm = sgp4_propagate(sgp4_init(detail::element_set_from(xm), grav), tsince);
    for (std::size_t a = 0; a < 3; ++a) {
      jac.d[a][k] = (sp.r[a] - sm.r[a]) / span;
      jac.d[3 + a][k] = (sp.v[a] - sm.v[a]) / span;
    }
  }
  return jac;
}

/// Largest entrywise discrepancy between two Jacobians, each entry scaled by
/// max(|reference entry|, 1e-3 * norm of that reference column within the
/// position or velocity block). Entries that are zero up to rounding would
/// otherwise dominate a purely relative measure.
inline double max_relative_error(const StateJacobian& test, const StateJacobian& reference) {
  double worst = 0.0;
  for (std::size_t k = 0; k < kElementCount; ++k) {
    for (std::size_t block = 0; block < 2; ++block) {
      double norm = 0.0;
      for (std::size_t a = 0; a < 3; ++a) norm += reference.d[3 * block + a][k] * reference.d[3 * block + a][k];
      norm = std::sqrt(norm);
      for (std::size_t a = 0; a < 3; ++a) {
        const std::size_t row = 3 * block + a;
        const double scale = std::max(std::abs(reference.d[row][k]), 1e-3 * norm);
        const double diff = std::abs(test.d[row][k] - reference.d[row][k]);
        if (scale == 0.0) {
          if (diff != 0.0) worst = std::max(worst, diff);
          continue;
        }
        worst = std::max(worst, diff / scale);
      }
    }
  }
  return worst;
}

}  // namespace sgp4x
