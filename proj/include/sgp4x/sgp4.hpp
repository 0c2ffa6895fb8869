#pragma once

// Near-Earth SGP4: initialization constants and the time-dependent
// propagation, written once and instantiated for float, double and dual
// numbers.
//
// Every data-dependent branch of the classic formulation is evaluated on both
// sides and resolved with select(). Operands of a side that may be discarded
// are guarded (no division by zero, no square root of a negative number) so a
// discarded side never produces NaN. Runtime validity checks do not exit
// early; they set an error code and the computation runs to completion.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "sgp4x/gravity.hpp"
#include "sgp4x/scalar.hpp"
#include "sgp4x/tle.hpp"

namespace sgp4x {

/// Codes 1-6 follow the reference implementation; 7 marks orbits with a
/// period of 225 minutes or more, which need the deep-space theory.
enum class ErrorCode : std::int32_t {
  ok = 0,
  eccentricity_out_of_range = 1,
  mean_motion_nonpositive = 2,
  perturbed_eccentricity_out_of_range = 3,
  semilatus_negative = 4,
  suborbital = 6,
  deep_space_unsupported = 7,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::eccentricity_out_of_range: return "mean eccentricity out of range";
    case ErrorCode::mean_motion_nonpositive: return "mean motion not positive";
    case ErrorCode::perturbed_eccentricity_out_of_range: return "perturbed eccentricity out of range";
    case ErrorCode::semilatus_negative: return "semi-latus rectum negative";
    case ErrorCode::suborbital: return "decayed below earth radius";
    case ErrorCode::deep_space_unsupported: return "deep-space orbit unsupported";
  }
  return "unknown";
}

/// Mean elements in the kernel's scalar type.
template <class T>
struct ElementSet {
  T no_kozai{};
  T ecco{};
  T inclo{};
  T nodeo{};
  T argpo{};
  T mo{};
  T bstar{};
};

template <class T>
ElementSet<T> to_element_set(const MeanElements& e) {
  using R = real_t<T>;
  return {T(R(e.no_kozai)), T(R(e.ecco)), T(R(e.inclo)), T(R(e.nodeo)),
          T(R(e.argpo)),    T(R(e.mo)),   T(R(e.bstar))};
}

/// Constants fixed at initialization and consumed by every propagation.
template <class T>
struct SatInit {
  // elements (copied)
  T no_kozai{}, ecco{}, inclo{}, nodeo{}, argpo{}, mo{}, bstar{};
  // gravity model in kernel precision
  T xke{}, j2{}, radius_earth_km{}, vkmpersec{};
  // un-Kozai'd mean motion and semi-major axis
  T no_unkozai{}, ao{};
  // secular rates
  T mdot{}, argpdot{}, nodedot{}, nodecf{};
  // drag and periodic coefficients
  T cc1{}, cc2{}, cc3{}, cc4{}, cc5{};
  T d2{}, d3{}, d4{};
  T t2cof{}, t3cof{}, t4cof{}, t5cof{};
  T eta{}, omgcof{}, xmcof{}, delmo{}, sinmao{};
  T aycof{}, xlcof{}, con41{}, x1mth2{}, x7thm1{};

  bool isimp = false;
  ErrorCode error_code_at_init = ErrorCode::ok;
  int epoch_year = 2000;
  int epoch_day_int = 1;
  double epoch_day_frac = 0.0;
};

/// Every scalar member of SatInit, in declaration order. Used to lay the
/// struct out as planes and back.
template <class T>
inline constexpr std::array<T SatInit<T>::*, 39> satinit_scalar_fields{
    &SatInit<T>::no_kozai, &SatInit<T>::ecco,    &SatInit<T>::inclo,      &SatInit<T>::nodeo,
    &SatInit<T>::argpo,    &SatInit<T>::mo,      &SatInit<T>::bstar,      &SatInit<T>::xke,
    &SatInit<T>::j2,       &SatInit<T>::radius_earth_km,                  &SatInit<T>::vkmpersec,
    &SatInit<T>::no_unkozai, &SatInit<T>::ao,    &SatInit<T>::mdot,       &SatInit<T>::argpdot,
    &SatInit<T>::nodedot,  &SatInit<T>::nodecf,  &SatInit<T>::cc1,        &SatInit<T>::cc2,
    &SatInit<T>::cc3,      &SatInit<T>::cc4,     &SatInit<T>::cc5,        &SatInit<T>::d2,
    &SatInit<T>::d3,       &SatInit<T>::d4,      &SatInit<T>::t2cof,      &SatInit<T>::t3cof,
    &SatInit<T>::t4cof,    &SatInit<T>::t5cof,   &SatInit<T>::eta,        &SatInit<T>::omgcof,
    &SatInit<T>::xmcof,    &SatInit<T>::delmo,   &SatInit<T>::sinmao,     &SatInit<T>::aycof,
    &SatInit<T>::xlcof,    &SatInit<T>::con41,   &SatInit<T>::x1mth2,     &SatInit<T>::x7thm1};

/// TEME position [km], velocity [km/s] and the propagation status.
template <class T>
struct StateVector {
  std::array<T, 3> r{};
  std::array<T, 3> v{};
  ErrorCode error_code = ErrorCode::ok;
};

/// Identifies each value-select in the kernel.
enum class Branch {
  low_perigee,          // perigee below 156 km: altitude-dependent s*
  very_low_perigee,     // perigee below 98 km: s* fixed at 20 km
  simplified_drag,      // perigee below 220 km: higher-order drag dropped
  eccentric_drag,       // eccentricity above 1e-4: cc3 and xmcof terms
  regular_inclination,  // |cos i + 1| above 1.5e-12: xlcof denominator
  eccentricity_floor,   // mean eccentricity below 1e-6 is raised to 1e-6
  kepler_clamp,         // Newton step magnitude capped at 0.95
};

/// Default branch policy: every select follows the data.
struct DataBranches {
  constexpr bool operator()(Branch, bool predicate) const noexcept { return predicate; }
};

struct KeplerSolution {
  double eccentric_anomaly = 0.0;
  int iterations = 0;
  double max_step = 0.0;
};

namespace detail {

template <class T>
struct KeplerState {
  T eo1;
  T sineo1;
  T coseo1;
  int iterations;
  real_t<T> max_step;
};

// Newton-Raphson on u = E - axnl*sin(E) + aynl*cos(E) style equation, at most
// ten steps, step magnitude clamped to 0.95, stop once a step falls below
// 1e-12. sin/cos are those of the iterate before the final step, which is
// what the position update consumes.
template <class T, class Branches = DataBranches>
KeplerState<T> kepler_iterate(const T& axnl, const T& aynl, const T& u, Branches branches = {}) {
  using R = real_t<T>;
  using std::abs;
  using std::cos;
  using std::sin;
  T eo1 = u;
  T sineo1 = T(R(0));
  T coseo1 = T(R(0));
  T tem5 = T(R(9999.9));
  int iterations = 0;
  R max_step = R(0);
  for (int k = 1; k <= 10; ++k) {
    if (!(abs(value_of(tem5)) >= R(1.0e-12))) break;
    sineo1 = sin(eo1);
    coseo1 = cos(eo1);
    tem5 = R(1.0) - coseo1 * axnl - sineo1 * aynl;
    tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
    const bool clamp = branches(Branch::kepler_clamp, abs(value_of(tem5)) >= R(0.95));
    tem5 = select(clamp, T(value_of(tem5) > R(0) ? R(0.95) : R(-0.95)), tem5);
    eo1 = eo1 + tem5;
    ++iterations;
    const R step = abs(value_of(tem5));
    if (step > max_step) max_step = step;
  }
  return {eo1, sineo1, coseo1, iterations, max_step};
}

}  // namespace detail

/// Solves the SGP4 form of Kepler's equation for the eccentric longitude.
/// With aynl = 0 this is the classical E - e sin E = M.
inline KeplerSolution solve_kepler(double axnl, double aynl, double u_init) {
  const auto s = detail::kepler_iterate<double>(axnl, aynl, u_init);
  return {s.eo1, s.iterations, s.max_step};
}

/// Computes the initialization constants. Never throws; invalid input is
/// reported through error_code_at_init, with guarded (finite) constants.
template <class T, class Branches = DataBranches>
SatInit<T> sgp4_init(const ElementSet<T>& el, const GravityModel& grav, Branches branches = {}) {
  using R = real_t<T>;
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;
  using std::sqrt;

  const R re = R(grav.radius_earth_km);
  const R xke = R(grav.xke);
  const R j2 = R(grav.j2);
  const R j4 = R(grav.j4);
  const R j3oj2 = R(grav.j3oj2);
  const R x2o3 = R(2.0) / R(3.0);
  const R one = R(1.0);
  const T zero = T(R(0.0));

  SatInit<T> s;
  s.no_kozai = el.no_kozai;
  s.ecco = el.ecco;
  s.inclo = el.inclo;
  s.nodeo = el.nodeo;
  s.argpo = el.argpo;
  s.mo = el.mo;
  s.bstar = el.bstar;
  s.xke = T(xke);
  s.j2 = T(j2);
  s.radius_earth_km = T(re);
  s.vkmpersec = T(re * xke / R(60.0));

  const bool motion_ok = value_of(el.no_kozai) > R(0);
  const bool ecc_ok = value_of(el.ecco) >= R(0) && value_of(el.ecco) < R(1);
  const T no_kozai = select(motion_ok, el.no_kozai, T(R(0.05)));
  const T ecco = select(ecc_ok, el.ecco, zero);
  const T& inclo = el.inclo;
  const T& bstar = el.bstar;

  // Kozai -> Brouwer mean motion and semi-major axis.
  const T eccsq = ecco * ecco;
  const T omeosq = one - eccsq;
  const T rteosq = sqrt(omeosq);
  const T cosio = cos(inclo);
  const T cosio2 = cosio * cosio;
  const T ak = pow(xke / no_kozai, x2o3);
  const T d1 = R(0.75) * j2 * (R(3.0) * cosio2 - one) / (rteosq * omeosq);
  T del = d1 / (ak * ak);
  const T adel = ak * (one - del * del - del * (one / R(3.0) + R(134.0) * del * del / R(81.0)));
  del = d1 / (adel * adel);
  const T no_unkozai = no_kozai / (one + del);
  const T ao = pow(xke / no_unkozai, x2o3);
  const T sinio = sin(inclo);
  const T po = ao * omeosq;
  const T con42 = one - R(5.0) * cosio2;
  const T con41 = -con42 - cosio2 - cosio2;
  const T posq = po * po;
  const T rp = ao * (one - ecco);
  s.no_unkozai = no_unkozai;
  s.ao = ao;
  s.con41 = con41;

  ErrorCode code = ErrorCode::ok;
  if (!motion_ok)
    code = ErrorCode::mean_motion_nonpositive;
  else if (!ecc_ok)
    code = ErrorCode::eccentricity_out_of_range;
  else if (R(2.0) * std::numbers::pi_v<R> / value_of(no_unkozai) >= R(225.0))
    code = ErrorCode::deep_space_unsupported;
  s.error_code_at_init = code;

  // Atmospheric density parameter s* and q0-s* depend on perigee height.
  const R ss = R(78.0) / re + one;
  const R qzms2ttemp = (R(120.0) - R(78.0)) / re;
  const R qzms2t = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;
  const T perige = (rp - one) * re;
  s.isimp = branches(Branch::simplified_drag, value_of(rp) < R(220.0) / re + one);
  const bool low = branches(Branch::low_perigee, value_of(perige) < R(156.0));
  const bool very_low = branches(Branch::very_low_perigee, value_of(perige) < R(98.0));
  const T sfour_low = select(very_low, T(R(20.0)), perige - R(78.0));
  const T qzms24_low = pow((R(120.0) - sfour_low) / re, R(4.0));
  const T sfour = select(low, sfour_low / re + one, T(ss));
  const T qzms24 = select(low, qzms24_low, T(qzms2t));

  const T pinvsq = one / posq;
  const T tsi = one / (ao - sfour);
  const T eta = ao * ecco * tsi;
  const T etasq = eta * eta;
  const T eeta = ecco * eta;
  const T psisq = abs(one - etasq);
  const T coef = qzms24 * pow(tsi, R(4.0));
  const T coef1 = coef / pow(psisq, R(3.5));
  const T cc2 = coef1 * no_unkozai *
                (ao * (one + R(1.5) * etasq + eeta * (R(4.0) + etasq)) +
                 R(0.375) * j2 * tsi / psisq * con41 * (R(8.0) + R(3.0) * etasq * (R(8.0) + etasq)));
  const T cc1 = bstar * cc2;

  const bool eccentric = branches(Branch::eccentric_drag, value_of(ecco) > R(1.0e-4));
  const T ecco_div = select(value_of(ecco) != R(0), ecco, T(one));
  const T eeta_div = select(value_of(eeta) != R(0), eeta, T(one));
  const T cc3 = select(eccentric, R(-2.0) * coef * tsi * j3oj2 * no_unkozai * sinio / ecco_div, zero);

  const T x1mth2 = one - cosio2;
  const T cc4 = R(2.0) * no_unkozai * coef1 * ao * omeosq *
                (eta * (R(2.0) + R(0.5) * etasq) + ecco * (R(0.5) + R(2.0) * etasq) -
                 j2 * tsi / (ao * psisq) *
                     (R(-3.0) * con41 * (one - R(2.0) * eeta + etasq * (R(1.5) - R(0.5) * eeta)) +
                      R(0.75) * x1mth2 * (R(2.0) * etasq - eeta * (one + etasq)) * cos(R(2.0) * s.argpo)));
  const T cc5 = R(2.0) * coef1 * ao * omeosq * (one + R(2.75) * (etasq + eeta) + eeta * etasq);
  const T cosio4 = cosio2 * cosio2;
  const T temp1 = R(1.5) * j2 * pinvsq * no_unkozai;
  const T temp2 = R(0.5) * temp1 * j2 * pinvsq;
  const T temp3 = R(-0.46875) * j4 * pinvsq * pinvsq * no_unkozai;
  s.mdot = no_unkozai + R(0.5) * temp1 * rteosq * con41 +
           R(0.0625) * temp2 * rteosq * (R(13.0) - R(78.0) * cosio2 + R(137.0) * cosio4);
  s.argpdot = R(-0.5) * temp1 * con42 + R(0.0625) * temp2 * (R(7.0) - R(114.0) * cosio2 + R(395.0) * cosio4) +
              temp3 * (R(3.0) - R(36.0) * cosio2 + R(49.0) * cosio4);
  const T xhdot1 = -temp1 * cosio;
  s.nodedot = xhdot1 + (R(0.5) * temp2 * (R(4.0) - R(19.0) * cosio2) + R(2.0) * temp3 * (R(3.0) - R(7.0) * cosio2)) * cosio;
  s.omgcof = bstar * cc3 * cos(s.argpo);
  s.xmcof = select(eccentric, -x2o3 * coef * bstar / eeta_div, zero);
  s.nodecf = R(3.5) * omeosq * xhdot1 * cc1;
  s.t2cof = R(1.5) * cc1;

  const bool regular = branches(Branch::regular_inclination, abs(value_of(cosio) + one) > R(1.5e-12));
  const T xlcof_den = select(regular, one + cosio, T(R(1.5e-12)));
  s.xlcof = R(-0.25) * j3oj2 * sinio * (R(3.0) + R(5.0) * cosio) / xlcof_den;
  s.aycof = R(-0.5) * j3oj2 * sinio;
  const T delmotemp = one + eta * cos(s.mo);
  s.delmo = delmotemp * delmotemp * delmotemp;
  s.sinmao = sin(s.mo);
  s.x7thm1 = R(7.0) * cosio2 - one;

  // Higher-order drag series, suppressed for low perigee.
  const T cc1sq = cc1 * cc1;
  const T d2 = R(4.0) * ao * tsi * cc1sq;
  const T dtemp = d2 * tsi * cc1 / R(3.0);
  const T d3 = (R(17.0) * ao + sfour) * dtemp;
  const T d4 = R(0.5) * dtemp * ao * tsi * (R(221.0) * ao + R(31.0) * sfour) * cc1;
  const T t3cof = d2 + R(2.0) * cc1sq;
  const T t4cof = R(0.25) * (R(3.0) * d3 + cc1 * (R(12.0) * d2 + R(10.0) * cc1sq));
  const T t5cof = R(0.2) * (R(3.0) * d4 + R(12.0) * cc1 * d3 + R(6.0) * d2 * d2 + R(15.0) * cc1sq * (R(2.0) * d2 + cc1sq));
  s.d2 = select(s.isimp, zero, d2);
  s.d3 = select(s.isimp, zero, d3);
  s.d4 = select(s.isimp, zero, d4);
  s.t3cof = select(s.isimp, zero, t3cof);
  s.t4cof = select(s.isimp, zero, t4cof);
  s.t5cof = select(s.isimp, zero, t5cof);

  s.eta = eta;
  s.cc1 = cc1;
  s.cc2 = cc2;
  s.cc3 = cc3;
  s.cc4 = cc4;
  s.cc5 = cc5;
  s.x1mth2 = x1mth2;
  return s;
}

/// Convenience overload taking double-precision mean elements.
template <class T>
SatInit<T> sgp4_init(const MeanElements& elems, const GravityModel& grav) {
  SatInit<T> s = sgp4_init<T>(to_element_set<T>(elems), grav);
  s.epoch_year = elems.epoch_year;
  s.epoch_day_int = elems.epoch_day_int;
  s.epoch_day_frac = elems.epoch_day_frac;
  return s;
}

/// State at `tsince` minutes from epoch. Runs to completion for every input;
/// anomalies are reported in error_code with the computed values retained.
template <class T, class Branches = DataBranches>
StateVector<T> sgp4_propagate(const SatInit<T>& s, const T& tsince, Branches branches = {}) {
  using R = real_t<T>;
  using std::abs;
  using std::atan2;
  using std::cos;
  using std::fmod;
  using std::pow;
  using std::sin;
  using std::sqrt;

  const R one = R(1.0);
  const R x2o3 = R(2.0) / R(3.0);
  const R twopi = R(2.0) * std::numbers::pi_v<R>;
  ErrorCode code = ErrorCode::ok;
  auto flag = [&code](bool bad, ErrorCode c) {
    if (bad && code == ErrorCode::ok) code = c;
  };

  const T& t = tsince;
  const T xmdf = s.mo + s.mdot * t;
  const T argpdf = s.argpo + s.argpdot * t;
  const T nodedf = s.nodeo + s.nodedot * t;
  const T t2 = t * t;
  T nodem = nodedf + s.nodecf * t2;

  // Secular drag; the higher-order series only applies without isimp.
  const T tempa_simple = one - s.cc1 * t;
  const T tempe_simple = s.bstar * s.cc4 * t;
  const T templ_simple = s.t2cof * t2;
  const T delomg = s.omgcof * t;
  const T delmtemp = one + s.eta * cos(xmdf);
  const T delm = s.xmcof * (delmtemp * delmtemp * delmtemp - s.delmo);
  const T dtemp = delomg + delm;
  const T mm_full = xmdf + dtemp;
  const T argpm_full = argpdf - dtemp;
  const T t3 = t2 * t;
  const T t4 = t3 * t;
  const T tempa_full = tempa_simple - s.d2 * t2 - s.d3 * t3 - s.d4 * t4;
  const T tempe_full = tempe_simple + s.bstar * s.cc5 * (sin(mm_full) - s.sinmao);
  const T templ_full = templ_simple + s.t3cof * t3 + t4 * (s.t4cof + t * s.t5cof);
  const bool simple = branches(Branch::simplified_drag, s.isimp);
  T mm = select(simple, xmdf, mm_full);
  T argpm = select(simple, argpdf, argpm_full);
  const T tempa = select(simple, tempa_simple, tempa_full);
  const T tempe = select(simple, tempe_simple, tempe_full);
  const T templ = select(simple, templ_simple, templ_full);

  const T no = s.no_unkozai;
  flag(!(value_of(no) > R(0)), ErrorCode::mean_motion_nonpositive);
  const T no_safe = select(value_of(no) > R(0), no, T(R(0.05)));
  const T am = pow(s.xke / no_safe, x2o3) * tempa * tempa;
  const T nm = s.xke / pow(am, R(1.5));
  T em = s.ecco - tempe;
  const bool em_bad = value_of(em) >= one || value_of(em) < R(-0.001);
  flag(em_bad, ErrorCode::eccentricity_out_of_range);
  em = select(branches(Branch::eccentricity_floor, value_of(em) < R(1.0e-6)), T(R(1.0e-6)), em);
  em = select(value_of(em) >= one, T(one - R(1.0e-6)), em);

  mm = mm + s.no_unkozai * templ;
  T xlm = mm + argpm + nodem;
  nodem = fmod(nodem, twopi);
  argpm = fmod(argpm, twopi);
  xlm = fmod(xlm, twopi);
  mm = fmod(xlm - argpm - nodem, twopi);

  const T sinip = sin(s.inclo);
  const T cosip = cos(s.inclo);
  const T& ep = em;
  flag(value_of(ep) < R(0) || value_of(ep) > one, ErrorCode::perturbed_eccentricity_out_of_range);

  // Long-period periodics.
  const T axnl = ep * cos(argpm);
  T temp = one / (am * (one - ep * ep));
  const T aynl = ep * sin(argpm) + temp * s.aycof;
  const T xl = mm + argpm + nodem + temp * s.xlcof * axnl;

  const T u = fmod(xl - nodem, twopi);
  const auto kep = detail::kepler_iterate(axnl, aynl, u, branches);
  const T& sineo1 = kep.sineo1;
  const T& coseo1 = kep.coseo1;

  // Short-period preliminary quantities.
  const T ecose = axnl * coseo1 + aynl * sineo1;
  const T esine = axnl * sineo1 - aynl * coseo1;
  const T el2 = axnl * axnl + aynl * aynl;
  const T pl_raw = am * (one - el2);
  const bool pl_ok = value_of(pl_raw) >= R(0);
  flag(!pl_ok, ErrorCode::semilatus_negative);
  const T pl = select(pl_ok, pl_raw, -pl_raw);
  const T one_m_el2 = select(value_of(el2) <= one, one - el2, T(R(0)));
  const T rl = am * (one - ecose);
  const T rdotl = sqrt(am) * esine / rl;
  const T rvdotl = sqrt(pl) / rl;
  const T betal = sqrt(one_m_el2);
  temp = esine / (one + betal);
  const T sinu = am / rl * (sineo1 - aynl - axnl * temp);
  const T cosu = am / rl * (coseo1 - axnl + aynl * temp);
  T su = atan2(sinu, cosu);
  const T sin2u = (cosu + cosu) * sinu;
  const T cos2u = one - R(2.0) * sinu * sinu;
  const T pl_div = select(value_of(pl) != R(0), pl, T(R(1.0e-12)));
  temp = one / pl_div;
  const T temp1 = R(0.5) * s.j2 * temp;
  const T temp2 = temp1 * temp;

  // Short-period periodics.
  const T mrt = rl * (one - R(1.5) * temp2 * betal * s.con41) + R(0.5) * temp1 * s.x1mth2 * cos2u;
  su = su - R(0.25) * temp2 * s.x7thm1 * sin2u;
  const T xnode = nodem + R(1.5) * temp2 * cosip * sin2u;
  const T xinc = s.inclo + R(1.5) * temp2 * cosip * sinip * cos2u;
  const T mvt = rdotl - nm * temp1 * s.x1mth2 * sin2u / s.xke;
  const T rvdot = rvdotl + nm * temp1 * (s.x1mth2 * cos2u + R(1.5) * s.con41) / s.xke;

  // Orientation vectors.
  const T sinsu = sin(su);
  const T cossu = cos(su);
  const T snod = sin(xnode);
  const T cnod = cos(xnode);
  const T sini = sin(xinc);
  const T cosi = cos(xinc);
  const T xmx = -snod * cosi;
  const T xmy = cnod * cosi;
  const T ux = xmx * sinsu + cnod * cossu;
  const T uy = xmy * sinsu + snod * cossu;
  const T uz = sini * sinsu;
  const T vx = xmx * cossu - cnod * sinsu;
  const T vy = xmy * cossu - snod * sinsu;
  const T vz = sini * cossu;

  const T mr = mrt * s.radius_earth_km;
  StateVector<T> out;
  out.r = {mr * ux, mr * uy, mr * uz};
  out.v = {(mvt * ux + rvdot * vx) * s.vkmpersec, (mvt * uy + rvdot * vy) * s.vkmpersec,
           (mvt * uz + rvdot * vz) * s.vkmpersec};
  flag(value_of(mrt) < one, ErrorCode::suborbital);
  out.error_code = code;
  return out;
}

}  // namespace sgp4x
