#pragma once

// Two-line element set ingestion.
//
// Column layout (1-indexed, inclusive), as published for the 69-column format:
//
//   Line 1                                  Line 2
//   01     line number '1'                  01     line number '2'
//   03-07  catalog number (Alpha-5)         03-07  catalog number (Alpha-5)
//   08     classification                   09-16  inclination [deg]
//   10-17  international designator         18-25  right ascension of node [deg]
//   19-20  epoch year (two digits)          27-33  eccentricity, implied "0."
//   21-32  epoch day-of-year.fraction       35-42  argument of perigee [deg]
//   34-43  ndot/2 [rev/day^2]               44-51  mean anomaly [deg]
//   45-52  nddot/6, implied "0." + exponent 53-63  mean motion [rev/day]
//   54-61  B*, implied "0." + exponent      64-68  revolution number
//   63     ephemeris type                   69     checksum
//   65-68  element set number
//   69     checksum
//
// ndot and nddot are decoded and kept on TwoLineElement, but SGP4 does not use
// them and they never reach MeanElements.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace sgp4x {

enum class ParseErrorKind {
  length,
  checksum,
  line_number,
  catalog_mismatch,
  numeric,
  alpha5,
  missing_key,
  epoch,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

/// Strict rejects anything off-format. Lenient (bulk catalogue ingestion)
/// downgrades checksum mismatches to warnings, re-pads lines whose trailing
/// blanks or checksum column were trimmed, and ignores text past column 69.
enum class ParseMode { strict, lenient };

struct TwoLineElement {
  std::int32_t catalog_number = 0;
  char classification = 'U';
  std::string intl_designator;
  int epoch_year = 0;      // four digits
  int epoch_day_int = 1;   // 1..366
  double epoch_day_frac = 0.0;  // [0, 1)
  double ndot = 0.0;       // rev/day^2, as printed (already halved)
  double nddot = 0.0;      // rev/day^3, as printed (already divided by 6)
  double bstar = 0.0;      // 1/earth radii
  int ephemeris_type = 0;
  int element_set_number = 0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double eccentricity = 0.0;
  double argp_deg = 0.0;
  double mean_anomaly_deg = 0.0;
  double mean_motion_revday = 0.0;
  std::int32_t rev_number = 0;
  int checksum1 = 0;
  int checksum2 = 0;
};

/// Kozai mean elements in canonical units plus the split epoch. This is the
/// satellite input of the propagator.
struct MeanElements {
  double no_kozai = 0.0;  // rad/min
  double ecco = 0.0;
  double inclo = 0.0;  // rad
  double nodeo = 0.0;  // rad
  double argpo = 0.0;  // rad
  double mo = 0.0;     // rad
  double bstar = 0.0;  // 1/earth radii
  int epoch_year = 2000;
  int epoch_day_int = 1;
  double epoch_day_frac = 0.0;

  friend bool operator==(const MeanElements&, const MeanElements&) = default;
};

/// Minutes per day divided by 2*pi; rev/day divided by this gives rad/min.
inline constexpr double kRevPerDayPerRadPerMin = 1440.0 / (2.0 * std::numbers::pi);

namespace detail {

inline std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
  return line.substr(first - 1, last - first + 1);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void numeric_error(std::string_view what, std::string_view text) {
  throw ParseError(ParseErrorKind::numeric,
                   "unparseable " + std::string(what) + " field '" + std::string(text) + "'");
}

inline double to_double(std::string_view text, std::string_view what) {
  auto s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) numeric_error(what, text);
  return value;
}

inline long long to_integer(std::string_view text, std::string_view what, bool blank_is_zero = false) {
  auto s = trim(text);
  if (s.empty() && blank_is_zero) return 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) numeric_error(what, text);
  return value;
}

// "0" + digits read as a fraction, e.g. "0006703" -> 0.0006703.
inline double implied_fraction(std::string_view digits, std::string_view what) {
  for (char c : digits)
    if ((c < '0' || c > '9') && c != ' ') numeric_error(what, digits);
  std::string text = "0.";
  for (char c : digits) text.push_back(c == ' ' ? '0' : c);
  return to_double(text, what);
}

// Eight-column " NNNNN-N" form: mantissa sign, five implied-decimal digits,
// exponent sign, exponent digit.
inline double implied_exponent(std::string_view field, std::string_view what) {
  if (field.size() != 8) numeric_error(what, field);
  const char sign = field[0];
  if (sign != ' ' && sign != '-' && sign != '+') numeric_error(what, field);
  double mantissa = implied_fraction(field.substr(1, 5), what);
  if (sign == '-') mantissa = -mantissa;
  const char esign = field[6];
  const char edigit = field[7];
  if ((esign != '-' && esign != '+' && esign != ' ') || edigit < '0' || edigit > '9')
    numeric_error(what, field);
  const int exponent = (esign == '-' ? -1 : 1) * (edigit - '0');
  return mantissa * std::pow(10.0, exponent);
}

inline int window_year(int two_digit) { return two_digit < 57 ? 2000 + two_digit : 1900 + two_digit; }

inline bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

inline std::string normalise_line(std::string_view raw, int which, ParseMode mode,
                                  std::vector<std::string>* warnings) {
  std::string_view line = raw;
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  if (mode == ParseMode::strict) {
    if (line.size() != 69)
      throw ParseError(ParseErrorKind::length, "line " + std::to_string(which) + " has " +
                                                   std::to_string(line.size()) +
                                                   " characters, expected 69");
    return std::string(line);
  }
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
  if (line.size() < 68)
    throw ParseError(ParseErrorKind::length, "line " + std::to_string(which) + " has " +
                                                 std::to_string(line.size()) +
                                                 " characters, expected at least 68");
  if (line.size() > 69) {
    if (warnings) warnings->push_back("line " + std::to_string(which) + ": text past column 69 ignored");
    line = line.substr(0, 69);
  }
  std::string out(line);
  out.resize(69, ' ');
  return out;
}

}  // namespace detail

/// Modulo-10 checksum over columns 1-68: digits count their value, '-' counts
/// one, everything else zero.
inline int checksum(std::string_view line) {
  if (line.size() < 68)
    throw ParseError(ParseErrorKind::length,
                     "checksum needs 68 columns, got " + std::to_string(line.size()));
  int sum = 0;
  for (char c : line.substr(0, 68)) {
    if (c >= '0' && c <= '9')
      sum += c - '0';
    else if (c == '-')
      sum += 1;
  }
  return sum % 10;
}

/// Decodes a five-character catalog number. A leading letter encodes
/// 10..33 (A..Z without I and O) in the ten-thousands place.
inline std::int32_t decode_alpha5(std::string_view field) {
  if (field.size() != 5)
    throw ParseError(ParseErrorKind::alpha5, "catalog field '" + std::string(field) + "' is not 5 columns");
  const char lead = field[0];
  std::int32_t prefix = 0;
  if (lead >= '0' && lead <= '9') {
    prefix = lead - '0';
  } else if (lead >= 'A' && lead <= 'Z' && lead != 'I' && lead != 'O') {
    prefix = 10 + (lead - 'A');
    if (lead > 'I') --prefix;
    if (lead > 'O') --prefix;
  } else if (lead == ' ') {
    prefix = 0;  // right-justified legacy numbers
  } else {
    throw ParseError(ParseErrorKind::alpha5, "invalid Alpha-5 leading character '" + std::string(1, lead) + "'");
  }
  std::int32_t rest = 0;
  for (char c : field.substr(1)) {
    if (c == ' ') c = '0';
    if (c < '0' || c > '9')
      throw ParseError(ParseErrorKind::alpha5, "invalid Alpha-5 field '" + std::string(field) + "'");
    rest = rest * 10 + (c - '0');
  }
  return prefix * 10000 + rest;
}

/// Parses one element set. `warnings` collects lenient-mode diagnostics.
inline TwoLineElement parse_tle(std::string_view line1_raw, std::string_view line2_raw,
                                ParseMode mode = ParseMode::strict,
                                std::vector<std::string>* warnings = nullptr) {
  using detail::columns;
  const std::string line1 = detail::normalise_line(line1_raw, 1, mode, warnings);
  const std::string line2 = detail::normalise_line(line2_raw, 2, mode, warnings);

  if (line1[0] != '1') throw ParseError(ParseErrorKind::line_number, "line 1 does not start with '1'");
  if (line2[0] != '2') throw ParseError(ParseErrorKind::line_number, "line 2 does not start with '2'");

  TwoLineElement tle;
  const std::array<const std::string*, 2> lines{&line1, &line2};
  for (int k = 0; k < 2; ++k) {
    const std::string& line = *lines[k];
    const int expected = checksum(line);
    const char printed = line[68];
    const int value = (printed >= '0' && printed <= '9') ? printed - '0' : -1;
    (k == 0 ? tle.checksum1 : tle.checksum2) = value < 0 ? expected : value;
    if (value != expected) {
      const std::string msg = "line " + std::to_string(k + 1) + " checksum mismatch: printed '" +
                              std::string(1, printed) + "', computed " + std::to_string(expected);
      if (mode == ParseMode::strict) throw ParseError(ParseErrorKind::checksum, msg);
      if (warnings) warnings->push_back(msg);
    }
  }

  tle.catalog_number = decode_alpha5(columns(line1, 3, 7));
  const std::int32_t catalog2 = decode_alpha5(columns(line2, 3, 7));
  if (catalog2 != tle.catalog_number)
    throw ParseError(ParseErrorKind::catalog_mismatch,
                     "catalog numbers differ: " + std::to_string(tle.catalog_number) + " vs " +
                         std::to_string(catalog2));

  tle.classification = line1[7] == ' ' ? 'U' : line1[7];
  tle.intl_designator = std::string(detail::trim(columns(line1, 10, 17)));

  // Epoch: integer day and fraction are decoded separately so the fraction
  // keeps every printed digit.
  const auto yy = detail::to_integer(columns(line1, 19, 20), "epoch year");
  tle.epoch_year = detail::window_year(static_cast<int>(yy));
  const std::string_view day_field = columns(line1, 21, 32);
  const auto dot = day_field.find('.');
  if (dot == std::string_view::npos) detail::numeric_error("epoch day", day_field);
  tle.epoch_day_int = static_cast<int>(detail::to_integer(day_field.substr(0, dot), "epoch day"));
  const std::string_view frac_digits = detail::trim(day_field.substr(dot + 1));
  for (char c : frac_digits)
    if (c < '0' || c > '9') detail::numeric_error("epoch day", day_field);
  tle.epoch_day_frac = frac_digits.empty() ? 0.0 : detail::implied_fraction(frac_digits, "epoch day");
  const int max_day = detail::is_leap(tle.epoch_year) ? 366 : 365;
  if (tle.epoch_day_int < 1 || tle.epoch_day_int > max_day)
    throw ParseError(ParseErrorKind::epoch, "epoch day " + std::to_string(tle.epoch_day_int) +
                                                " out of range for " + std::to_string(tle.epoch_year));

  tle.ndot = detail::to_double(columns(line1, 34, 43), "ndot");
  tle.nddot = detail::implied_exponent(columns(line1, 45, 52), "nddot");
  tle.bstar = detail::implied_exponent(columns(line1, 54, 61), "bstar");
  tle.ephemeris_type = static_cast<int>(detail::to_integer(columns(line1, 63, 63), "ephemeris type", true));
  tle.element_set_number =
      static_cast<int>(detail::to_integer(columns(line1, 65, 68), "element set number", true));

  tle.inclination_deg = detail::to_double(columns(line2, 9, 16), "inclination");
  tle.raan_deg = detail::to_double(columns(line2, 18, 25), "right ascension");
  tle.eccentricity = detail::implied_fraction(columns(line2, 27, 33), "eccentricity");
  tle.argp_deg = detail::to_double(columns(line2, 35, 42), "argument of perigee");
  tle.mean_anomaly_deg = detail::to_double(columns(line2, 44, 51), "mean anomaly");
  tle.mean_motion_revday = detail::to_double(columns(line2, 53, 63), "mean motion");
  tle.rev_number = static_cast<std::int32_t>(detail::to_integer(columns(line2, 64, 68), "revolution number", true));

  if (tle.inclination_deg < 0.0 || tle.inclination_deg > 180.0)
    detail::numeric_error("inclination", columns(line2, 9, 16));
  return tle;
}

namespace detail {

inline double normalise_angle(double rad) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (rad >= 0.0 && rad < two_pi) return rad;
  double r = std::fmod(rad, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace detail

/// Degrees to radians, rev/day to rad/min; the epoch is copied through as
/// separate integer day and fraction.
inline MeanElements tle_to_elements(const TwoLineElement& tle) {
  MeanElements e;
  e.no_kozai = tle.mean_motion_revday / kRevPerDayPerRadPerMin;
  e.ecco = tle.eccentricity;
  e.inclo = tle.inclination_deg * detail::kDegToRad;
  e.nodeo = detail::normalise_angle(tle.raan_deg * detail::kDegToRad);
  e.argpo = detail::normalise_angle(tle.argp_deg * detail::kDegToRad);
  e.mo = detail::normalise_angle(tle.mean_anomaly_deg * detail::kDegToRad);
  e.bstar = tle.bstar;
  e.epoch_year = tle.epoch_year;
  e.epoch_day_int = tle.epoch_day_int;
  e.epoch_day_frac = tle.epoch_day_frac;
  return e;
}

struct TleRecord {
  std::string name;  // empty for two-line records
  TwoLineElement tle;
};

/// Reads concatenated 2- or 3-line records. Blank lines are skipped; a line
/// that does not start with "1 " or "2 " is taken as the name of the next
/// record.
inline std::vector<TleRecord> read_tle_stream(std::istream& in, ParseMode mode = ParseMode::lenient,
                                              std::vector<std::string>* warnings = nullptr) {
  std::vector<TleRecord> out;
  std::string line;
  std::string name;
  std::optional<std::string> pending1;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (line.rfind("1 ", 0) == 0 && !pending1) {
      pending1 = line;
      continue;
    }
    if (line.rfind("2 ", 0) == 0 && pending1) {
      std::vector<std::string> local;
      try {
        out.push_back({name, parse_tle(*pending1, line, mode, warnings ? &local : nullptr)});
      } catch (const ParseError& e) {
        throw ParseError(e.kind(), "record ending at line " + std::to_string(lineno) + ": " + e.what());
      }
      if (warnings)
        for (auto& w : local) warnings->push_back("record ending at line " + std::to_string(lineno) + ": " + w);
      pending1.reset();
      name.clear();
      continue;
    }
    if (pending1)
      throw ParseError(ParseErrorKind::line_number,
                       "line " + std::to_string(lineno) + ": expected line 2 after line 1");
    name = std::string(detail::trim(line));
    if (name.rfind("0 ", 0) == 0) name = name.substr(2);
  }
  if (pending1) throw ParseError(ParseErrorKind::line_number, "input ends after a line 1");
  return out;
}

namespace detail {

inline int day_of_year(int year, int month, int day) {
  static constexpr std::array<int, 12> before{0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
  return before[static_cast<std::size_t>(month - 1)] + day + (month > 2 && is_leap(year) ? 1 : 0);
}

inline int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> days{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return days[static_cast<std::size_t>(month - 1)] + (month == 2 && is_leap(year) ? 1 : 0);
}

// "YYYY-MM-DDThh:mm:ss[.ffffff][Z]"
inline void parse_iso_epoch(std::string_view text, MeanElements& e) {
  auto fail = [&]() {
    throw ParseError(ParseErrorKind::epoch, "malformed ISO-8601 epoch '" + std::string(text) + "'");
  };
  auto s = trim(text);
  if (!s.empty() && s.back() == 'Z') s.remove_suffix(1);
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
      s[16] != ':')
    fail();
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t k = pos; k < pos + len; ++k) {
      if (s[k] < '0' || s[k] > '9') fail();
      v = v * 10 + (s[k] - '0');
    }
    return v;
  };
  const int year = num(0, 4), month = num(5, 2), day = num(8, 2);
  const int hour = num(11, 2), minute = num(14, 2);
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) || hour > 23 || minute > 59)
    fail();
  double seconds = 0.0;
  {
    const auto sec = s.substr(17);
    for (char c : sec)
      if ((c < '0' || c > '9') && c != '.') fail();
    auto [ptr, ec] = std::from_chars(sec.data(), sec.data() + sec.size(), seconds);
    if (ec != std::errc{} || ptr != sec.data() + sec.size() || seconds >= 61.0) fail();
  }
  e.epoch_year = year;
  e.epoch_day_int = day_of_year(year, month, day);
  e.epoch_day_frac = (hour * 3600.0 + minute * 60.0 + seconds) / 86400.0;
}

}  // namespace detail

/// Reads the KEY = value encoding of an Orbit Mean-Elements Message into the
/// same canonical units as tle_to_elements.
inline MeanElements parse_omm_kvp(std::string_view text) {
  struct Key {
    std::string_view name;
    std::optional<std::string> value;
  };
  std::array<Key, 8> keys{{{"MEAN_MOTION", {}},
                           {"ECCENTRICITY", {}},
                           {"INCLINATION", {}},
                           {"RA_OF_ASC_NODE", {}},
                           {"ARG_OF_PERICENTER", {}},
                           {"MEAN_ANOMALY", {}},
                           {"BSTAR", {}},
                           {"EPOCH", {}}}};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = detail::trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.rfind("COMMENT", 0) == 0) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    // Optional bracketed units, e.g. "15.06 [rev/day]".
    if (auto br = value.find('['); br != std::string_view::npos) value = detail::trim(value.substr(0, br));
    for (auto& k : keys)
      if (k.name == key) k.value = std::string(value);
  }
  for (const auto& k : keys)
    if (!k.value) throw ParseError(ParseErrorKind::missing_key, "OMM is missing " + std::string(k.name));

  TwoLineElement tle;
  tle.mean_motion_revday = detail::to_double(*keys[0].value, "MEAN_MOTION");
  tle.eccentricity = detail::to_double(*keys[1].value, "ECCENTRICITY");
  tle.inclination_deg = detail::to_double(*keys[2].value, "INCLINATION");
  tle.raan_deg = detail::to_double(*keys[3].value, "RA_OF_ASC_NODE");
  tle.argp_deg = detail::to_double(*keys[4].value, "ARG_OF_PERICENTER");
  tle.mean_anomaly_deg = detail::to_double(*keys[5].value, "MEAN_ANOMALY");
  tle.bstar = detail::to_double(*keys[6].value, "BSTAR");
  if (tle.eccentricity < 0.0 || tle.eccentricity >= 1.0) detail::numeric_error("ECCENTRICITY", *keys[1].value);

  MeanElements e = tle_to_elements(tle);
  detail::parse_iso_epoch(*keys[7].value, e);
  return e;
}

}  // namespace sgp4x
