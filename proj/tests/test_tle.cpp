#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sgp4x/tle.hpp"
#include "test_support.hpp"

using namespace sgp4x;

namespace {

const std::string kLine1 = "1 88888U          80275.98708465  .00073094  13844-3  66816-4 0    87";
const std::string kLine2 = "2 88888  72.8435 115.9689 0086731  52.6988 110.5714 16.05824518  1058";

// Replaces columns [first, first + text.size()) (1-indexed) and re-stamps the
// checksum in column 69.
std::string patch(std::string line, std::size_t first, const std::string& text) {
  line.replace(first - 1, text.size(), text);
  line[68] = static_cast<char>('0' + checksum(line));
  return line;
}

ParseErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ParseError thrown";
  return ParseErrorKind::numeric;
}

}  // namespace

TEST(Checksum, AllZeroDigits) { EXPECT_EQ(checksum(std::string(68, '0')), 0); }

TEST(Checksum, AllBlank) { EXPECT_EQ(checksum(std::string(68, ' ')), 0); }

TEST(Checksum, MinusCountsOne) { EXPECT_EQ(checksum("1-" + std::string(66, ' ')), 2); }

TEST(Checksum, ShortLineIsLengthError) {
  EXPECT_EQ(kind_of([] { checksum(std::string(42, '1')); }), ParseErrorKind::length);
}

TEST(Checksum, MatchesLastColumnOnCorpus) {
  for (const char* file : {"synthetic_catalogue.tle", "science.tle"}) {
    const auto pairs = testsupport::load_line_pairs(file);
    ASSERT_FALSE(pairs.empty());
    for (const auto& [l1, l2] : pairs) {
      EXPECT_EQ(checksum(l1), l1[68] - '0') << l1;
      EXPECT_EQ(checksum(l2), l2[68] - '0') << l2;
    }
  }
}

TEST(Alpha5, DigitsPassThrough) { EXPECT_EQ(decode_alpha5("25544"), 25544); }

TEST(Alpha5, LeadingLetter) {
  EXPECT_EQ(decode_alpha5("A0000"), 100000);
  EXPECT_EQ(decode_alpha5("H9999"), 179999);
  EXPECT_EQ(decode_alpha5("J0000"), 180000);  // I is skipped
  EXPECT_EQ(decode_alpha5("P0000"), 230000);  // O is skipped
  EXPECT_EQ(decode_alpha5("Z9999"), 339999);
}

TEST(Alpha5, ExcludedLetters) {
  EXPECT_EQ(kind_of([] { decode_alpha5("I1234"); }), ParseErrorKind::alpha5);
  EXPECT_EQ(kind_of([] { decode_alpha5("O1234"); }), ParseErrorKind::alpha5);
  EXPECT_EQ(kind_of([] { decode_alpha5("a1234"); }), ParseErrorKind::alpha5);
}

TEST(ParseTle, ImpliedDecimalEccentricity) {
  const auto l2 = patch(kLine2, 27, "0006703");
  EXPECT_EQ(parse_tle(kLine1, l2).eccentricity, 0.0006703);
}

TEST(ParseTle, ImpliedExponentFields) {
  const auto t = parse_tle(kLine1, kLine2);
  EXPECT_DOUBLE_EQ(t.nddot, 0.13844e-3);
  EXPECT_DOUBLE_EQ(t.bstar, 0.66816e-4);
  EXPECT_DOUBLE_EQ(t.ndot, 0.00073094);
  const auto neg = parse_tle(patch(kLine1, 54, "-11606-4"), kLine2);
  EXPECT_DOUBLE_EQ(neg.bstar, -0.11606e-4);
}

TEST(ParseTle, ShortLineIsLengthError) {
  EXPECT_EQ(kind_of([] { parse_tle(kLine1.substr(0, 42), kLine2); }), ParseErrorKind::length);
  EXPECT_EQ(kind_of([] { parse_tle(kLine1.substr(0, 42), kLine2, ParseMode::lenient); }), ParseErrorKind::length);
}

TEST(ParseTle, EpochIsSplit) {
  const auto t = parse_tle(patch(kLine1, 19, "26013.50000000"), kLine2);
  EXPECT_EQ(t.epoch_year, 2026);
  EXPECT_EQ(t.epoch_day_int, 13);
  EXPECT_EQ(t.epoch_day_frac, 0.5);
}

TEST(ParseTle, YearWindowPivot) {
  EXPECT_EQ(parse_tle(patch(kLine1, 19, "57"), kLine2).epoch_year, 1957);
  EXPECT_EQ(parse_tle(patch(kLine1, 19, "99"), kLine2).epoch_year, 1999);
  EXPECT_EQ(parse_tle(patch(kLine1, 19, "00"), kLine2).epoch_year, 2000);
  EXPECT_EQ(parse_tle(patch(kLine1, 19, "56"), kLine2).epoch_year, 2056);
}

TEST(ParseTle, DayOutOfRange) {
  EXPECT_EQ(kind_of([] { parse_tle(patch(kLine1, 19, "25366.5"), kLine2); }), ParseErrorKind::epoch);
  EXPECT_NO_THROW(parse_tle(patch(kLine1, 19, "24366.5"), kLine2));
  EXPECT_EQ(kind_of([] { parse_tle(patch(kLine1, 19, "24000.5"), kLine2); }), ParseErrorKind::epoch);
}

TEST(ParseTle, ChecksumStrictVersusLenient) {
  std::string bad = kLine1;
  bad[68] = bad[68] == '9' ? '0' : static_cast<char>(bad[68] + 1);
  EXPECT_EQ(kind_of([&] { parse_tle(bad, kLine2, ParseMode::strict); }), ParseErrorKind::checksum);
  std::vector<std::string> warnings;
  const auto t = parse_tle(bad, kLine2, ParseMode::lenient, &warnings);
  EXPECT_EQ(t.catalog_number, 88888);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("checksum"), std::string::npos);
}

TEST(ParseTle, LenientTrimsAndRepads) {
  std::vector<std::string> warnings;
  const auto t = parse_tle(kLine1 + "   ", kLine2 + "\r", ParseMode::lenient, &warnings);
  EXPECT_EQ(t.catalog_number, 88888);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(kind_of([] { parse_tle(kLine1 + " ", kLine2, ParseMode::strict); }), ParseErrorKind::length);
}

TEST(ParseTle, LineNumberColumns) {
  EXPECT_EQ(kind_of([] { parse_tle(kLine2, kLine2); }), ParseErrorKind::line_number);
  EXPECT_EQ(kind_of([] { parse_tle(kLine1, kLine1); }), ParseErrorKind::line_number);
}

TEST(ParseTle, CatalogMismatch) {
  EXPECT_EQ(kind_of([] { parse_tle(kLine1, patch(kLine2, 3, "88889")); }), ParseErrorKind::catalog_mismatch);
}

TEST(ParseTle, UnparseableNumber) {
  EXPECT_EQ(kind_of([] { parse_tle(kLine1, patch(kLine2, 9, " 72.8x35")); }), ParseErrorKind::numeric);
}

TEST(ParseTle, AlphaCatalogOnBothLines) {
  const auto t = parse_tle(patch(kLine1, 3, "A1234"), patch(kLine2, 3, "A1234"));
  EXPECT_EQ(t.catalog_number, 101234);
}

TEST(TleToElements, UnitIdentity) {
  TwoLineElement t;
  t.mean_motion_revday = 1440.0 / (2.0 * std::numbers::pi);
  t.inclination_deg = 180.0;
  const auto e = tle_to_elements(t);
  EXPECT_NEAR(e.no_kozai, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(e.inclo, std::numbers::pi);
}

TEST(TleToElements, StarlinkLike) {
  TwoLineElement t;
  t.inclination_deg = 53.05;
  t.mean_motion_revday = 15.06;
  const auto e = tle_to_elements(t);
  // 53.05 * pi / 180 and 15.06 * 2 pi / 1440, evaluated independently.
  EXPECT_NEAR(e.inclo, 0.925897, 1e-6);
  EXPECT_NEAR(e.no_kozai, 0.0657115, 1e-6);
}

TEST(TleToElements, EpochCopiedUnchanged) {
  const auto t = parse_tle(kLine1, kLine2);
  const auto e = tle_to_elements(t);
  EXPECT_EQ(e.epoch_year, t.epoch_year);
  EXPECT_EQ(e.epoch_day_int, t.epoch_day_int);
  EXPECT_EQ(e.epoch_day_frac, t.epoch_day_frac);
}

TEST(Epoch, SplitRoundTrip) {
  const auto pairs = testsupport::load_line_pairs("synthetic_catalogue.tle");
  double worst_split32 = 0.0;
  double worst_naive32 = 0.0;
  for (const auto& [l1, l2] : pairs) {
    const auto t = parse_tle(l1, l2);
    const double printed = std::stod(l1.substr(20, 12));
    EXPECT_NEAR(t.epoch_day_int + t.epoch_day_frac, printed, 1e-8);
    const float frac32 = static_cast<float>(t.epoch_day_frac);
    worst_split32 = std::max(worst_split32, std::abs(static_cast<double>(frac32) - t.epoch_day_frac));
    const float naive32 = static_cast<float>(printed);
    worst_naive32 = std::max(worst_naive32, std::abs(static_cast<double>(naive32) - printed));
  }
  EXPECT_LT(worst_split32, 1e-7);
  EXPECT_GT(worst_naive32, 10 * worst_split32);
}

TEST(Omm, MatchesTleRoute) {
  const auto t = parse_tle(patch(kLine1, 19, "26013.50000000"), kLine2);
  const auto from_tle = tle_to_elements(t);
  const std::string omm =
      "CCSDS_OMM_VERS = 2.0\n"
      "COMMENT generated for a test\n"
      "OBJECT_NAME = TEST\n"
      "EPOCH = 2026-01-13T12:00:00\n"
      "MEAN_MOTION = 16.05824518 [rev/day]\n"
      "ECCENTRICITY = 0.0086731\n"
      "INCLINATION = 72.8435\n"
      "RA_OF_ASC_NODE = 115.9689\n"
      "ARG_OF_PERICENTER = 52.6988\n"
      "MEAN_ANOMALY = 110.5714\n"
      "BSTAR = 0.66816E-4\n";
  const auto from_omm = parse_omm_kvp(omm);
  EXPECT_EQ(from_omm, from_tle);
  EXPECT_EQ(from_omm.epoch_day_int, 13);
  EXPECT_EQ(from_omm.epoch_day_frac, 0.5);
}

TEST(Omm, CalendarEpoch) {
  const std::string base =
      "MEAN_MOTION=15\nECCENTRICITY=0.001\nINCLINATION=53\nRA_OF_ASC_NODE=0\nARG_OF_PERICENTER=0\n"
      "MEAN_ANOMALY=0\nBSTAR=0\n";
  const auto e = parse_omm_kvp(base + "EPOCH=2024-03-01T06:00:00.000Z\n");
  EXPECT_EQ(e.epoch_year, 2024);
  EXPECT_EQ(e.epoch_day_int, 61);  // leap year: 31 + 29 + 1
  EXPECT_EQ(e.epoch_day_frac, 0.25);
  EXPECT_EQ(kind_of([&] { parse_omm_kvp(base + "EPOCH=2024-02-30T00:00:00\n"); }), ParseErrorKind::epoch);
  EXPECT_EQ(kind_of([&] { parse_omm_kvp(base + "EPOCH=yesterday\n"); }), ParseErrorKind::epoch);
}

TEST(Omm, MissingKey) {
  const std::string text =
      "EPOCH=2026-01-13T12:00:00\nMEAN_MOTION=15\nECCENTRICITY=0.001\nINCLINATION=53\nRA_OF_ASC_NODE=0\n"
      "ARG_OF_PERICENTER=0\nMEAN_ANOMALY=0\n";
  EXPECT_EQ(kind_of([&] { parse_omm_kvp(text); }), ParseErrorKind::missing_key);
}

TEST(Stream, TwoAndThreeLineRecords) {
  std::istringstream in("ISS (ZARYA)\n" + kLine1 + "\n" + kLine2 + "\n\n" + kLine1 + "\n" + kLine2 + "\n");
  const auto recs = read_tle_stream(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].name, "ISS (ZARYA)");
  EXPECT_EQ(recs[1].name, "");
}

// Every field of every record against the reference parser's decoding.
TEST(Conformance, CatalogueAgainstReferenceParser) {
  auto recs = testsupport::load_tles("synthetic_catalogue.tle", ParseMode::strict);
  const auto science = testsupport::load_tles("science.tle", ParseMode::strict);
  recs.insert(recs.end(), science.begin(), science.end());
  const auto ref = testsupport::load_csv("synthetic_catalogue_reference.csv");
  ASSERT_EQ(recs.size(), ref.rows.size());
  ASSERT_GE(recs.size(), 1000u);

  const double xpdotp = 1440.0 / (2.0 * std::numbers::pi);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& t = recs[k].tle;
    const auto e = tle_to_elements(t);
    const auto& row = ref.rows[k];
    auto num = [&](const char* col) { return std::stod(row[ref.col(col)]); };
    auto check = [&](bool ok, const char* field) {
      if (!ok) {
        ++mismatches;
        ADD_FAILURE() << "record " << k << " field " << field;
      }
    };
    check(t.catalog_number == std::stol(row[ref.col("satnum")]), "satnum");
    check(std::string(1, t.classification) == row[ref.col("classification")], "classification");
    check(t.intl_designator == row[ref.col("intldesg")], "intldesg");
    check(t.epoch_year == std::stoi(row[ref.col("epochyr")]), "epochyr");
    check(std::abs(t.epoch_day_int + t.epoch_day_frac - num("epochdays")) <= 1e-8, "epochdays");
    check(t.ndot / (xpdotp * 1440.0) == num("ndot"), "ndot");
    check(t.nddot / (xpdotp * 1440.0 * 1440.0) == num("nddot"), "nddot");
    check(t.bstar == num("bstar"), "bstar");
    check(e.inclo == num("inclo"), "inclo");
    check(e.nodeo == num("nodeo"), "nodeo");
    check(e.ecco == num("ecco"), "ecco");
    check(e.argpo == num("argpo"), "argpo");
    check(e.mo == num("mo"), "mo");
    check(e.no_kozai == num("no_kozai"), "no_kozai");
    check(t.element_set_number == std::stoi(row[ref.col("elnum")]), "elnum");
    check(t.rev_number == std::stol(row[ref.col("revnum")]), "revnum");
  }
  EXPECT_EQ(mismatches, 0u);
}
