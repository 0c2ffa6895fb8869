#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sgp4x/precision.hpp"
#include "test_support.hpp"

using namespace sgp4x;

namespace {

std::vector<MeanElements> catalogue(std::size_t count) {
  std::vector<MeanElements> out;
  for (const auto& r : testsupport::load_tles("synthetic_catalogue.tle")) {
    if (out.size() == count) break;
    out.push_back(tle_to_elements(r.tle));
  }
  return out;
}

// Percentile by definition: the smallest sample x with count(s <= x) >= p% of n.
double percentile_by_count(const std::vector<double>& samples, double p) {
  auto sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  for (double x : sorted) {
    const auto le = std::count_if(samples.begin(), samples.end(), [&](double s) { return s <= x; });
    if (100.0 * static_cast<double>(le) >= p * static_cast<double>(samples.size())) return x;
  }
  return sorted.back();
}

}  // namespace

TEST(NearestRank, MatchesDefinitionOnRandomSamples) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (std::size_t n : {1u, 2u, 3u, 19u, 20u, 21u, 100u, 257u}) {
    std::vector<double> s(n);
    for (auto& x : s) x = u(rng);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {5.0, 50.0, 95.0, 100.0}) EXPECT_EQ(nearest_rank(sorted, p), percentile_by_count(s, p)) << n << " " << p;
  }
}

TEST(NearestRank, SmallHandComputedCases) {
  const std::vector<double> s{15, 20, 35, 40, 50};
  EXPECT_EQ(nearest_rank(s, 5), 15);
  EXPECT_EQ(nearest_rank(s, 30), 20);
  EXPECT_EQ(nearest_rank(s, 40), 20);
  EXPECT_EQ(nearest_rank(s, 50), 35);
  EXPECT_EQ(nearest_rank(s, 100), 50);
  EXPECT_THROW(nearest_rank({}, 50), std::invalid_argument);
}

TEST(DriftReport, SamePrecisionGivesZeroDrift) {
  const auto el = catalogue(25);
  const auto rep = drift_report<double, double>(el, 2.0, 240.0, std::size_t{2});
  ASSERT_EQ(rep.rows.size(), 13u);  // 0, 240, ..., 2880 minutes
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.p5_km, 0.0);
    EXPECT_EQ(r.p95_km, 0.0);
    EXPECT_EQ(r.p95_kms, 0.0);
  }
}

TEST(DriftReport, RowsMatchDirectComputation) {
  const auto el = catalogue(30);
  const auto rep = drift_report(el, 1.0, 360.0, std::size_t{3});
  ASSERT_EQ(rep.grid_size, 5u);
  for (std::size_t j = 0; j < rep.rows.size(); ++j) {
    const double t = 360.0 * static_cast<double>(j);
    std::vector<double> dr, dv;
    for (const auto& e : el) {
      const auto hi = sgp4_propagate(sgp4_init<double>(e, wgs72()), t);
      const auto lo = sgp4_propagate(sgp4_init<float>(e, wgs72()), static_cast<float>(t));
      if (hi.error_code != ErrorCode::ok || lo.error_code != ErrorCode::ok) continue;
      double r2 = 0, v2 = 0;
      for (int a = 0; a < 3; ++a) {
        r2 += std::pow(static_cast<double>(lo.r[a]) - hi.r[a], 2);
        v2 += std::pow(static_cast<double>(lo.v[a]) - hi.v[a], 2);
      }
      dr.push_back(std::sqrt(r2));
      dv.push_back(std::sqrt(v2));
    }
    const auto& row = rep.rows[j];
    EXPECT_DOUBLE_EQ(row.day, t / 1440.0);
    EXPECT_EQ(row.samples, dr.size());
    EXPECT_EQ(row.p5_km, percentile_by_count(dr, 5));
    EXPECT_EQ(row.p50_km, percentile_by_count(dr, 50));
    EXPECT_EQ(row.p95_km, percentile_by_count(dr, 95));
    EXPECT_EQ(row.p50_kms, percentile_by_count(dv, 50));
    EXPECT_LE(row.p5_km, row.p50_km);
    EXPECT_LE(row.p50_km, row.p95_km);
  }
}

TEST(DriftReport, HeuristicIsOneKilometrePerDay) {
  const auto rep = drift_report(catalogue(5), 3.0, 720.0, std::size_t{1});
  for (const auto& r : rep.rows) EXPECT_DOUBLE_EQ(r.heuristic_km, r.day);
  EXPECT_DOUBLE_EQ(rep.rows.back().heuristic_km, 3.0);
}

TEST(DriftReport, ErroredCellsAreExcludedAndCounted) {
  auto el = catalogue(6);
  el[2].ecco = 1.5;  // fails at init: every cell excluded
  const std::size_t grid = 9;
  const auto rep = drift_report(el, 1.0, 180.0, std::size_t{2});
  ASSERT_EQ(rep.grid_size, grid);
  EXPECT_EQ(rep.corpus_size, 6u);
  EXPECT_EQ(rep.excluded_cells, grid);
  EXPECT_EQ(rep.excluded_satellites, 1u);
  EXPECT_EQ(rep.included_cells, 5 * grid);
  for (const auto& r : rep.rows) EXPECT_EQ(r.samples, 5u);
}

TEST(DriftReport, AllCellsExcludedIsAnError) {
  auto el = catalogue(2);
  for (auto& e : el) e.ecco = 1.2;
  EXPECT_THROW(drift_report(el, 1.0, 90.0, std::size_t{1}), EmptyReportError);
  EXPECT_THROW(drift_report(std::span<const MeanElements>{}, 1.0, 90.0, std::size_t{1}), std::invalid_argument);
}

TEST(DriftReport, SinglePrecisionDriftIsSmallButNonzero) {
  const auto rep = drift_report(catalogue(100), 14.0, 90.0, std::size_t{2});
  EXPECT_GT(rep.rows.back().p50_km, 0.0);
  EXPECT_LT(rep.rows.front().p50_km, 0.05);
  EXPECT_LT(rep.rows.back().p50_km, rep.rows.back().heuristic_km);
}

TEST(ReportCsv, RoundTrip) {
  const auto rep = drift_report(catalogue(10), 1.0, 480.0, std::size_t{1});
  const std::string text = emit_report_csv(rep);
  EXPECT_EQ(text.substr(0, text.find('\n')), kReportCsvHeader);
  const auto rows = parse_report_csv(text);
  ASSERT_EQ(rows.size(), rep.rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k].day, rep.rows[k].day, 1e-8);
    EXPECT_NEAR(rows[k].p50_km, rep.rows[k].p50_km, 1e-8 * rep.rows[k].p50_km + 1e-300);
    EXPECT_NEAR(rows[k].p95_kms, rep.rows[k].p95_kms, 1e-8 * rep.rows[k].p95_kms + 1e-300);
    EXPECT_NEAR(rows[k].heuristic_km, rep.rows[k].heuristic_km, 1e-8);
  }
}

TEST(ReportCsv, EmptyReportIsHeaderOnly) {
  const PrecisionReport empty;
  EXPECT_EQ(emit_report_csv(empty), std::string(kReportCsvHeader) + "\n");
  EXPECT_TRUE(parse_report_csv(emit_report_csv(empty)).empty());
  EXPECT_THROW(parse_report_csv("nope\n"), std::runtime_error);
}
