#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sgp4x/jacobian.hpp"
#include "test_support.hpp"

using namespace sgp4x;

namespace {

std::vector<MeanElements> near_earth_elements() {
  std::vector<MeanElements> out;
  const auto& ids = testsupport::near_earth_cases();
  for (const auto& r : testsupport::load_tles("SGP4-VER.TLE"))
    if (std::find(ids.begin(), ids.end(), r.tle.catalog_number) != ids.end()) out.push_back(tle_to_elements(r.tle));
  return out;
}

double column_norm(const StateJacobian& j, std::size_t k, std::size_t block) {
  double s = 0;
  for (std::size_t a = 0; a < 3; ++a) s += j.d[3 * block + a][k] * j.d[3 * block + a][k];
  return std::sqrt(s);
}

}  // namespace

TEST(Jacobian, StateMatchesScalarPropagation) {
  for (const auto& e : near_earth_elements()) {
    const auto s = sgp4_propagate(sgp4_init<double>(e, wgs72()), 360.0);
    const auto j = jacobian_state_wrt_elements(e, wgs72(), 360.0);
    ASSERT_EQ(j.error_code, s.error_code);
    if (!j.valid) continue;
    for (int a = 0; a < 3; ++a) {
      EXPECT_EQ(j.state.r[a], s.r[a]);
      EXPECT_EQ(j.state.v[a], s.v[a]);
    }
  }
}

TEST(Jacobian, AgreesWithFiniteDifferences) {
  const auto corpus = near_earth_elements();
  std::size_t valid = 0;
  for (const auto& e : corpus) {
    for (double t : {0.0, 60.0, 1440.0}) {
      const auto ad = jacobian_state_wrt_elements(e, wgs72(), t);
      const auto fd = finite_difference_jacobian(e, wgs72(), t);
      ASSERT_EQ(ad.valid, fd.valid);
      if (!ad.valid) continue;
      EXPECT_LT(max_relative_error(ad, fd), 1e-4) << e.no_kozai << " t=" << t;
      ++valid;
    }
  }
  EXPECT_GE(valid, 20u);
}

TEST(Jacobian, FiniteDifferenceConvergesQuadratically) {
  // With no absolute floors, halving a 1e-3 relative step cuts the central
  // difference error by about four. The bstar column is left out: the state
  // is nearly linear in bstar, so its error is rounding, not truncation.
  const std::array<double, kElementCount> no_floor{};
  const auto orbital_error = [](StateJacobian a, StateJacobian b) {
    for (auto& row : a.d) row[6] = 0.0;
    for (auto& row : b.d) row[6] = 0.0;
    return max_relative_error(a, b);
  };
  for (const auto& e : near_earth_elements()) {
    const auto ad = jacobian_state_wrt_elements(e, wgs72(), 60.0);
    if (!ad.valid) continue;
    const double e1 = orbital_error(finite_difference_jacobian(e, wgs72(), 60.0, 1e-3, no_floor), ad);
    const double e2 = orbital_error(finite_difference_jacobian(e, wgs72(), 60.0, 5e-4, no_floor), ad);
    const double ratio = e1 / e2;
    EXPECT_GT(ratio, 3.0) << e.no_kozai;
    EXPECT_LT(ratio, 5.0) << e.no_kozai;
  }
}

TEST(Jacobian, MeanAnomalyColumnAtEpoch) {
  // Oracle: central differences on mo alone with a step chosen for t = 0.
  for (const auto& e : near_earth_elements()) {
    const auto ad = jacobian_state_wrt_elements(e, wgs72(), 0.0);
    if (!ad.valid) continue;
    const double h = 1e-6;
    auto ep = e, em = e;
    ep.mo += h;
    em.mo -= h;
    const auto sp = sgp4_propagate(sgp4_init<double>(ep, wgs72()), 0.0);
    const auto sm = sgp4_propagate(sgp4_init<double>(em, wgs72()), 0.0);
    for (int a = 0; a < 3; ++a) {
      const double dr = (sp.r[a] - sm.r[a]) / (2 * h);
      const double dv = (sp.v[a] - sm.v[a]) / (2 * h);
      EXPECT_NEAR(ad.d[a][5], dr, 1e-5 * column_norm(ad, 5, 0));
      EXPECT_NEAR(ad.d[3 + a][5], dv, 1e-5 * column_norm(ad, 5, 1));
    }
  }
}

TEST(Jacobian, DragHasNoEffectAtEpoch) {
  for (const auto& e : near_earth_elements()) {
    const auto ad = jacobian_state_wrt_elements(e, wgs72(), 0.0);
    if (!ad.valid) continue;
    for (std::size_t row = 0; row < 6; ++row) EXPECT_LT(std::abs(ad.d[row][6]), 1e-9) << e.no_kozai << " " << row;
    const auto later = jacobian_state_wrt_elements(e, wgs72(), 1440.0);
    if (later.valid) {
      EXPECT_GT(column_norm(later, 6, 0), 1.0);
    }
  }
}

TEST(Jacobian, NodeColumnIsRotationAboutPole) {
  for (const auto& e : near_earth_elements()) {
    for (double t : {0.0, 300.0}) {
      const auto j = jacobian_state_wrt_elements(e, wgs72(), t);
      if (!j.valid) continue;
      const auto& r = j.state.r;
      const auto& v = j.state.v;
      EXPECT_NEAR(j.d[0][3], -r[1], 1e-9 * std::abs(r[1]) + 1e-9);
      EXPECT_NEAR(j.d[1][3], r[0], 1e-9 * std::abs(r[0]) + 1e-9);
      EXPECT_NEAR(j.d[2][3], 0.0, 1e-9);
      EXPECT_NEAR(j.d[3][3], -v[1], 1e-12 * std::abs(v[1]) + 1e-12);
      EXPECT_NEAR(j.d[4][3], v[0], 1e-12 * std::abs(v[0]) + 1e-12);
      EXPECT_NEAR(j.d[5][3], 0.0, 1e-12);
    }
  }
}

TEST(Jacobian, InvalidWhenInitFails) {
  MeanElements e{};
  e.no_kozai = 15.0 / (1440.0 / (2 * std::numbers::pi));
  e.ecco = 1.2;
  const auto j = jacobian_state_wrt_elements(e, wgs72(), 0.0);
  EXPECT_FALSE(j.valid);
  EXPECT_EQ(j.error_code, ErrorCode::eccentricity_out_of_range);
  EXPECT_FALSE(finite_difference_jacobian(e, wgs72(), 0.0).valid);
}

TEST(Jacobian, FloorWarningForZeroElements) {
  auto e = near_earth_elements().front();
  e.ecco = 0.0;
  e.argpo = 0.0;
  const auto fd = finite_difference_jacobian(e, wgs72(), 10.0);
  ASSERT_EQ(fd.warnings.size(), 2u);
  EXPECT_NE(fd.warnings[0].find("ecco"), std::string::npos);
  EXPECT_NE(fd.warnings[1].find("argpo"), std::string::npos);
  EXPECT_TRUE(jacobian_state_wrt_elements(e, wgs72(), 10.0).warnings.empty());
}

TEST(Jacobian, BatchMatchesScalar) {
  const auto corpus = near_earth_elements();
  const std::vector<double> times{0.0, 45.0, 720.0};
  for (std::size_t workers : {1u, 3u}) {
    WorkerPool pool(workers);
    const auto batch = jacobian_batch(corpus, wgs72(), times, pool);
    ASSERT_EQ(batch.size(), corpus.size() * times.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (std::size_t j = 0; j < times.size(); ++j) {
        const auto s = jacobian_state_wrt_elements(corpus[i], wgs72(), times[j]);
        const auto& b = batch[i * times.size() + j];
        EXPECT_EQ(b.error_code, s.error_code);
        EXPECT_EQ(b.d, s.d);
      }
    }
  }
}
