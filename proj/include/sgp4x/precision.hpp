#pragma once

// Single- versus double-precision drift over a time grid.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgp4x/batch.hpp"

namespace sgp4x {

struct DriftRow {
  double day = 0.0;
  double p5_km = 0.0, p50_km = 0.0, p95_km = 0.0;
  double p5_kms = 0.0, p50_kms = 0.0, p95_kms = 0.0;
  double heuristic_km = 0.0;
  std::size_t samples = 0;
};

struct PrecisionReport {
  std::vector<DriftRow> rows;
  std::size_t corpus_size = 0;
  std::size_t grid_size = 0;
  std::size_t included_cells = 0;
  std::size_t excluded_cells = 0;    // cells with an error in either precision
  std::size_t excluded_satellites = 0;  // satellites with at least one excluded cell
};

class EmptyReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nearest-rank percentile: the smallest sample such that at least p percent
/// of the samples are less than or equal to it. `sorted` must be ascending
/// and non-empty.
inline double nearest_rank(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("nearest_rank: no samples");
  const double r = std::ceil(p / 100.0 * static_cast<double>(sorted.size()));
  const std::size_t rank = std::clamp<std::size_t>(static_cast<std::size_t>(r), 1, sorted.size());
  return sorted[rank - 1];
}

/// Reference line for the physical error growth of a TLE, 1 km per day.
inline double heuristic_error_km(double day) { return 1.0 * day; }

/// Propagates `corpus` at precision Low and Hi on the grid 0, step, ... up to
/// horizon (inclusive), times given as minutes since each satellite's epoch.
/// The Hi result is treated as truth.
template <class Low = float, class Hi = double>
PrecisionReport drift_report(std::span<const MeanElements> corpus, double horizon_days, double step_minutes,
                             WorkerPool& pool, const GravityModel& grav = wgs72()) {
  if (corpus.empty()) throw std::invalid_argument("drift_report: empty corpus");
  if (!(horizon_days > 0.0) || !(step_minutes > 0.0))
    throw std::invalid_argument("drift_report: horizon and step must be positive");

  std::vector<Hi> t_hi;
  const double horizon_min = horizon_days * 1440.0;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * step_minutes;
    if (t > horizon_min + 1e-9) break;
    t_hi.push_back(static_cast<Hi>(t));
  }
  std::vector<Low> t_lo(t_hi.begin(), t_hi.end());

  const auto hi = propagate_batch(make_batch<Hi>(corpus, grav), std::span<const Hi>(t_hi), pool);
  const auto lo = propagate_batch(make_batch<Low>(corpus, grav), std::span<const Low>(t_lo), pool);

  PrecisionReport rep;
  rep.corpus_size = corpus.size();
  rep.grid_size = t_hi.size();
  std::vector<bool> sat_excluded(corpus.size(), false);
  std::vector<double> dr, dv;
  for (std::size_t j = 0; j < t_hi.size(); ++j) {
    dr.clear();
    dv.clear();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const std::size_t k = i * hi.m + j;
      if (hi.error[k] != 0 || lo.error[k] != 0) {
        ++rep.excluded_cells;
        sat_excluded[i] = true;
        continue;
      }
      double r2 = 0.0, v2 = 0.0;
      for (std::size_t a = 0; a < 3; ++a) {
        const double er = static_cast<double>(lo.planes[a][k]) - static_cast<double>(hi.planes[a][k]);
        const double ev = static_cast<double>(lo.planes[3 + a][k]) - static_cast<double>(hi.planes[3 + a][k]);
        r2 += er * er;
        v2 += ev * ev;
      }
      dr.push_back(std::sqrt(r2));
      dv.push_back(std::sqrt(v2));
    }
    rep.included_cells += dr.size();
    DriftRow row;
    row.day = static_cast<double>(t_hi[j]) / 1440.0;
    row.heuristic_km = heuristic_error_km(row.day);
    row.samples = dr.size();
    if (dr.empty()) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.p5_km = row.p50_km = row.p95_km = row.p5_kms = row.p50_kms = row.p95_kms = nan;
    } else {
      std::sort(dr.begin(), dr.end());
      std::sort(dv.begin(), dv.end());
      row.p5_km = nearest_rank(dr, 5);
      row.p50_km = nearest_rank(dr, 50);
      row.p95_km = nearest_rank(dr, 95);
      row.p5_kms = nearest_rank(dv, 5);
      row.p50_kms = nearest_rank(dv, 50);
      row.p95_kms = nearest_rank(dv, 95);
    }
    rep.rows.push_back(row);
  }
  rep.excluded_satellites = static_cast<std::size_t>(std::count(sat_excluded.begin(), sat_excluded.end(), true));
  if (rep.included_cells == 0) throw EmptyReportError("drift_report: every cell was excluded by an error code");
  return rep;
}

template <class Low = float, class Hi = double>
PrecisionReport drift_report(std::span<const MeanElements> corpus, double horizon_days, double step_minutes,
                             std::size_t workers = default_worker_count()) {
  WorkerPool pool(workers);
  return drift_report<Low, Hi>(corpus, horizon_days, step_minutes, pool);
}

inline constexpr const char* kReportCsvHeader = "day,p5_km,p50_km,p95_km,p5_kms,p50_kms,p95_kms,heuristic_km";

inline std::string emit_report_csv(const PrecisionReport& report) {
  std::string out = kReportCsvHeader;
  out += '\n';
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", r.day, r.p5_km, r.p50_km, r.p95_km,
                  r.p5_kms, r.p50_kms, r.p95_kms, r.heuristic_km);
    out += buf;
  }
  return out;
}

/// Reads the rows written by emit_report_csv.
inline std::vector<DriftRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kReportCsvHeader) throw std::runtime_error("report CSV: bad header");
  std::vector<DriftRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DriftRow r;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 8) throw std::runtime_error("report CSV: expected 8 columns");
    r.day = v[0];
    r.p5_km = v[1];
    r.p50_km = v[2];
    r.p95_km = v[3];
    r.p5_kms = v[4];
    r.p50_kms = v[5];
    r.p95_kms = v[6];
    r.heuristic_km = v[7];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace sgp4x
