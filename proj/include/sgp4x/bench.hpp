#pragma once

// Timing protocol: one untimed warm-up run; iterations doubled from 1 until a
// trial takes longer than the threshold; then five trials at that count. The
// reported time is the smallest trial divided by the iteration count. If any
// of the five trials comes in under the threshold the count is doubled again
// and the trials repeated, so every record satisfies
// iterations * min_time_s >= threshold.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <new>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgp4x/batch.hpp"

namespace sgp4x {

struct BenchRecord {
  std::string label;
  std::string axis;  // "satellites", "times" or "" for a single task
  std::size_t n = 0;
  std::size_t m = 0;
  int precision = 64;
  std::size_t workers = 1;
  std::uint64_t iterations = 0;
  int trials = 0;
  double min_time_s = 0.0;   // per single run
  double mean_time_s = 0.0;  // per single run, over the reported trials
  double throughput_cells_per_s = 0.0;
  std::uint64_t executions = 0;  // every call of the task, warm-up included

  std::size_t total_cells() const noexcept { return n * m; }
};

struct TimingOptions {
  double threshold_s = 0.2;
  int trials = 5;
  std::uint64_t max_iterations = std::uint64_t{1} << 40;
};

/// Raised when the task throws. `trial` is the zero-based index among the
/// timed trials, -1 for the warm-up and -2 during iteration calibration.
class BenchError : public std::runtime_error {
 public:
  BenchError(int trial, const std::string& what)
      : std::runtime_error("benchmark task failed (trial " + std::to_string(trial) + "): " + what), trial_(trial) {}
  int trial() const noexcept { return trial_; }

 private:
  int trial_;
};

namespace detail {

inline double run_timed(const std::function<void()>& task, std::uint64_t iterations, int trial,
                        std::uint64_t& executions) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  try {
    for (std::uint64_t k = 0; k < iterations; ++k) {
      task();
      ++executions;
    }
  } catch (const std::exception& e) {
    throw BenchError(trial, e.what());
  }
  return std::chrono::duration<double>(clock::now() - t0).count();
}

}  // namespace detail

inline BenchRecord time_task(const std::string& label, const std::function<void()>& task,
                             const TimingOptions& opt = {}) {
  BenchRecord rec;
  rec.label = label;
  rec.trials = opt.trials;

  try {
    task();
    ++rec.executions;
  } catch (const std::exception& e) {
    throw BenchError(-1, e.what());
  }

  std::uint64_t iterations = 1;
  while (detail::run_timed(task, iterations, -2, rec.executions) <= opt.threshold_s &&
         iterations < opt.max_iterations)
    iterations *= 2;

  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int t = 0; t < opt.trials; ++t) {
      const double elapsed = detail::run_timed(task, iterations, t, rec.executions);
      best = std::min(best, elapsed);
      sum += elapsed;
    }
    if (best >= opt.threshold_s || iterations >= opt.max_iterations) {
      rec.iterations = iterations;
      rec.min_time_s = best / static_cast<double>(iterations);
      rec.mean_time_s = sum / opt.trials / static_cast<double>(iterations);
      return rec;
    }
    iterations *= 2;
  }
}

enum class SweepAxis { satellites, times };

inline const char* to_string(SweepAxis a) { return a == SweepAxis::satellites ? "satellites" : "times"; }

struct SweepOptions {
  int precision = 64;
  std::size_t workers = default_worker_count();
  bool propagate_only = false;  // exclude initialization from the timed unit
  TimingOptions timing;
};

struct SweepResult {
  std::vector<BenchRecord> records;
  bool truncated = false;  // a size could not be allocated; records end before it
  std::size_t failed_size = 0;
};

/// `n` satellites drawn cyclically from `base`, the way a larger catalogue is
/// built by repeating a smaller one.
inline std::vector<MeanElements> tile_catalogue(std::span<const MeanElements> base, std::size_t n) {
  if (base.empty()) throw std::invalid_argument("tile_catalogue: empty base catalogue");
  std::vector<MeanElements> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(base[i % base.size()]);
  return out;
}

/// `m` times evenly spaced over one day, starting at the epoch.
template <class T>
std::vector<T> uniform_times(std::size_t m) {
  std::vector<T> t(m);
  for (std::size_t j = 0; j < m; ++j) t[j] = static_cast<T>(1440.0 * static_cast<double>(j) / static_cast<double>(m));
  return t;
}

namespace detail {

template <class T>
BenchRecord bench_batch(const std::string& label, std::span<const MeanElements> elems, std::size_t m,
                        const SweepOptions& opt, WorkerPool& pool) {
  const std::vector<T> times = uniform_times<T>(m);
  const GravityModel grav = wgs72();
  // The output grid is allocated once, outside the timed region, and
  // overwritten by every run.
  BatchResult<T> out;
  out.allocate(elems.size(), m);
  std::function<void()> task;
  SatBatch<T> pre;
  if (opt.propagate_only) {
    pre = make_batch<T>(elems, grav);
    task = [&] { propagate_batch_into(pre, std::span<const T>(times), pool, out); };
  } else {
    task = [&] { propagate_batch_into(make_batch<T>(elems, grav), std::span<const T>(times), pool, out); };
  }
  BenchRecord rec = time_task(label, task, opt.timing);
  rec.n = elems.size();
  rec.m = m;
  rec.precision = static_cast<int>(sizeof(T) * 8);
  rec.workers = pool.size();
  rec.throughput_cells_per_s = static_cast<double>(rec.total_cells()) / rec.min_time_s;
  return rec;
}

}  // namespace detail

/// Times the batch pipeline with one axis swept over `sizes` and the other held
/// at `fixed_other`.
inline SweepResult scaling_sweep(SweepAxis axis, const std::vector<std::size_t>& sizes, std::size_t fixed_other,
                                 std::span<const MeanElements> base, const SweepOptions& opt = {}) {
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (sizes[k] <= sizes[k - 1]) throw std::invalid_argument("scaling_sweep: sizes must be strictly increasing");
  if (opt.precision != 32 && opt.precision != 64) throw std::invalid_argument("scaling_sweep: precision must be 32 or 64");
  WorkerPool pool(opt.workers);
  SweepResult result;
  for (std::size_t size : sizes) {
    const std::size_t n = axis == SweepAxis::satellites ? size : fixed_other;
    const std::size_t m = axis == SweepAxis::satellites ? fixed_other : size;
    const std::string label = std::string("batch_") + (opt.propagate_only ? "propagate" : "pipeline");
    try {
      const auto elems = tile_catalogue(base, n);
      BenchRecord rec = opt.precision == 32 ? detail::bench_batch<float>(label, elems, m, opt, pool)
                                            : detail::bench_batch<double>(label, elems, m, opt, pool);
      rec.axis = to_string(axis);
      result.records.push_back(std::move(rec));
    } catch (const CapacityError&) {
      result.truncated = true;
      result.failed_size = size;
      break;
    } catch (const std::bad_alloc&) {
      result.truncated = true;
      result.failed_size = size;
      break;
    } catch (const std::length_error&) {
      result.truncated = true;
      result.failed_size = size;
      break;
    }
  }
  return result;
}

inline constexpr const char* kBenchCsvHeader =
    "label,axis,N,M,precision,workers,iterations,trials,min_time_s,throughput_cells_per_s";

inline std::string emit_bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = kBenchCsvHeader;
  out += '\n';
  char buf[512];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%zu,%d,%zu,%llu,%d,%.17g,%.17g\n", r.label.c_str(), r.axis.c_str(), r.n,
                  r.m, r.precision, r.workers, static_cast<unsigned long long>(r.iterations), r.trials, r.min_time_s,
                  r.throughput_cells_per_s);
    out += buf;
  }
  return out;
}

/// Reads the columns written by emit_bench_csv.
inline std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kBenchCsvHeader) throw std::runtime_error("bench CSV: bad header");
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> c;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) c.push_back(cell);
    if (line.back() == ',') c.emplace_back();
    if (c.size() != 10) throw std::runtime_error("bench CSV: expected 10 columns");
    BenchRecord r;
    r.label = c[0];
    r.axis = c[1];
    r.n = std::stoull(c[2]);
    r.m = std::stoull(c[3]);
    r.precision = std::stoi(c[4]);
    r.workers = std::stoull(c[5]);
    r.iterations = std::stoull(c[6]);
    r.trials = std::stoi(c[7]);
    r.min_time_s = std::stod(c[8]);
    r.throughput_cells_per_s = std::stod(c[9]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sgp4x
