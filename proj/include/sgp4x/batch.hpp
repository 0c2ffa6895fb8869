#pragma once

// Two-axis batch propagation: N satellites by M times.
//
// Satellites are held as structure-of-arrays planes of their initialization
// constants. Output cells are addressed by a flat index i*M + j and split into
// contiguous ranges, one per worker. Each cell is produced by the same
// sgp4_propagate call a scalar loop would make, so the grid is bitwise equal to
// that loop whatever the worker count.
//
// Satellites whose initialization failed never reach the kernel: their cells
// hold NaN values and the init error code.

#include <algorithm>
#include <array>
#include <bit>
#include <condition_variable>
#include <cstdint>
#include <cstring>
#include <exception>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <new>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "sgp4x/sgp4.hpp"

namespace sgp4x {

// ---------------------------------------------------------------------------
// Satellite batch (structure of arrays)

template <class T>
struct SatBatch {
  static constexpr std::size_t field_count = satinit_scalar_fields<T>.size();

  std::array<std::vector<T>, field_count> planes;
  std::vector<std::uint8_t> isimp;
  std::vector<ErrorCode> init_error;

  std::size_t size() const noexcept { return init_error.size(); }

  void push_back(const SatInit<T>& s) {
    for (std::size_t f = 0; f < field_count; ++f) planes[f].push_back(s.*satinit_scalar_fields<T>[f]);
    isimp.push_back(s.isimp ? 1 : 0);
    init_error.push_back(s.error_code_at_init);
  }

  /// Reassembles satellite `i` as a SatInit. Exact copies, no arithmetic.
  SatInit<T> at(std::size_t i) const {
    SatInit<T> s;
    for (std::size_t f = 0; f < field_count; ++f) s.*satinit_scalar_fields<T>[f] = planes[f][i];
    s.isimp = isimp[i] != 0;
    s.error_code_at_init = init_error[i];
    return s;
  }
};

template <class T>
SatBatch<T> make_batch(std::span<const SatInit<T>> inits) {
  SatBatch<T> b;
  for (auto& p : b.planes) p.reserve(inits.size());
  for (const auto& s : inits) b.push_back(s);
  return b;
}

template <class T>
SatBatch<T> make_batch(std::span<const MeanElements> elements, const GravityModel& grav) {
  SatBatch<T> b;
  for (auto& p : b.planes) p.reserve(elements.size());
  for (const auto& e : elements) b.push_back(sgp4_init<T>(e, grav));
  return b;
}

// ---------------------------------------------------------------------------
// Output grid

/// Raised when the output grid cannot be allocated.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t n, std::size_t m, std::size_t bytes)
      : std::runtime_error("cannot allocate " + std::to_string(n) + " x " + std::to_string(m) + " output grid (" +
                           std::to_string(bytes) + " bytes)"),
        n_(n), m_(m), bytes_(bytes) {}
  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return m_; }
  std::size_t requested_bytes() const noexcept { return bytes_; }

 private:
  std::size_t n_, m_, bytes_;
};

/// Plane order of the six value planes: rx, ry, rz, vx, vy, vz.
inline constexpr std::size_t kValuePlanes = 6;

template <class T>
struct BatchResult {
  std::size_t n = 0;
  std::size_t m = 0;
  std::array<std::vector<T>, kValuePlanes> planes;  // row-major n x m each
  std::vector<std::int32_t> error;

  static std::size_t bytes_for(std::size_t n, std::size_t m) {
    const std::size_t per_cell = kValuePlanes * sizeof(T) + sizeof(std::int32_t);
    if (m != 0 && n > std::numeric_limits<std::size_t>::max() / m) return std::numeric_limits<std::size_t>::max();
    const std::size_t cells = n * m;
    if (cells > std::numeric_limits<std::size_t>::max() / per_cell) return std::numeric_limits<std::size_t>::max();
    return cells * per_cell;
  }

  /// Sizes every plane for n x m cells; throws CapacityError on failure.
  void allocate(std::size_t rows, std::size_t cols) {
    const std::size_t bytes = bytes_for(rows, cols);
    if (bytes == std::numeric_limits<std::size_t>::max()) throw CapacityError(rows, cols, bytes);
    try {
      for (auto& p : planes) p.assign(rows * cols, T{});
      error.assign(rows * cols, 0);
    } catch (const std::bad_alloc&) {
      for (auto& p : planes) std::vector<T>().swap(p);
      std::vector<std::int32_t>().swap(error);
      throw CapacityError(rows, cols, bytes);
    } catch (const std::length_error&) {
      throw CapacityError(rows, cols, bytes);
    }
    n = rows;
    m = cols;
  }

  StateVector<T> cell(std::size_t i, std::size_t j) const {
    const std::size_t k = i * m + j;
    StateVector<T> s;
    s.r = {planes[0][k], planes[1][k], planes[2][k]};
    s.v = {planes[3][k], planes[4][k], planes[5][k]};
    s.error_code = static_cast<ErrorCode>(error[k]);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Scheduling

/// Half-open range of flat cell indices, cell (i, j) being i*M + j.
struct CellRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const CellRange&, const CellRange&) = default;
};

/// Splits the N*M cells into at most `workers` contiguous ranges whose sizes
/// differ by at most one, larger ranges first. Empty ranges are omitted.
inline std::vector<CellRange> partition_work(std::size_t n, std::size_t m, std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("partition_work: workers must be at least 1");
  const std::size_t total = n * m;
  std::vector<CellRange> out;
  if (total == 0) return out;
  const std::size_t parts = std::min(workers, total);
  const std::size_t base = total / parts;
  const std::size_t extra = total % parts;
  out.reserve(parts);
  std::size_t at = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t len = base + (p < extra ? 1 : 0);
    out.push_back({at, at + len});
    at += len;
  }
  return out;
}

inline std::size_t default_worker_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

/// A fixed set of threads that run indexed tasks. Task k always runs on
/// thread k % size(); the calling thread acts as thread 0.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers = default_worker_count()) : size_(std::max<std::size_t>(workers, 1)) {
    threads_.reserve(size_ - 1);
    for (std::size_t t = 1; t < size_; ++t) threads_.emplace_back([this, t] { loop(t); });
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& th : threads_) th.join();
  }

  std::size_t size() const noexcept { return size_; }

  /// Runs fn(k) for every k in [0, count) and waits. The first exception
  /// thrown by any task is rethrown here.
  void run(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (size_ == 1) {
      for (std::size_t k = 0; k < count; ++k) fn(k);
      return;
    }
    {
      std::lock_guard lock(mutex_);
      task_ = &fn;
      count_ = count;
      pending_ = size_ - 1;
      error_ = nullptr;
      ++generation_;
    }
    wake_.notify_all();
    work(0);
    std::unique_lock lock(mutex_);
    done_.wait(lock, [this] { return pending_ == 0; });
    task_ = nullptr;
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
  }

 private:
  void work(std::size_t t) {
    for (std::size_t k = t; k < count_; k += size_) {
      try {
        (*task_)(k);
      } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) error_ = std::current_exception();
      }
    }
  }

  void loop(std::size_t t) {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock lock(mutex_);
        wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      work(t);
      {
        std::lock_guard lock(mutex_);
        --pending_;
      }
      done_.notify_one();
    }
  }

  std::size_t size_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t count_ = 0;
  std::size_t pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

// ---------------------------------------------------------------------------
// Propagation

namespace detail {

/// Writes cells [range) of a rows x cols region whose cell (r, c) maps to
/// satellite row0 + r and time col0 + c. Returns how many cells went through
/// the kernel.
template <class T>
std::size_t fill_cells(const SatBatch<T>& sats, std::span<const T> times, std::size_t row0, std::size_t col0,
                       std::size_t cols, CellRange range, std::array<T*, kValuePlanes> out,
                       std::int32_t* err) {
  const T nan = T(std::numeric_limits<real_t<T>>::quiet_NaN());
  std::size_t propagated = 0;
  std::size_t k = range.begin;
  while (k < range.end) {
    const std::size_t r = k / cols;
    const std::size_t row_end = std::min(range.end, (r + 1) * cols);
    const std::size_t sat = row0 + r;
    const ErrorCode init_code = sats.init_error[sat];
    if (init_code != ErrorCode::ok) {
      for (; k < row_end; ++k) {
        for (auto* p : out) p[k] = nan;
        err[k] = static_cast<std::int32_t>(init_code);
      }
      continue;
    }
    const SatInit<T> s = sats.at(sat);
    for (; k < row_end; ++k) {
      const StateVector<T> sv = sgp4_propagate(s, times[col0 + k % cols]);
      out[0][k] = sv.r[0];
      out[1][k] = sv.r[1];
      out[2][k] = sv.r[2];
      out[3][k] = sv.v[0];
      out[4][k] = sv.v[1];
      out[5][k] = sv.v[2];
      err[k] = static_cast<std::int32_t>(sv.error_code);
      ++propagated;
    }
  }
  return propagated;
}

}  // namespace detail

/// Full N x M grid written into `res`, which is resized only when its shape
/// differs, so repeated calls of one shape reuse the same storage. Throws
/// CapacityError if the grid cannot be allocated.
template <class T>
void propagate_batch_into(const SatBatch<T>& sats, std::span<const T> times, WorkerPool& pool, BatchResult<T>& res) {
  if (sats.size() == 0 || times.empty()) throw std::invalid_argument("propagate_batch: N and M must be at least 1");
  if (res.n != sats.size() || res.m != times.size()) res.allocate(sats.size(), times.size());
  const auto ranges = partition_work(res.n, res.m, pool.size());
  std::array<T*, kValuePlanes> out{};
  for (std::size_t p = 0; p < kValuePlanes; ++p) out[p] = res.planes[p].data();
  pool.run(ranges.size(), [&](std::size_t w) {
    detail::fill_cells(sats, times, 0, 0, res.m, ranges[w], out, res.error.data());
  });
}

/// Full N x M grid. Throws CapacityError if the grid cannot be allocated.
template <class T>
BatchResult<T> propagate_batch(const SatBatch<T>& sats, std::span<const T> times, WorkerPool& pool) {
  BatchResult<T> res;
  propagate_batch_into(sats, times, pool, res);
  return res;
}

template <class T>
BatchResult<T> propagate_batch(const SatBatch<T>& sats, std::span<const T> times,
                               std::size_t workers = default_worker_count()) {
  WorkerPool pool(workers);
  return propagate_batch(sats, times, pool);
}

/// One output tile handed to a streaming sink. Planes are row-major over the
/// tile's rows() x cols() cells.
template <class T>
struct Tile {
  std::size_t row_begin = 0, row_end = 0;
  std::size_t col_begin = 0, col_end = 0;
  std::array<std::span<const T>, kValuePlanes> planes;
  std::span<const std::int32_t> error;

  std::size_t rows() const noexcept { return row_end - row_begin; }
  std::size_t cols() const noexcept { return col_end - col_begin; }
};

struct StreamSummary {
  std::size_t cells_emitted = 0;
  std::size_t nonzero_error_count = 0;
  std::size_t propagated_cells = 0;  // cells that went through the kernel
  std::size_t tiles_completed = 0;
  bool aborted = false;  // the sink reported failure
};

/// Streams the grid tile by tile, tiles in row-major order. Only one tile
/// buffer exists at a time, so auxiliary memory is independent of N*M. The
/// sink returns false to stop the stream; the summary then reports the tiles
/// completed before the failing one.
template <class T, class Sink>
StreamSummary propagate_batch_streamed(const SatBatch<T>& sats, std::span<const T> times, std::size_t tile_rows,
                                       std::size_t tile_cols, Sink&& sink, WorkerPool& pool) {
  if (tile_rows == 0 || tile_cols == 0) throw std::invalid_argument("propagate_batch_streamed: tile dims must be >= 1");
  StreamSummary summary;
  const std::size_t n = sats.size();
  const std::size_t m = times.size();
  if (n == 0 || m == 0) return summary;
  tile_rows = std::min(tile_rows, n);
  tile_cols = std::min(tile_cols, m);
  const std::size_t capacity = tile_rows * tile_cols;
  std::array<std::vector<T>, kValuePlanes> buf;
  std::vector<std::int32_t> err;
  try {
    for (auto& p : buf) p.resize(capacity);
    err.resize(capacity);
  } catch (const std::bad_alloc&) {
    throw CapacityError(tile_rows, tile_cols, BatchResult<T>::bytes_for(tile_rows, tile_cols));
  }
  std::array<T*, kValuePlanes> out{};
  for (std::size_t p = 0; p < kValuePlanes; ++p) out[p] = buf[p].data();
  std::vector<std::size_t> propagated(pool.size(), 0);

  for (std::size_t r0 = 0; r0 < n; r0 += tile_rows) {
    const std::size_t r1 = std::min(n, r0 + tile_rows);
    for (std::size_t c0 = 0; c0 < m; c0 += tile_cols) {
      const std::size_t c1 = std::min(m, c0 + tile_cols);
      const std::size_t rows = r1 - r0;
      const std::size_t cols = c1 - c0;
      const auto ranges = partition_work(rows, cols, pool.size());
      std::fill(propagated.begin(), propagated.end(), 0);
      pool.run(ranges.size(), [&](std::size_t w) {
        propagated[w] = detail::fill_cells(sats, times, r0, c0, cols, ranges[w], out, err.data());
      });
      const std::size_t cells = rows * cols;
      Tile<T> tile{r0, r1, c0, c1, {}, std::span<const std::int32_t>(err.data(), cells)};
      for (std::size_t p = 0; p < kValuePlanes; ++p) tile.planes[p] = std::span<const T>(buf[p].data(), cells);
      for (std::size_t w : propagated) summary.propagated_cells += w;
      if (!sink(static_cast<const Tile<T>&>(tile))) {
        summary.aborted = true;
        return summary;
      }
      summary.cells_emitted += cells;
      summary.nonzero_error_count +=
          static_cast<std::size_t>(std::count_if(tile.error.begin(), tile.error.end(), [](std::int32_t e) { return e != 0; }));
      ++summary.tiles_completed;
    }
  }
  return summary;
}

template <class T, class Sink>
StreamSummary propagate_batch_streamed(const SatBatch<T>& sats, std::span<const T> times, std::size_t tile_rows,
                                       std::size_t tile_cols, Sink&& sink,
                                       std::size_t workers = default_worker_count()) {
  WorkerPool pool(workers);
  return propagate_batch_streamed(sats, times, tile_rows, tile_cols, std::forward<Sink>(sink), pool);
}

// ---------------------------------------------------------------------------
// Binary grid format
//
// 32-byte header, all integers little-endian:
//   bytes  0-3   magic "SGB1"
//   bytes  4-7   uint32 precision in bits (32 or 64)
//   bytes  8-15  uint64 N (satellites, rows)
//   bytes 16-23  uint64 M (times, columns)
//   bytes 24-31  plane order, one byte per plane: 'X' 'Y' 'Z' 'x' 'y' 'z' 'E' 0
//                (upper case position, lower case velocity, E error plane)
// followed by the six value planes (N*M IEEE values each, row-major) and the
// int32 error plane.

inline constexpr std::array<char, 4> kGridMagic{'S', 'G', 'B', '1'};
inline constexpr std::array<char, 8> kGridPlaneOrder{'X', 'Y', 'Z', 'x', 'y', 'z', 'E', '\0'};

struct GridHeader {
  std::uint32_t precision = 64;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::array<char, 8> plane_order = kGridPlaneOrder;
};

namespace detail {

template <class U>
void put_le(std::ostream& os, U value) {
  static_assert(std::is_trivially_copyable_v<U>);
  std::array<char, sizeof(U)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(U));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(U));
}

template <class U>
U get_le(std::istream& is) {
  std::array<char, sizeof(U)> bytes;
  if (!is.read(bytes.data(), sizeof(U))) throw std::runtime_error("truncated SGB1 stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  U value;
  std::memcpy(&value, bytes.data(), sizeof(U));
  return value;
}

template <class U>
void put_plane(std::ostream& os, const std::vector<U>& plane) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(plane.data()), static_cast<std::streamsize>(plane.size() * sizeof(U)));
  } else {
    for (U v : plane) put_le(os, v);
  }
}

template <class U>
void get_plane(std::istream& is, std::vector<U>& plane) {
  if constexpr (std::endian::native == std::endian::little) {
    const auto bytes = static_cast<std::streamsize>(plane.size() * sizeof(U));
    if (!is.read(reinterpret_cast<char*>(plane.data()), bytes)) throw std::runtime_error("truncated SGB1 stream");
  } else {
    for (U& v : plane) v = get_le<U>(is);
  }
}

}  // namespace detail

template <class T>
void write_grid_binary(std::ostream& os, const BatchResult<T>& res) {
  static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>);
  os.write(kGridMagic.data(), 4);
  detail::put_le<std::uint32_t>(os, sizeof(T) * 8);
  detail::put_le<std::uint64_t>(os, res.n);
  detail::put_le<std::uint64_t>(os, res.m);
  os.write(kGridPlaneOrder.data(), 8);
  for (const auto& p : res.planes) detail::put_plane(os, p);
  detail::put_plane(os, res.error);
}

inline GridHeader read_grid_header(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kGridMagic) throw std::runtime_error("not an SGB1 stream");
  GridHeader h;
  h.precision = detail::get_le<std::uint32_t>(is);
  h.n = detail::get_le<std::uint64_t>(is);
  h.m = detail::get_le<std::uint64_t>(is);
  if (!is.read(h.plane_order.data(), 8)) throw std::runtime_error("truncated SGB1 stream");
  if (h.plane_order != kGridPlaneOrder) throw std::runtime_error("unsupported SGB1 plane order");
  return h;
}

template <class T>
BatchResult<T> read_grid_binary(std::istream& is) {
  const GridHeader h = read_grid_header(is);
  if (h.precision != sizeof(T) * 8)
    throw std::runtime_error("SGB1 precision " + std::to_string(h.precision) + " does not match requested type");
  BatchResult<T> res;
  res.allocate(static_cast<std::size_t>(h.n), static_cast<std::size_t>(h.m));
  for (auto& p : res.planes) detail::get_plane(is, p);
  detail::get_plane(is, res.error);
  return res;
}

}  // namespace sgp4x
