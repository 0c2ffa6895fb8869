#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "sgp4x/sgp4x.hpp"

namespace sgp4x::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  return v;
}

struct Config {
  std::string input;
  int precision = 64;
  std::size_t workers = 0;
  bool strict = false;
  std::string format = "csv";
  std::string tsince;
  std::string tsince_list;
  std::string utc_list;
  std::string out = "-";
  std::optional<long long> catalog;

  // precision-report
  double horizon_days = 14.0;
  double step_minutes = 90.0;

  // bench
  std::string axis = "times";
  std::string sizes = "1,10,100";
  std::size_t fixed_other = 1;
  bool propagate_only = false;
  double min_trial_seconds = 0.2;
};

std::size_t default_workers(std::ostream& err) {
  if (const char* env = std::getenv("SGP4_BATCH_WORKERS"); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 1) throw UsageError(std::string("SGP4_BATCH_WORKERS must be a positive integer, got '") + env + "'");
    return static_cast<std::size_t>(v);
  }
  (void)err;
  return default_worker_count();
}

std::vector<TleRecord> load_tles(const Config& cfg, std::ostream& err) {
  std::vector<std::string> warnings;
  std::vector<TleRecord> recs;
  const ParseMode mode = cfg.strict ? ParseMode::strict : ParseMode::lenient;
  if (cfg.input == "-") {
    recs = read_tle_stream(std::cin, mode, &warnings);
  } else {
    std::ifstream in(cfg.input);
    if (!in) throw std::runtime_error("cannot open '" + cfg.input + "'");
    recs = read_tle_stream(in, mode, &warnings);
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (recs.empty()) throw std::runtime_error("no TLE records in '" + cfg.input + "'");
  return recs;
}

const TleRecord& pick_one(const std::vector<TleRecord>& recs, const Config& cfg) {
  if (!cfg.catalog) return recs.front();
  for (const auto& r : recs)
    if (r.tle.catalog_number == *cfg.catalog) return r;
  throw std::runtime_error("catalog number " + std::to_string(*cfg.catalog) + " not found in input");
}

/// Minutes since epoch requested on the command line, for one satellite.
std::vector<double> time_grid(const Config& cfg, const MeanElements& e) {
  int given = !cfg.tsince.empty() + !cfg.tsince_list.empty() + !cfg.utc_list.empty();
  if (given != 1) throw UsageError("exactly one of --tsince, --tsince-list, --utc-list is required");
  if (!cfg.tsince.empty()) return parse_time_range(cfg.tsince);
  if (!cfg.tsince_list.empty()) return parse_time_list(cfg.tsince_list);
  std::vector<double> out;
  std::stringstream ss(cfg.utc_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    MeanElements when;
    detail::parse_iso_epoch(item, when);
    out.push_back(minutes_since_epoch(e, epoch_to_julian(when)));
  }
  if (out.empty()) throw UsageError("empty --utc-list");
  return out;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback, bool binary) {
    if (path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
      if (!*file_) throw std::runtime_error("cannot open output '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw std::runtime_error("write to output failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

template <class T>
const char* value_format() {
  return sizeof(T) == 4 ? "%.9g" : "%.17g";
}

template <class T>
void append_value(std::string& line, T v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, value_format<T>(), static_cast<double>(v));
  line += buf;
}

template <class T>
std::string state_row(double tsince, const StateVector<T>& s) {
  std::string line;
  append_value(line, tsince);
  for (T x : s.r) {
    line += ',';
    append_value(line, x);
  }
  for (T x : s.v) {
    line += ',';
    append_value(line, x);
  }
  line += ',' + std::to_string(static_cast<int>(s.error_code)) + '\n';
  return line;
}

template <class T>
int propagate_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto recs = load_tles(cfg, err);
  const auto& rec = pick_one(recs, cfg);
  const MeanElements e = tle_to_elements(rec.tle);
  const auto times = time_grid(cfg, e);
  const SatInit<T> init = sgp4_init<T>(e, wgs72());
  Output o(cfg.out, out, false);
  o.stream() << "tsince_min,rx,ry,rz,vx,vy,vz,error_code\n";
  for (double t : times) {
    StateVector<T> s;
    if (init.error_code_at_init != ErrorCode::ok) {
      const T nan = std::numeric_limits<T>::quiet_NaN();
      s.r = {nan, nan, nan};
      s.v = {nan, nan, nan};
      s.error_code = init.error_code_at_init;
    } else {
      s = sgp4_propagate(init, static_cast<T>(t));
    }
    o.stream() << state_row(t, s);
  }
  if (init.error_code_at_init != ErrorCode::ok)
    err << "note: satellite " << rec.tle.catalog_number << ": " << to_string(init.error_code_at_init) << '\n';
  o.finish();
  return kSuccess;
}

template <class T>
int batch_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.format != "csv" && cfg.format != "binary") throw UsageError("--format must be csv or binary");
  if (!cfg.utc_list.empty()) throw UsageError("--utc-list applies to propagate only; batch times share one grid");
  const auto recs = load_tles(cfg, err);
  std::vector<MeanElements> elems;
  elems.reserve(recs.size());
  for (const auto& r : recs) elems.push_back(tle_to_elements(r.tle));
  const auto times_d = time_grid(cfg, elems.front());
  std::vector<T> times(times_d.begin(), times_d.end());

  WorkerPool pool(cfg.workers);
  const auto batch = make_batch<T>(std::span<const MeanElements>(elems), wgs72());
  std::size_t rejected = 0;
  for (ErrorCode c : batch.init_error) rejected += c != ErrorCode::ok;
  if (rejected) err << "note: " << rejected << " satellite(s) rejected at initialization\n";
  const auto res = propagate_batch(batch, std::span<const T>(times), pool);

  Output o(cfg.out, out, cfg.format == "binary");
  if (cfg.format == "binary") {
    write_grid_binary(o.stream(), res);
  } else {
    o.stream() << "catalog_number,tsince_min,rx,ry,rz,vx,vy,vz,error_code\n";
    for (std::size_t i = 0; i < res.n; ++i) {
      const std::string prefix = std::to_string(recs[i].tle.catalog_number) + ',';
      for (std::size_t j = 0; j < res.m; ++j) o.stream() << prefix << state_row(times_d[j], res.cell(i, j));
    }
  }
  o.finish();
  return kSuccess;
}

int jacobian_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.precision != 64) throw UsageError("jacobian is computed in 64-bit only");
  const auto recs = load_tles(cfg, err);
  const auto& rec = pick_one(recs, cfg);
  const MeanElements e = tle_to_elements(rec.tle);
  const auto times = time_grid(cfg, e);
  if (times.size() != 1) throw UsageError("jacobian takes exactly one time");
  const StateJacobian jac = jacobian_state_wrt_elements(e, wgs72(), times.front());
  if (!jac.valid) err << "note: jacobian invalid: " << to_string(jac.error_code) << '\n';
  Output o(cfg.out, out, false);
  std::string text = "state";
  for (const char* name : kElementNames) text += std::string(",d_") + name;
  text += ",error_code\n";
  for (std::size_t row = 0; row < 6; ++row) {
    text += kStateNames[row];
    for (double v : jac.d[row]) {
      text += ',';
      append_value(text, jac.valid ? v : std::numeric_limits<double>::quiet_NaN());
    }
    text += ',' + std::to_string(static_cast<int>(jac.error_code)) + '\n';
  }
  o.stream() << text;
  o.finish();
  return kSuccess;
}

int precision_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto recs = load_tles(cfg, err);
  std::vector<MeanElements> elems;
  for (const auto& r : recs) elems.push_back(tle_to_elements(r.tle));
  WorkerPool pool(cfg.workers);
  const auto rep = drift_report(std::span<const MeanElements>(elems), cfg.horizon_days, cfg.step_minutes, pool);
  err << "corpus " << rep.corpus_size << " satellites, " << rep.grid_size << " times; excluded cells "
      << rep.excluded_cells << " (" << rep.excluded_satellites << " satellites)\n";
  Output o(cfg.out, out, false);
  o.stream() << emit_report_csv(rep);
  o.finish();
  return kSuccess;
}

int bench_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  SweepAxis axis;
  if (cfg.axis == "satellites")
    axis = SweepAxis::satellites;
  else if (cfg.axis == "times")
    axis = SweepAxis::times;
  else
    throw UsageError("--axis must be satellites or times");
  std::vector<std::size_t> sizes;
  {
    std::stringstream ss(cfg.sizes);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const double v = parse_number(item, "size");
      if (v < 1 || v != std::floor(v)) throw UsageError("sizes must be positive integers");
      sizes.push_back(static_cast<std::size_t>(v));
    }
  }
  if (sizes.empty()) throw UsageError("--sizes is empty");
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (sizes[k] <= sizes[k - 1]) throw UsageError("--sizes must be strictly increasing");
  if (!(cfg.min_trial_seconds > 0)) throw UsageError("--min-trial-seconds must be positive");

  const auto recs = load_tles(cfg, err);
  std::vector<MeanElements> base;
  for (const auto& r : recs) {
    MeanElements e = tle_to_elements(r.tle);
    if (sgp4_init<double>(e, wgs72()).error_code_at_init == ErrorCode::ok) base.push_back(e);
  }
  if (base.empty()) throw std::runtime_error("no near-Earth satellites in input");

  SweepOptions opt;
  opt.precision = cfg.precision;
  opt.workers = cfg.workers;
  opt.propagate_only = cfg.propagate_only;
  opt.timing.threshold_s = cfg.min_trial_seconds;
  const auto result = scaling_sweep(axis, sizes, cfg.fixed_other, std::span<const MeanElements>(base), opt);
  if (result.truncated) err << "note: sweep stopped at size " << result.failed_size << " (allocation failed)\n";
  Output o(cfg.out, out, false);
  o.stream() << emit_bench_csv(result.records);
  o.finish();
  return kSuccess;
}

}  // namespace

std::vector<double> parse_time_range(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? std::string::npos : spec.find(':', a + 1);
  if (b == std::string::npos || spec.find(':', b + 1) != std::string::npos)
    throw UsageError("--tsince expects START:STOP:STEP, got '" + spec + "'");
  const double start = parse_number(spec.substr(0, a), "start");
  const double stop = parse_number(spec.substr(a + 1, b - a - 1), "stop");
  const double step = parse_number(spec.substr(b + 1), "step");
  if (!(step > 0)) throw UsageError("--tsince step must be positive");
  if (stop < start) throw UsageError("--tsince stop precedes start");
  std::vector<double> out;
  const double tol = step * 1e-9;
  for (std::size_t k = 0;; ++k) {
    const double t = start + static_cast<double>(k) * step;
    if (t > stop + tol) break;
    out.push_back(t);
  }
  return out;
}

std::vector<double> parse_time_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, "time"));
  if (out.empty()) throw UsageError("empty --tsince-list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"SGP4 near-Earth propagation, batch grids, Jacobians, precision reports and benchmarks", "sgp4x"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_times) {
    sub->add_option("input", cfg.input, "TLE file ('-' for standard input)")->required();
    sub->add_option("--precision", cfg.precision, "Floating-point width")->check(CLI::IsMember({32, 64}));
    sub->add_option("--workers", cfg.workers, "Worker threads (default: $SGP4_BATCH_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", cfg.strict, "Reject checksum defects and malformed lines");
    sub->add_option("--out", cfg.out, "Output path, '-' for standard output");
    if (with_times) {
      sub->add_option("--tsince", cfg.tsince, "START:STOP:STEP in minutes since epoch");
      sub->add_option("--tsince-list", cfg.tsince_list, "Comma-separated minutes since epoch");
    }
  };

  auto* prop = app.add_subcommand("propagate", "State vectors of one satellite as CSV");
  add_common(prop, true);
  prop->add_option("--catalog", cfg.catalog, "Catalog number to select (default: first record)");
  prop->add_option("--utc-list", cfg.utc_list,
                   "Comma-separated ISO-8601 UTC instants, converted with the 64-bit epoch helper");

  auto* batch = app.add_subcommand("batch", "Satellites x times grid as CSV or SGB1 binary");
  add_common(batch, true);
  batch->add_option("--format", cfg.format, "csv or binary")->check(CLI::IsMember({"csv", "binary"}));

  auto* jac = app.add_subcommand("jacobian", "6x7 state Jacobian of one satellite at one time");
  add_common(jac, true);
  jac->add_option("--catalog", cfg.catalog, "Catalog number to select (default: first record)");

  auto* prec = app.add_subcommand("precision-report", "32- vs 64-bit drift percentiles as CSV");
  add_common(prec, false);
  prec->add_option("--horizon-days", cfg.horizon_days, "Horizon in days")->check(CLI::PositiveNumber);
  prec->add_option("--step-min", cfg.step_minutes, "Grid step in minutes")->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Scaling sweep of the batch pipeline as CSV");
  add_common(bench, false);
  bench->add_option("--axis", cfg.axis, "satellites or times")->check(CLI::IsMember({"satellites", "times"}));
  bench->add_option("--sizes", cfg.sizes, "Strictly increasing comma-separated sizes");
  bench->add_option("--fixed", cfg.fixed_other, "Size of the axis held fixed")->check(CLI::PositiveNumber);
  bench->add_flag("--propagate-only", cfg.propagate_only, "Keep initialization outside the timed region");
  bench->add_option("--min-trial-seconds", cfg.min_trial_seconds, "Adaptive-iteration threshold");

  std::vector<const char*> argv{"sgp4x"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (cfg.workers == 0) cfg.workers = default_workers(err);
    if (prop->parsed()) return cfg.precision == 32 ? propagate_cmd<float>(cfg, out, err) : propagate_cmd<double>(cfg, out, err);
    if (batch->parsed()) return cfg.precision == 32 ? batch_cmd<float>(cfg, out, err) : batch_cmd<double>(cfg, out, err);
    if (jac->parsed()) return jacobian_cmd(cfg, out, err);
    if (prec->parsed()) return precision_cmd(cfg, out, err);
    if (bench->parsed()) return bench_cmd(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace sgp4x::cli
