#pragma once

#include <span>
#include <string>
#include <vector>

#include "divexp/harness.hpp"

namespace divexp {

struct PerfConfig {
  int repetitions = 5;  // median taken over these
  int warmup = 1;
  double maturity = 10.0;
  double total_cash = 40.0;  // spread evenly over the dividends
  double spot = 100.0;
  double rate = 0.03;
  double vol = 0.25;
  double min_strike = 50.0;
  double max_strike = 150.0;
};

struct PerfRow {
  std::string method;
  int dividends;
  int options;
  double seconds;  // median wall time for pricing all options
};

/// n equal cash dividends at i T / (n + 1), i = 1..n.
DividendSchedule perf_schedule(int n_dividends, const PerfConfig& cfg = {});

/// Times each method on `n_options` calls with strikes spread evenly over
/// [min_strike, max_strike]. Expansions capitalise the schedule once per run.
std::vector<PerfRow> perf_bench(int n_dividends, int n_options, std::span<const MethodSpec> methods,
                                const PerfConfig& cfg = {});

/// EG-2, LL-2, EG-3, LL-3 and FDM.
std::vector<MethodSpec> default_perf_methods();

}  // namespace divexp
