#include "divexp/perf.hpp"

#include <algorithm>
#include <chrono>

#include "divexp/errors.hpp"

namespace divexp {

DividendSchedule perf_schedule(int n_dividends, const PerfConfig& cfg) {
  if (n_dividends < 0) throw DomainError("dividend count must be >= 0");
  std::vector<Dividend> divs;
  for (int i = 1; i <= n_dividends; ++i) {
    divs.push_back({cfg.maturity * i / (n_dividends + 1), cfg.total_cash / n_dividends});
  }
  return DividendSchedule(std::move(divs));
}

std::vector<MethodSpec> default_perf_methods() {
  return {MethodSpec::expansion(ProxyWeights::Kind::Strike, 2),
          MethodSpec::expansion(ProxyWeights::Kind::Lehman, 2),
          MethodSpec::expansion(ProxyWeights::Kind::Strike, 3),
          MethodSpec::expansion(ProxyWeights::Kind::Lehman, 3), MethodSpec::fdm_with({})};
}

std::vector<PerfRow> perf_bench(int n_dividends, int n_options, std::span<const MethodSpec> methods,
                                const PerfConfig& cfg) {
  if (n_options < 1) throw DomainError("option count must be >= 1");
  if (cfg.repetitions < 1 || cfg.warmup < 0) throw DomainError("bad repetition counts");
  const auto market = MarketState::flat(cfg.spot, cfg.rate, 0.0, cfg.vol);
  const auto schedule = perf_schedule(n_dividends, cfg);
  std::vector<double> strikes(static_cast<std::size_t>(n_options));
  for (int i = 0; i < n_options; ++i) {
    strikes[i] = n_options == 1 ? cfg.min_strike
                                : cfg.min_strike + (cfg.max_strike - cfg.min_strike) * i / (n_options - 1);
  }

  std::vector<PerfRow> rows;
  for (const auto& method : methods) {
    volatile double sink = 0.0;
    const auto run = [&] {
      double total = 0.0;
      if (method.method == PricingMethod::Expansion) {
        const auto cap = capitalize(market, schedule, cfg.maturity);
        const auto w = ProxyWeights::preset(method.preset).resolve(cap);
        for (double k : strikes) total += expand_price(cap, k, OptionType::Call, w, method.order).price;
      } else {
        for (double k : strikes) {
          total += price_with(method, market, schedule, VanillaOption(k, cfg.maturity));
        }
      }
      sink = sink + total;
    };
    for (int i = 0; i < cfg.warmup; ++i) run();
    std::vector<double> times;
    for (int i = 0; i < cfg.repetitions; ++i) {
      const auto start = std::chrono::steady_clock::now();
      run();
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    rows.push_back({method.label(), n_dividends, n_options, times[times.size() / 2]});
  }
  return rows;
}

}  // namespace divexp
