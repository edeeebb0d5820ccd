#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "divexp/continuity.hpp"
#include "divexp/errors.hpp"
#include "divexp/harness.hpp"
#include "divexp/json_io.hpp"
#include "divexp/perf.hpp"

using namespace divexp;

namespace {

// Inline JSON, or "@path" / an existing path to read it from a file.
Json load_json(const std::string& arg) {
  const bool from_file = arg.starts_with("@");
  const std::string path = from_file ? arg.substr(1) : arg;
  std::string text = arg;
  if (std::ifstream in(path); in) {
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (from_file) {
    throw std::invalid_argument("cannot open " + path);
  }
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

OptionType parse_type(const std::string& s) {
  if (s == "call") return OptionType::Call;
  if (s == "put") return OptionType::Put;
  throw std::invalid_argument("option type must be call or put");
}

struct MarketArgs {
  double spot = 100.0;
  std::string rate = "0";
  std::string repo = "0";
  std::string vol = "0.3";

  void add(CLI::App* cmd) {
    cmd->add_option("--spot", spot, "Spot price");
    cmd->add_option("--rate", rate, "Rate: number or curve JSON");
    cmd->add_option("--repo", repo, "Repo/borrow rate: number or curve JSON");
    cmd->add_option("--vol", vol, "Volatility: number or curve JSON");
  }
  MarketState build() const {
    return MarketState(spot, curve_from_json(load_json(rate)), curve_from_json(load_json(repo)),
                       curve_from_json(load_json(vol)));
  }
};

struct FdmArgs {
  FdmConfig cfg;
  std::string json;

  void add(CLI::App* cmd) {
    cmd->add_option("--fdm-space", cfg.space_steps, "FDM space steps");
    cmd->add_option("--fdm-time", cfg.time_steps, "FDM time steps");
    cmd->add_option("--fdm-width", cfg.width, "FDM grid half-width in standard deviations");
    cmd->add_option("--fdm-config", json, "FDM config JSON (applied before the flags above)");
  }
  FdmConfig build(const CLI::App* cmd) const {
    FdmConfig out = json.empty() ? FdmConfig{} : fdm_config_from_json(load_json(json));
    if (cmd->count("--fdm-space")) out.space_steps = cfg.space_steps;
    if (cmd->count("--fdm-time")) out.time_steps = cfg.time_steps;
    if (cmd->count("--fdm-width")) out.width = cfg.width;
    return out;
  }
};

MethodSpec method_from(const std::string& name, int order) {
  if (name == "black") return MethodSpec::black();
  if (name == "lehman") return MethodSpec::lehman();
  if (name == "eg") return MethodSpec::expansion(ProxyWeights::Kind::Strike, order);
  if (name == "lf") return MethodSpec::expansion(ProxyWeights::Kind::Forward, order);
  if (name == "ll") return MethodSpec::expansion(ProxyWeights::Kind::Lehman, order);
  if (name == "hhl") return MethodSpec::hhl();
  if (name == "fdm") return MethodSpec::fdm_with({});
  return MethodSpec::parse(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"European option pricing with discrete dividends"};
  app.require_subcommand(1);

  // price
  auto* price_cmd = app.add_subcommand("price", "Price one European option");
  MarketArgs price_market;
  price_market.add(price_cmd);
  FdmArgs price_fdm;
  price_fdm.add(price_cmd);
  double strike = 100.0, maturity = 1.0;
  std::string dividends = "[]", method = "ll", type = "call";
  int order = 2;
  price_cmd->add_option("--strike", strike, "Strike");
  price_cmd->add_option("--maturity", maturity, "Maturity in years");
  price_cmd->add_option("--dividends", dividends, "Dividend schedule JSON or @file");
  price_cmd->add_option("--method", method, "black|lehman|eg|lf|ll|hhl|fdm or a label like LL-2");
  price_cmd->add_option("--order", order, "Expansion order 0..3")->check(CLI::Range(0, 3));
  price_cmd->add_option("--type", type, "call or put");

  // implied-vol
  auto* iv_cmd = app.add_subcommand("implied-vol", "Black implied volatility of a price");
  double iv_price = 0.0, iv_forward = 100.0, iv_strike = 100.0, iv_maturity = 1.0, iv_df = 1.0;
  std::string iv_type = "call";
  iv_cmd->add_option("--price", iv_price, "Option price")->required();
  iv_cmd->add_option("--forward", iv_forward, "Forward");
  iv_cmd->add_option("--strike", iv_strike, "Strike");
  iv_cmd->add_option("--maturity", iv_maturity, "Maturity in years");
  iv_cmd->add_option("--discount", iv_df, "Discount factor to maturity");
  iv_cmd->add_option("--type", iv_type, "call or put");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a scenario and write the CSV report");
  std::string scenario_arg, out_path;
  bool no_timing = false, last_dividend = false, repo_equals_rate = false, list = false;
  bench_cmd->add_option("--scenario", scenario_arg, "Builtin name or scenario JSON file");
  bench_cmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  bench_cmd->add_flag("--no-timing", no_timing, "Leave the ms column empty");
  bench_cmd->add_flag("--include-last-dividend", last_dividend,
                      "gocsei10y: add the dividend falling just after maturity");
  bench_cmd->add_flag("--repo-equals-rate", repo_equals_rate,
                      "gocsei10y/gocsei20y: repo spread equal to the 3% rate");
  bench_cmd->add_flag("--list", list, "List builtin scenarios");

  // perf
  auto* perf_cmd = app.add_subcommand("perf", "Time pricing of many options");
  int perf_dividends = 100, perf_options = 1000, perf_reps = 5;
  perf_cmd->add_option("--dividends", perf_dividends, "Number of dividends");
  perf_cmd->add_option("--options", perf_options, "Number of options");
  perf_cmd->add_option("--repetitions", perf_reps, "Timed repetitions (median reported)");

  // continuity
  auto* cont_cmd = app.add_subcommand("continuity", "Price continuity across an ex-date");
  MarketArgs cont_market;
  cont_market.add(cont_cmd);
  double cont_strike = 100.0, cont_delta = 1.0, cont_time = 0.5, cont_eps = 1e-4;
  std::vector<std::string> cont_methods{"Black", "Lehman", "EG-2", "LF-2", "LL-2", "LL-3", "HHL"};
  cont_cmd->add_option("--strike", cont_strike, "Strike before the ex-date");
  cont_cmd->add_option("--dividend", cont_delta, "Cash dividend");
  cont_cmd->add_option("--time", cont_time, "Ex-date");
  cont_cmd->add_option("--eps", cont_eps, "Maturity offset around the ex-date");
  cont_cmd->add_option("--methods", cont_methods, "Method labels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (price_cmd->parsed()) {
      const auto market = price_market.build();
      const auto schedule = schedule_from_json(load_json(dividends));
      auto spec = method_from(method, order);
      if (spec.method == PricingMethod::Fdm) spec.fdm = price_fdm.build(price_cmd);
      const VanillaOption option(strike, maturity, parse_type(type));
      if (spec.method == PricingMethod::Expansion) {
        const auto r = expand_price(market, schedule, option, ProxyWeights::preset(spec.preset),
                                    spec.order);
        std::printf("method %s\nprice %.10f\nproxy_price %.10f\n", spec.label().c_str(), r.price,
                    r.proxy_price);
        for (int k = 0; k < r.order; ++k) std::printf("correction_%d %.10e\n", k + 1, r.corrections[k]);
        std::printf("proxy_forward %.10f\nproxy_strike %.10f\n", r.proxy_forward, r.proxy_strike);
      } else {
        std::printf("method %s\nprice %.10f\n", spec.label().c_str(),
                    price_with(spec, market, schedule, option));
      }
    } else if (iv_cmd->parsed()) {
      const double v = implied_total_vol(iv_price, iv_forward, iv_strike, iv_df, parse_type(iv_type));
      std::printf("%.10f\n", v / std::sqrt(iv_maturity));
    } else if (bench_cmd->parsed()) {
      if (list) {
        for (const auto& n : builtin_scenario_names()) std::printf("%s\n", n.c_str());
        return 0;
      }
      if (scenario_arg.empty()) throw std::invalid_argument("--scenario is required");
      Scenario scenario;
      const auto names = builtin_scenario_names();
      if (std::find(names.begin(), names.end(), scenario_arg) != names.end()) {
        scenario = builtin_scenario(scenario_arg, {last_dividend, repo_equals_rate});
      } else {
        scenario = scenario_from_json(load_json("@" + scenario_arg));
      }
      const auto rows = run_scenario(scenario);
      if (out_path.empty()) {
        write_csv(std::cout, rows, !no_timing);
      } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        write_csv(out, rows, !no_timing);
      }
    } else if (perf_cmd->parsed()) {
      PerfConfig cfg;
      cfg.repetitions = perf_reps;
      const auto methods = default_perf_methods();
      std::printf("method,dividends,options,seconds\n");
      for (const auto& row : perf_bench(perf_dividends, perf_options, methods, cfg)) {
        std::printf("%s,%d,%d,%.6f\n", row.method.c_str(), row.dividends, row.options, row.seconds);
      }
    } else if (cont_cmd->parsed()) {
      const auto market = cont_market.build();
      std::printf("method,left,right,gap,left_limit,right_limit,limit_gap,reconciling_vol\n");
      for (const auto& label : cont_methods) {
        const auto r = continuity_check(market, cont_delta, cont_time, cont_strike, cont_eps,
                                        MethodSpec::parse(label));
        std::printf("%s,%.6f,%.6f,%.3e,%.6f,%.6f,%.3e,%.6f\n", label.c_str(), r.left, r.right, r.gap,
                    r.left_limit, r.right_limit, r.limit_gap, r.reconciling_vol);
      }
    }
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
