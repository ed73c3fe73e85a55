// hwm_opt: prices European options on hedge-fund NAVs under the
// high-water-mark fee rule. Subcommands: price, tables, mc, selftest.
//
// Exit codes: 0 success, 1 numerical-gate failure, 2 usage/validation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "hwm/coefficients.hpp"
#include "hwm/inversion.hpp"
#include "hwm/montecarlo.hpp"
#include "hwm/pricing.hpp"
#include "hwm/reference_grids.hpp"
#include "hwm/transforms.hpp"
#include "hwm/types.hpp"

using nlohmann::ordered_json;

namespace {

// Rates accept a % suffix ("2%" -> 0.02); the library stays in decimals.
double parse_rate(const std::string& text) {
  std::string t = text;
  bool percent = false;
  if (!t.empty() && t.back() == '%') {
    percent = true;
    t.pop_back();
  }
  size_t used = 0;
  const double value = std::stod(t, &used);
  if (used != t.size()) throw CLI::ValidationError("cannot parse number: " + text);
  return percent ? value / 100.0 : value;
}

struct ParamFlags {
  std::string spot = "100";
  std::string hwm = "100";
  std::vector<std::string> strike{"100"};
  std::vector<std::string> maturity{"1"};
  std::string offset = "0";
  std::string rate = "0";
  std::string alpha = "0";
  std::string mgmt = "0";
  std::string incentive = "0";
  std::string mu = "0";
  std::string vol;
  std::string hwm_mode = "fixed";
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool vol_required) {
  cmd->add_option("--spot", f.spot, "NAV at valuation");
  cmd->add_option("--hwm", f.hwm, "high-water mark level");
  cmd->add_option("--strike", f.strike, "strike (0 prices the forward); repeatable")
      ->expected(-1);
  cmd->add_option("--maturity", f.maturity, "maturity in years; repeatable")
      ->expected(-1);
  cmd->add_option("--offset", f.offset, "valuation offset t in years");
  cmd->add_option("--rate", f.rate, "risk-free rate (accepts %)");
  cmd->add_option("--alpha", f.alpha, "excess return (accepts %)");
  cmd->add_option("--mgmt", f.mgmt, "management fee (accepts %)");
  cmd->add_option("--incentive", f.incentive, "incentive fraction (accepts %)");
  cmd->add_option("--mu", f.mu, "mean NAV return (accepts %)");
  auto* vol = cmd->add_option("--vol", f.vol, "volatility (accepts %)");
  if (vol_required) vol->required();
  cmd->add_option("--hwm-mode", f.hwm_mode, "fixed | accruing")
      ->check(CLI::IsMember({"fixed", "accruing"}));
}

hwm::FundParameters to_params(const ParamFlags& f, const std::string& strike,
                              const std::string& maturity) {
  hwm::FundParameters p;
  p.spot = parse_rate(f.spot);
  p.high_water_mark = parse_rate(f.hwm);
  p.strike = parse_rate(strike);
  p.maturity = parse_rate(maturity);
  p.valuation_offset = parse_rate(f.offset);
  p.rate = parse_rate(f.rate);
  p.excess_return = parse_rate(f.alpha);
  p.management_fee = parse_rate(f.mgmt);
  p.incentive_fraction = parse_rate(f.incentive);
  p.mean_return = parse_rate(f.mu);
  p.volatility = parse_rate(f.vol);
  p.hwm_mode = f.hwm_mode == "accruing" ? hwm::HwmMode::accruing_at_r
                                        : hwm::HwmMode::fixed;
  return p;
}

ordered_json params_echo(const hwm::FundParameters& p) {
  return ordered_json{{"spot", p.spot},
                      {"hwm", p.high_water_mark},
                      {"strike", p.strike},
                      {"maturity", p.maturity},
                      {"offset", p.valuation_offset},
                      {"rate", p.rate},
                      {"alpha", p.excess_return},
                      {"mgmt", p.management_fee},
                      {"incentive", p.incentive_fraction},
                      {"mu", p.mean_return},
                      {"vol", p.volatility},
                      {"hwm_mode",
                       p.hwm_mode == hwm::HwmMode::fixed ? "fixed" : "accruing"}};
}

ordered_json quote_json(const hwm::PriceQuote& q, const hwm::FundParameters& p) {
  ordered_json j{{"price", q.value},
                 {"method", hwm::to_string(q.method)},
                 {"error_estimate", q.error_estimate},
                 {"params_echo", params_echo(p)}};
  if (!q.diagnostics.empty()) {
    ordered_json d;
    for (const auto& [k, v] : q.diagnostics) d[k] = v;
    j["diagnostics"] = d;
  }
  return j;
}

// Merge config-file values (keys mirror the long flags) under explicit flags.
void merge_config(const std::string& path, CLI::App* cmd, ParamFlags& f,
                  std::string& payoff) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open config file: " + path);
  ordered_json j = ordered_json::parse(in);
  auto as_string = [](const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto as_list = [&](const ordered_json& v) {
    std::vector<std::string> out;
    if (v.is_array())
      for (const auto& e : v) out.push_back(as_string(e));
    else
      out.push_back(as_string(v));
    return out;
  };
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  for (const auto& [key, value] : j.items()) {
    if (given(("--" + key).c_str())) continue;  // explicit flag wins
    if (key == "spot") f.spot = as_string(value);
    else if (key == "hwm") f.hwm = as_string(value);
    else if (key == "strike") f.strike = as_list(value);
    else if (key == "maturity") f.maturity = as_list(value);
    else if (key == "offset") f.offset = as_string(value);
    else if (key == "rate") f.rate = as_string(value);
    else if (key == "alpha") f.alpha = as_string(value);
    else if (key == "mgmt") f.mgmt = as_string(value);
    else if (key == "incentive") f.incentive = as_string(value);
    else if (key == "mu") f.mu = as_string(value);
    else if (key == "vol") f.vol = as_string(value);
    else if (key == "hwm-mode") f.hwm_mode = as_string(value);
    else if (key == "payoff") payoff = as_string(value);
    else throw CLI::ValidationError("unknown config key: " + key);
  }
}

// Deterministic parallel map: results land by index, threads take strides.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), n ? n : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("HWM_OPT_SEED"))
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  return fallback;
}

// ---------------------------------------------------------------------------
// price
// ---------------------------------------------------------------------------

int run_price(const ParamFlags& flags, const std::string& payoff) {
  std::vector<ordered_json> results;
  for (const auto& maturity : flags.maturity) {
    for (const auto& strike : flags.strike) {
      const hwm::FundParameters p = to_params(flags, strike, maturity);
      const auto violations = hwm::validate(p);
      if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "error: " << v << "\n";
        return 2;
      }
      hwm::PriceQuote q;
      if (payoff == "put")
        q = hwm::price_put(p);
      else if (payoff == "forward")
        q = hwm::forward_value(p);
      else
        q = hwm::price_call(p);
      results.push_back(quote_json(q, p));
    }
  }
  if (results.size() == 1)
    std::cout << results.front().dump(2) << "\n";
  else
    std::cout << ordered_json(results).dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

struct TableRow {
  std::string param_set;
  double hwm, alpha, mu, strike, maturity;
  double price = 0.0;
  double merton = 0.0;
  double mc_price = 0.0, mc_se = 0.0, gap_over_se = 0.0;
};

int run_tables(int table_id, const std::string& format, bool mc_check,
               long long mc_paths, int mc_steps, std::uint64_t seed) {
  const hwm::ReferenceGrid* grid = nullptr;
  for (const auto& g : hwm::reference_grids())
    if (g.id == table_id) grid = &g;
  if (!grid) {
    std::cerr << "error: no such table: " << table_id << "\n";
    return 2;
  }

  std::vector<TableRow> rows;
  auto add_blocks = [&](const std::vector<hwm::GridBlock>& blocks,
                        const std::string& label) {
    for (const auto& blk : blocks)
      for (double strike_frac : hwm::grid_strike_fractions())
        for (double maturity : hwm::grid_maturities()) {
          TableRow row{};
          row.param_set = label;
          row.hwm = blk.hwm;
          row.alpha = blk.alpha;
          row.mu = blk.mu;
          row.strike = grid->spot * strike_frac;
          row.maturity = maturity;
          rows.push_back(row);
        }
  };
  add_blocks(grid->blocks, grid->alt_blocks.empty() ? "-" : "title");
  if (!grid->alt_blocks.empty()) add_blocks(grid->alt_blocks, "block-headers");

  auto params_for = [&](const TableRow& row) {
    hwm::FundParameters p;
    p.spot = grid->spot;
    p.high_water_mark = row.hwm;
    p.strike = row.strike;
    p.maturity = row.maturity;
    p.rate = grid->rate;
    p.excess_return = row.alpha;
    p.management_fee = grid->mgmt;
    p.incentive_fraction = grid->incentive;
    p.mean_return = row.mu;
    p.volatility = grid->sigma;
    return p;
  };

  parallel_for(rows.size(), [&](std::size_t i) {
    const hwm::FundParameters p = params_for(rows[i]);
    rows[i].price = hwm::price_call(p).value;
    if (grid->fee_free)
      rows[i].merton = hwm::merton_reference(p.spot, p.strike, p.maturity, p.rate,
                                             p.management_fee, p.volatility);
  });
  if (mc_check) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      hwm::McConfig cfg;
      cfg.paths = mc_paths;
      cfg.steps_per_year = mc_steps;
      cfg.seed = seed + i;
      const auto stats =
          hwm::simulate_price(params_for(rows[i]), hwm::McPayoff::call, cfg);
      rows[i].mc_price = stats.price_mean;
      rows[i].mc_se = stats.std_error;
      rows[i].gap_over_se =
          stats.std_error > 0.0
              ? std::abs(rows[i].price - stats.price_mean) / stats.std_error
              : 0.0;
    }
  }

  if (format == "json") {
    ordered_json out;
    out["table"] = table_id;
    out["sigma"] = grid->sigma;
    out["rate"] = grid->rate;
    out["mgmt"] = grid->mgmt;
    out["incentive"] = grid->incentive;
    if (grid->note) out["header_discrepancy"] = grid->note;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json r{{"param_set", row.param_set}, {"hwm", row.hwm},
                     {"alpha", row.alpha},         {"mu", row.mu},
                     {"strike", row.strike},       {"maturity", row.maturity},
                     {"price", row.price}};
      if (grid->fee_free) r["merton"] = row.merton;
      if (mc_check) {
        r["mc_price"] = row.mc_price;
        r["mc_std_error"] = row.mc_se;
        r["abs_gap_over_se"] = row.gap_over_se;
      }
      jrows.push_back(r);
    }
    out["rows"] = jrows;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  // CSV: fixed 4-decimal prices, stable row order, header row, CRLF ends.
  std::string header = "table,param_set,hwm,alpha,mu,strike,maturity,price";
  if (grid->fee_free) header += ",merton";
  if (mc_check) header += ",mc_price,mc_std_error,abs_gap_over_se";
  std::cout << header << "\r\n";
  for (const auto& row : rows) {
    std::cout << table_id << ',' << row.param_set << ',' << fixed4(row.hwm) << ','
              << fixed4(row.alpha) << ',' << fixed4(row.mu) << ','
              << fixed4(row.strike) << ',' << fixed4(row.maturity) << ','
              << fixed4(row.price);
    if (grid->fee_free) std::cout << ',' << fixed4(row.merton);
    if (mc_check)
      std::cout << ',' << fixed4(row.mc_price) << ',' << fixed4(row.mc_se) << ','
                << fixed4(row.gap_over_se);
    std::cout << "\r\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// mc
// ---------------------------------------------------------------------------

int run_mc(const ParamFlags& flags, const std::string& payoff, long long paths,
           int steps_per_year, std::uint64_t seed, bool antithetic) {
  const hwm::FundParameters p =
      to_params(flags, flags.strike.front(), flags.maturity.front());
  const auto violations = hwm::validate(p);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "error: " << v << "\n";
    return 2;
  }
  hwm::McConfig cfg;
  cfg.paths = paths;
  cfg.steps_per_year = steps_per_year;
  cfg.seed = seed_from_env_or(seed);
  cfg.antithetic = antithetic;
  const hwm::McPayoff kind = payoff == "put"       ? hwm::McPayoff::put
                             : payoff == "forward" ? hwm::McPayoff::forward
                                                   : hwm::McPayoff::call;
  const auto stats = hwm::simulate_price(p, kind, cfg);
  ordered_json j{{"price", stats.price_mean},
                 {"method", "monte-carlo"},
                 {"std_error", stats.std_error},
                 {"paths", stats.paths},
                 {"steps", stats.steps},
                 {"seed", cfg.seed},
                 {"antithetic", cfg.antithetic},
                 {"occupation_above_fraction", stats.occupation_above_fraction},
                 {"barrier_hit_fraction", stats.barrier_hit_fraction},
                 {"params_echo", params_echo(p)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

int run_selftest() {
  double inversion_gate = 1e-7;
  if (const char* env = std::getenv("HWM_OPT_SELFTEST_TOL"))
    inversion_gate = std::strtod(env, nullptr);

  int failures = 0;
  auto gate = [&](const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %-34s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++failures;
  };

  const auto report = hwm::self_test();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max abs error %.3e (gate %.3e)",
                report.max_abs_error, inversion_gate);
  gate("inversion known-pair suite", report.max_abs_error <= inversion_gate, buf);

  double worst = 0.0;
  for (double strike : {90.0, 100.0, 110.0}) {
    hwm::FundParameters p;
    p.spot = 100.0;
    p.high_water_mark = 100.0;
    p.strike = strike;
    p.rate = 0.02;
    p.excess_return = 0.10;
    p.management_fee = 0.02;
    p.incentive_fraction = 0.20;
    p.mean_return = 0.15;
    p.volatility = 0.20;
    const auto co = hwm::derive_coefficients(p);
    const auto handle = hwm::inception_call_transform(p, co);
    hwm::PayoffWeight h{p.spot, p.strike, co.drift, co.local_time_weight,
                        p.volatility, co.log_barrier};
    for (double shift : {0.5, 1.0, 5.0}) {
      const double theta = handle.validity_abscissa + shift;
      const double quad =
          hwm::excursion_kernel(h, co.local_time_weight, p.rate + co.decay_above,
                                p.rate + co.decay_below, theta, h.growth_rate());
      const double closed = handle(std::complex<double>(theta, 0.0)).real();
      worst = std::max(worst, std::abs(closed - quad) / std::abs(quad));
    }
  }
  std::snprintf(buf, sizeof(buf), "max relative gap %.3e (gate 1e-08)", worst);
  gate("kernel quadrature cross-check", worst <= 1e-8, buf);

  double worst_parity = 0.0;
  bool parity_ok = true;
  for (double hwm_level : {85.0, 100.0, 115.0}) {
    hwm::FundParameters p;
    p.spot = 100.0;
    p.high_water_mark = hwm_level;
    p.strike = 100.0;
    p.maturity = 1.0;
    p.rate = 0.02;
    p.excess_return = 0.10;
    p.management_fee = 0.02;
    p.incentive_fraction = 0.20;
    p.mean_return = 0.15;
    p.volatility = 0.20;
    const auto call = hwm::price_call(p);
    const auto put = hwm::price_put(p);
    const auto fwd = hwm::forward_value(p);
    const double residual =
        call.value - put.value - (fwd.value - p.strike * std::exp(-p.rate));
    worst_parity = std::max(worst_parity, std::abs(residual));
    parity_ok = parity_ok && std::abs(residual) <= 2.0 * (call.error_estimate +
                                                          put.error_estimate +
                                                          fwd.error_estimate);
  }
  std::snprintf(buf, sizeof(buf), "max residual %.3e", worst_parity);
  gate("call-put parity residuals", parity_ok, buf);

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "European options on hedge-fund NAVs under the high-water-mark fee rule"};
  app.require_subcommand(1);

  auto* price = app.add_subcommand("price", "price one contract (JSON output)");
  ParamFlags price_flags;
  std::string price_payoff = "call";
  std::string config_path;
  add_param_flags(price, price_flags, false);
  price->add_option("--payoff", price_payoff, "call | put | forward")
      ->check(CLI::IsMember({"call", "put", "forward"}));
  price->add_option("--config", config_path, "JSON file mirroring the flags");

  auto* tables = app.add_subcommand("tables", "emit a built-in reference grid");
  int table_id = 1;
  std::string format = "csv";
  bool mc_check = false;
  long long mc_paths = 200'000;
  int mc_steps = 500;
  std::uint64_t table_seed = 20240901ull;
  tables->add_option("--table", table_id, "grid id, 1..5")
      ->required()
      ->check(CLI::Range(1, 5));
  tables->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  tables->add_flag("--mc-check", mc_check, "append Monte Carlo columns");
  tables->add_option("--mc-paths", mc_paths, "paths per Monte Carlo check");
  tables->add_option("--mc-steps", mc_steps, "Monte Carlo steps per year");
  tables->add_option("--seed", table_seed, "Monte Carlo base seed");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate (JSON output)");
  ParamFlags mc_flags;
  std::string mc_payoff = "call";
  long long paths = 1'000'000;
  int steps_per_year = 2000;
  std::uint64_t seed = 0x853c49e6748fea9bULL;
  bool no_antithetic = false;
  add_param_flags(mc, mc_flags, true);
  mc->add_option("--payoff", mc_payoff, "call | put | forward")
      ->check(CLI::IsMember({"call", "put", "forward"}));
  mc->add_option("--paths", paths, "number of paths");
  mc->add_option("--steps-per-year", steps_per_year, "time steps per year");
  mc->add_option("--seed", seed, "RNG seed (HWM_OPT_SEED overrides)");
  mc->add_flag("--no-antithetic", no_antithetic, "disable antithetic pairing");

  app.add_subcommand("selftest", "run the numerical gates (inversion, kernel, parity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (price->parsed()) {
      if (!config_path.empty())
        merge_config(config_path, price, price_flags, price_payoff);
      if (price_flags.vol.empty()) {
        std::cerr << "error: --vol is required (flag or config file)\n";
        return 2;
      }
      return run_price(price_flags, price_payoff);
    }
    if (tables->parsed())
      return run_tables(table_id, format, mc_check, mc_paths, mc_steps, table_seed);
    if (mc->parsed())
      return run_mc(mc_flags, mc_payoff, paths, steps_per_year, seed, !no_antithetic);
    return run_selftest();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
