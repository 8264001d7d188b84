// Command-line front end: ingest cumulative case data, track the daily
// transmission/recovery rates, forecast the prediction window with one
// or both pipelines (or sweep the filter parameter grid), and emit a
// machine-readable results document plus an optional plot table.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epifir/data.hpp"
#include "epifir/evaluation.hpp"
#include "epifir/forecast.hpp"
#include "json.hpp"

namespace {

using epifir::EpidemicSeries;
using epifir::Error;
using epifir::FirConfig;
using epifir::InfectedConvention;
using epifir::InvalidInput;
using epifir::Method;
using epifir::MethodRun;
using epifir::Warning;
using json = nlohmann::ordered_json;

struct Options {
  std::string input;
  double population = 0.0;
  std::string start_date;
  std::size_t horizon = 45;
  std::size_t window = 7;
  std::string method = "modified";
  std::string order_beta = "auto";
  std::string order_gamma = "auto";
  double alpha_beta = 1e-3;
  double alpha_gamma = 1e-4;
  std::string convention;
  std::string out = "-";
  std::string plot_out;
  bool sweep = false;
};

// Fixed sweep grid: both candidate filter orders and a six-decade
// penalty ladder for each filter.
const std::vector<std::size_t> kSweepOrders = {3, 11};
const std::vector<double> kSweepAlphas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

std::size_t parse_order_flag(const std::string& text, const char* flag) {
  if (text == "auto") return 0;  // resolved against the horizon later
  std::size_t parsed = 0;
  std::size_t consumed = 0;
  try {
    parsed = std::stoul(text, &consumed);
  } catch (const std::exception&) {
    consumed = text.size() + 1;  // force the error below
  }
  if (consumed != text.size() || text.empty() || parsed == 0) {
    throw InvalidInput(std::string(flag) +
                       " must be 'auto' or a positive integer, got '" + text +
                       "'");
  }
  return parsed;
}

json warnings_to_json(const std::vector<Warning>& warnings) {
  json out = json::array();
  for (const Warning& w : warnings) {
    out.push_back({{"index", w.index}, {"message", w.message}});
  }
  return out;
}

json run_to_json(const MethodRun& run) {
  std::vector<Warning> warnings = run.warnings;
  warnings.insert(warnings.end(), run.trace.warnings.begin(),
                  run.trace.warnings.end());
  return json{
      {"method", to_string(run.method)},
      {"order_beta", run.config.order_beta},
      {"order_gamma", run.config.order_gamma},
      {"alpha_beta", run.config.alpha_beta},
      {"alpha_gamma", run.config.alpha_gamma},
      {"measured_beta", run.rates.beta},
      {"measured_gamma", run.rates.gamma},
      {"beta_hat", run.trace.beta_hat},
      {"gamma_hat", run.trace.gamma_hat},
      {"infected_hat", run.trace.infected_hat},
      {"removed_hat", run.trace.removed_hat},
      {"err_infected", run.error.err_infected},
      {"err_removed", run.error.err_removed},
      {"err_infected_display", epifir::format_error(run.error.err_infected)},
      {"err_removed_display", epifir::format_error(run.error.err_removed)},
      {"first_scored_day", run.error.first_day},
      {"last_scored_day", run.error.last_day},
      {"warnings", warnings_to_json(warnings)},
  };
}

std::string format_count(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string render_plot(const EpidemicSeries& known,
                        const EpidemicSeries& truth,
                        const std::vector<MethodRun>& runs) {
  std::string text = "day,I,R";
  if (runs.size() == 1) {
    text += ",I_hat,R_hat";
  } else {
    for (const MethodRun& run : runs) {
      const std::string tag = to_string(run.method);
      text += ",I_hat_" + tag + ",R_hat_" + tag;
    }
  }
  text += "\n";

  const std::size_t horizon = known.infected.size();
  const std::size_t total = horizon + truth.infected.size();
  for (std::size_t day = 0; day < total; ++day) {
    const bool observed = day < horizon;
    const double i = observed ? known.infected[day]
                              : truth.infected[day - horizon];
    const double r = observed ? known.removed[day]
                              : truth.removed[day - horizon];
    text += std::to_string(day) + "," + format_count(i) + "," +
            format_count(r);
    for (const MethodRun& run : runs) {
      if (observed) {
        text += ",,";  // predictions only exist past the horizon
      } else {
        text += "," + format_count(run.trace.infected_hat[day - horizon]) +
                "," + format_count(run.trace.removed_hat[day - horizon]);
      }
    }
    text += "\n";
  }
  return text;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write to '" + path + "'");
  out << text;
  if (!out.good()) throw InvalidInput("failed writing '" + path + "'");
}

json config_echo(const Options& opt) {
  return json{
      {"input", opt.input},
      {"population", opt.population},
      {"start_date", opt.start_date},
      {"horizon", opt.horizon},
      {"window", opt.window},
      {"method", opt.method},
      {"order_beta_requested", opt.order_beta},
      {"order_gamma_requested", opt.order_gamma},
      {"alpha_beta", opt.alpha_beta},
      {"alpha_gamma", opt.alpha_gamma},
      {"convention", opt.convention},
  };
}

int run(const Options& opt) {
  const InfectedConvention convention =
      opt.convention == "active_column" ? InfectedConvention::active_column
                                        : InfectedConvention::derived_active;
  const std::size_t order_beta = parse_order_flag(opt.order_beta, "--order-j");
  const std::size_t order_gamma =
      parse_order_flag(opt.order_gamma, "--order-k");

  std::ifstream input(opt.input);
  if (!input) throw InvalidInput("cannot open input '" + opt.input + "'");
  const epifir::CsvData data = epifir::parse_csv(input);
  epifir::check_convention(data, convention);

  epifir::WindowSpec spec;
  spec.start_date = epifir::parse_date(opt.start_date);
  spec.horizon = opt.horizon;
  spec.window = opt.window;
  const auto [known, truth] =
      epifir::build_window(data.records, spec, opt.population, convention);

  FirConfig config;
  config.order_beta = order_beta;
  config.order_gamma = order_gamma;
  config.alpha_beta = opt.alpha_beta;
  config.alpha_gamma = opt.alpha_gamma;
  config.horizon = opt.horizon;
  config.window = opt.window;

  json dates = json::array();
  const std::int64_t first_day = epifir::serial_day(spec.start_date);
  const std::size_t total_days = opt.horizon + opt.window;
  for (std::size_t day = 0; day < total_days; ++day) {
    dates.push_back(epifir::to_string(
        epifir::from_serial_day(first_day + static_cast<std::int64_t>(day))));
  }
  std::vector<double> all_infected = known.infected;
  all_infected.insert(all_infected.end(), truth.infected.begin(),
                      truth.infected.end());
  std::vector<double> all_removed = known.removed;
  all_removed.insert(all_removed.end(), truth.removed.begin(),
                     truth.removed.end());

  json doc;
  std::string plot_text;
  if (opt.sweep) {
    EpidemicSeries whole;
    whole.population = opt.population;
    whole.infected = all_infected;
    whole.removed = all_removed;
    epifir::AnalysisWindow window;
    window.start = 0;
    window.horizon = opt.horizon;
    window.window = opt.window;
    window.label = opt.start_date;
    const auto rows =
        epifir::grid_sweep(whole, window, kSweepOrders, kSweepAlphas);

    json rows_json = json::array();
    bool best_marked = false;
    for (const epifir::ComparisonRow& row : rows) {
      json entry{
          {"order", row.config.order_beta},
          {"alpha_beta", row.config.alpha_beta},
          {"alpha_gamma", row.config.alpha_gamma},
      };
      if (row.error.has_value()) {
        entry["err_infected"] = row.error->err_infected;
        entry["err_removed"] = row.error->err_removed;
        entry["err_infected_display"] =
            epifir::format_error(row.error->err_infected);
        entry["err_removed_display"] =
            epifir::format_error(row.error->err_removed);
        entry["best"] = !best_marked;
        best_marked = true;
      } else {
        entry["best"] = false;
        entry["failure"] = row.failure;
      }
      rows_json.push_back(std::move(entry));
    }
    doc = json{{"schema", "epifir-sweep-v1"},
               {"config", config_echo(opt)},
               {"grid",
                {{"orders", kSweepOrders}, {"alphas", kSweepAlphas}}},
               {"data_warnings", warnings_to_json(data.warnings)},
               {"rows", std::move(rows_json)}};
  } else {
    std::vector<MethodRun> runs;
    if (opt.method == "original" || opt.method == "both") {
      runs.push_back(
          epifir::run_method(known, truth, Method::original, config));
    }
    if (opt.method == "modified" || opt.method == "both") {
      runs.push_back(
          epifir::run_method(known, truth, Method::modified, config));
    }

    json results = json::array();
    for (const MethodRun& run : runs) results.push_back(run_to_json(run));
    doc = json{{"schema", "epifir-results-v1"},
               {"config", config_echo(opt)},
               {"data",
                {{"dates", std::move(dates)},
                 {"infected", all_infected},
                 {"removed", all_removed},
                 {"warnings", warnings_to_json(data.warnings)}}},
               {"results", std::move(results)}};
    if (!opt.plot_out.empty()) plot_text = render_plot(known, truth, runs);

    // Short human-readable summary when the document goes to a file.
    if (opt.out != "-") {
      std::printf("window %s (T=%zu, W=%zu)\n", opt.start_date.c_str(),
                  opt.horizon, opt.window);
      for (const MethodRun& run : runs) {
        std::printf("method %s: err_infected %s, err_removed %s\n",
                    to_string(run.method).c_str(),
                    epifir::format_error(run.error.err_infected).c_str(),
                    epifir::format_error(run.error.err_removed).c_str());
      }
    }
  }

  // All computation succeeded; only now touch the filesystem.
  const std::string rendered = doc.dump(2) + "\n";
  if (opt.out == "-") {
    std::fputs(rendered.c_str(), stdout);
  } else {
    write_text(opt.out, rendered);
  }
  if (!opt.plot_out.empty() && !opt.sweep) {
    write_text(opt.plot_out, plot_text);
  }
  return 0;
}

const char* error_type(const Error& e) {
  if (dynamic_cast<const epifir::MalformedRow*>(&e)) return "MalformedRow";
  if (dynamic_cast<const epifir::DuplicateDate*>(&e)) return "DuplicateDate";
  if (dynamic_cast<const epifir::MissingDates*>(&e)) return "MissingDates";
  if (dynamic_cast<const epifir::InsufficientSpan*>(&e)) {
    return "InsufficientSpan";
  }
  if (dynamic_cast<const epifir::ZeroInfected*>(&e)) return "ZeroInfected";
  if (dynamic_cast<const epifir::DepletedSusceptible*>(&e)) {
    return "DepletedSusceptible";
  }
  if (dynamic_cast<const epifir::OrderOutOfRange*>(&e)) {
    return "OrderOutOfRange";
  }
  if (dynamic_cast<const epifir::NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const epifir::ZeroDenominator*>(&e)) {
    return "ZeroDenominator";
  }
  if (dynamic_cast<const epifir::DimensionMismatch*>(&e)) {
    return "DimensionMismatch";
  }
  if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
  return "Error";
}

void emit_error(const std::string& type, const std::string& message) {
  const json record{{"error", {{"type", type}, {"message", message}}}};
  std::fputs((record.dump() + "\n").c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Track time-varying SIR transmission/recovery rates from cumulative "
      "case data and forecast the coming days with ridge-fit FIR filters"};
  Options opt;
  app.add_option("--input", opt.input, "CSV file of daily records")
      ->required();
  app.add_option("--population", opt.population,
                 "region population n (people)")
      ->required()
      ->check(CLI::PositiveNumber);
  app.add_option("--start-date", opt.start_date,
                 "first observed day, YYYY-MM-DD")
      ->required();
  app.add_option("--horizon", opt.horizon,
                 "number of observed days T (default 45)");
  app.add_option("--window", opt.window,
                 "number of predicted days W (default 7)");
  app.add_option("--method", opt.method,
                 "original | modified | both (default modified)")
      ->check(CLI::IsMember({"original", "modified", "both"}));
  app.add_option("--order-j", opt.order_beta,
                 "transmission filter order J, or 'auto' = round(T/4)");
  app.add_option("--order-k", opt.order_gamma,
                 "recovery filter order K, or 'auto' = round(T/4)");
  app.add_option("--alpha1", opt.alpha_beta,
                 "ridge penalty for the transmission filter (default 1e-3)");
  app.add_option("--alpha2", opt.alpha_gamma,
                 "ridge penalty for the recovery filter (default 1e-4)");
  app.add_option("--convention", opt.convention,
                 "how to read the first count column: active_column | "
                 "derived_active")
      ->required()
      ->check(CLI::IsMember({"active_column", "derived_active"}));
  app.add_option("--out", opt.out,
                 "results document path, or '-' for stdout (default)");
  app.add_option("--plot-out", opt.plot_out,
                 "optional plot table path (day,I,R,I_hat,R_hat)");
  app.add_flag("--sweep", opt.sweep,
               "sweep filter orders {3,11} x penalties {1e-1..1e-6}^2 "
               "instead of a single run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("InvalidInput", e.what());
    app.exit(e);
    return 1;
  }

  try {
    return run(opt);
  } catch (const epifir::NonConvergence& e) {
    emit_error("NonConvergence", e.what());
    return 2;
  } catch (const epifir::ZeroDenominator& e) {
    emit_error("ZeroDenominator", e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(error_type(e), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("Error", e.what());
    return 1;
  }
}
