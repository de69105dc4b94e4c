// Command-line front end: runs the three identification methods over a
// correlation matrix, a raw dataset, or the built-in synthetic generator and
// prints a text or JSON report.
//
// Exit codes: 0 success, 2 unusable input (parse/validation failures),
// 3 exact collinearity in the data, 4 invalid configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosmax/cosmax.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCollinear = 3;
constexpr int kExitConfig = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cosmax::ParseError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "X2,X3|X4,X5" -> i=X2, j=X3, conditioning {X4, X5}; the bar and the
// conditioning list may be omitted for a plain correlation.
cosmax::PartialQuery parse_partial_spec(const std::string& spec) {
  const auto bar = spec.find('|');
  const std::string left = spec.substr(0, bar);
  const std::string right = bar == std::string::npos ? "" : spec.substr(bar + 1);
  const auto left_tokens = cosmax::detail::tokenize(left);
  if (left_tokens.size() != 2)
    throw cosmax::ConfigError("--partial expects \"i,j|conditioning\", got '" +
                              spec + "'");
  cosmax::PartialQuery q;
  q.i = left_tokens[0];
  q.j = left_tokens[1];
  q.conditioning = cosmax::detail::tokenize(right);
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cos-max collinearity diagnostics"};
  app.get_formatter()->column_width(34);

  std::string correlation_path, data_path;
  bool synthetic = false;
  cosmax::RunConfig config;
  std::string format = "text";
  std::vector<std::string> partial_specs;
  std::string stepwise_csv;
  std::size_t n_obs = 0;
  double alpha = 0.0;

  app.add_option("--correlation", correlation_path,
                 "correlation-matrix input file (header of names, then m rows)");
  app.add_option("--data", data_path,
                 "raw-data input file (header of names, one row per observation)");
  app.add_flag("--synthetic", synthetic,
               "generate the built-in overlapping-collinearity dataset");
  app.add_option("--n", config.synth_n, "synthetic mode: observations")
      ->default_val(100);
  app.add_option("--seed", config.seed, "synthetic mode: RNG seed")->default_val(1);
  app.add_option("--noise", config.synth_noise, "synthetic mode: noise scale")
      ->default_val(0.25);

  app.add_option("--vif-threshold", config.thresholds.vif)->default_val(5.0);
  app.add_option("--loading-threshold", config.thresholds.loading)->default_val(0.75);
  app.add_option("--cond-threshold", config.thresholds.condition_index)
      ->default_val(100.0);
  app.add_option("--vdp-threshold", config.thresholds.vdp_pi)->default_val(0.5);
  app.add_option("--eigen-cutoff", config.thresholds.eigen_cutoff)->default_val(0.26);
  app.add_option("--min-gain", config.thresholds.min_gain,
                 "stepwise entry requires at least this R2 gain")
      ->default_val(0.01);
  app.add_flag("!--no-pool", config.thresholds.aggregate_competing,
               "disable pooling of competing condition-index rows");

  app.add_option("--stepwise", stepwise_csv,
                 "comma-separated dependents for stepwise auxiliary regressions");
  app.add_option("--partial", partial_specs,
                 "partial correlation query \"i,j|conditioning\" (repeatable)");
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");
  app.add_option("--n-obs", n_obs,
                 "observation count metadata (enables stepwise F statistics)");
  app.add_option("--alpha", alpha,
                 "stepwise entry significance level (needs --n-obs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const int sources = (!correlation_path.empty() ? 1 : 0) +
                        (!data_path.empty() ? 1 : 0) + (synthetic ? 1 : 0);
    if (sources != 1)
      throw cosmax::ConfigError(
          "exactly one of --correlation, --data, --synthetic is required");

    config.output_format = format == "json" ? cosmax::OutputFormat::structured
                                            : cosmax::OutputFormat::text_table;
    config.stepwise_targets = cosmax::detail::tokenize(stepwise_csv);
    for (const auto& spec : partial_specs)
      config.partial_queries.push_back(parse_partial_spec(spec));
    if (n_obs > 0) config.n_obs = n_obs;
    if (alpha > 0.0) config.alpha = alpha;

    std::string input;
    if (!correlation_path.empty()) {
      config.input_kind = cosmax::InputKind::correlation;
      input = read_file(correlation_path);
    } else if (!data_path.empty()) {
      config.input_kind = cosmax::InputKind::raw_data;
      input = read_file(data_path);
    } else {
      config.input_kind = cosmax::InputKind::synthetic;
    }

    const cosmax::DiagnosticsReport report = cosmax::run(config, input);
    if (config.output_format == cosmax::OutputFormat::structured)
      std::cout << cosmax::render_structured(report);
    else
      std::cout << cosmax::render_text(report);
    return kExitOk;
  } catch (const cosmax::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cosmax::ExactCollinearityError& e) {
    std::cerr << "exact collinearity: " << e.what() << "\n";
    return kExitCollinear;
  } catch (const cosmax::SingularPredictorsError& e) {
    std::cerr << "exact collinearity: " << e.what() << "\n";
    return kExitCollinear;
  } catch (const cosmax::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  }
}
