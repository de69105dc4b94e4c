#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosmax/data.hpp"
#include "cosmax/diagnostics.hpp"
#include "cosmax/errors.hpp"
#include "cosmax/regression.hpp"

namespace cosmax {

enum class InputKind { raw_data, correlation, synthetic };
enum class OutputFormat { text_table, structured };

struct Thresholds {
  double vif = kDefaultVifThreshold;
  double loading = kDefaultLoadingThreshold;
  double condition_index = kDefaultConditionThreshold;
  double vdp_pi = kDefaultVdpThreshold;
  double eigen_cutoff = kDefaultEigenCutoff;
  double min_gain = 0.01;
  double borderline_window = kDefaultBorderlineWindow;
  double pool_window = kDefaultPoolWindow;
  bool aggregate_competing = true;

  bool operator==(const Thresholds&) const = default;
};

struct PartialQuery {
  std::string i;
  std::string j;
  std::vector<std::string> conditioning;

  bool operator==(const PartialQuery&) const = default;
};

struct RunConfig {
  InputKind input_kind = InputKind::correlation;
  Thresholds thresholds;
  OutputFormat output_format = OutputFormat::text_table;
  std::vector<std::string> stepwise_targets;
  std::vector<PartialQuery> partial_queries;
  // Synthetic mode.
  std::size_t synth_n = 100;
  std::uint64_t seed = 1;
  double synth_noise = 0.25;
  // Observation count for F statistics; raw and synthetic inputs fill it in.
  std::optional<std::size_t> n_obs;
  std::optional<double> alpha;

  bool operator==(const RunConfig&) const = default;
};

inline void validate(const RunConfig& c) {
  const Thresholds& t = c.thresholds;
  if (t.vif <= 0.0 || t.loading <= 0.0 || t.condition_index <= 0.0 ||
      t.eigen_cutoff <= 0.0)
    throw ConfigError("thresholds must be positive");
  if (!(t.vdp_pi > 0.0 && t.vdp_pi < 1.0))
    throw ConfigError("vdp threshold must lie in (0, 1)");
  if (t.min_gain < 0.0) throw ConfigError("min-gain must be >= 0");
  if (t.borderline_window < 0.0 || t.borderline_window >= 1.0)
    throw ConfigError("borderline window must lie in [0, 1)");
  if (t.pool_window < 0.0) throw ConfigError("pool window must be >= 0");
  if (c.input_kind == InputKind::synthetic) {
    if (c.synth_n < 10) throw ConfigError("synthetic mode requires n >= 10");
    if (c.synth_noise < 0.0) throw ConfigError("noise scale must be >= 0");
  }
  if (c.alpha && !(*c.alpha > 0.0 && *c.alpha < 1.0))
    throw ConfigError("alpha must lie in (0, 1)");
}

// Everything the three methods produce for one dataset, plus the settings
// that produced it. Variables are referenced by index here; rendering maps
// them to their stable names.
struct DiagnosticsReport {
  RunConfig config;
  std::vector<std::string> names;
  std::optional<std::size_t> n_obs;

  SymmetricMatrix correlation{1};
  std::vector<double> vifs;  // diagonal of the inverse
  std::vector<std::size_t> flagged_vifs;
  std::vector<std::size_t> borderline_vifs;

  EigenSystem eigen;
  std::vector<double> condition_indices;
  std::vector<std::size_t> flagged_directions;
  std::vector<std::size_t> borderline_directions;

  VdpTable vdp_table;
  CosMaxTransform transform{SymmetricMatrix{1}, {}, {}};
  std::vector<std::pair<std::size_t, std::size_t>> flagged_cells;     // i < j
  std::vector<std::pair<std::size_t, std::size_t>> borderline_cells;  // i < j

  std::vector<CollinearSet> cosmax_sets;
  std::vector<CollinearSet> eigen_sets;
  std::vector<CollinearSet> vdp_sets;
  LinkGraph link_graph;
  std::vector<std::vector<std::size_t>> families;  // link-graph components

  std::vector<StepwiseTrace> stepwise;
  std::vector<PartialCorrelation> partials;

  bool operator==(const DiagnosticsReport&) const = default;
};

namespace detail {

inline std::size_t resolve_name(const std::vector<std::string>& names,
                                const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw ConfigError("unknown variable name '" + name + "'");
}

}  // namespace detail

// Runs all three identification methods plus any requested auxiliary
// regressions over one correlation matrix.
inline DiagnosticsReport analyze(const CorrelationMatrix& r, const RunConfig& config,
                                 std::optional<std::size_t> n_obs = {}) {
  validate(config);
  const Thresholds& th = config.thresholds;
  const std::size_t m = r.dim();

  DiagnosticsReport rep;
  rep.config = config;
  rep.names = r.names;
  rep.n_obs = n_obs ? n_obs : config.n_obs;
  rep.correlation = r.base;

  rep.vifs = vif_from_inverse(r);
  for (std::size_t i = 0; i < m; ++i) {
    if (rep.vifs[i] > th.vif)
      rep.flagged_vifs.push_back(i);
    else if (detail::is_borderline(rep.vifs[i], th.vif, th.borderline_window))
      rep.borderline_vifs.push_back(i);
  }

  rep.eigen = eigen_decompose(r.base);
  rep.condition_indices.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    rep.condition_indices[j] = rep.eigen.eigenvalues.front() / rep.eigen.eigenvalues[j];
    if (rep.condition_indices[j] >= th.condition_index)
      rep.flagged_directions.push_back(j);
    else if (detail::is_borderline(rep.condition_indices[j], th.condition_index,
                                   th.borderline_window))
      rep.borderline_directions.push_back(j);
  }

  rep.vdp_table = vdp(r);
  rep.transform = cosmax_transform(r);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = std::abs(rep.transform.a(i, j));
      if (v > th.loading)
        rep.flagged_cells.emplace_back(i, j);
      else if (detail::is_borderline(v, th.loading, th.borderline_window))
        rep.borderline_cells.emplace_back(i, j);
    }

  CosMaxIdentification ident =
      identify_cosmax_sets(rep.transform, th.vif, th.loading, th.borderline_window);
  rep.cosmax_sets = std::move(ident.sets);
  rep.link_graph = std::move(ident.graph);
  rep.families = rep.link_graph.components();
  rep.eigen_sets = identify_eigen_sets(rep.eigen, th.condition_index,
                                       th.eigen_cutoff, th.borderline_window);
  rep.vdp_sets = identify_vdp_sets(rep.vdp_table, th.condition_index, th.vdp_pi,
                                   th.aggregate_competing, th.pool_window,
                                   th.borderline_window);

  for (const std::string& target : config.stepwise_targets) {
    const std::size_t dep = detail::resolve_name(r.names, target);
    rep.stepwise.push_back(
        stepwise_forward(r, dep, th.min_gain, m - 1, rep.n_obs, config.alpha));
  }
  for (const PartialQuery& q : config.partial_queries) {
    const std::size_t i = detail::resolve_name(r.names, q.i);
    const std::size_t j = detail::resolve_name(r.names, q.j);
    std::vector<std::size_t> cond;
    for (const std::string& c : q.conditioning)
      cond.push_back(detail::resolve_name(r.names, c));
    rep.partials.push_back(partial_correlation(r, i, j, cond));
  }
  return rep;
}

// Full pipeline from input text (ignored in synthetic mode). Raw and
// synthetic inputs are standardized and correlated first; their observation
// count feeds the F statistics unless the config overrides it.
inline DiagnosticsReport run(const RunConfig& config, std::string_view input_text) {
  validate(config);
  switch (config.input_kind) {
    case InputKind::correlation:
      return analyze(parse_correlation(input_text), config);
    case InputKind::raw_data: {
      const RawDataset d = parse_raw_data(input_text);
      return analyze(correlation(d), config,
                     config.n_obs ? config.n_obs : std::optional<std::size_t>(d.n()));
    }
    case InputKind::synthetic: {
      const RawDataset d =
          generate_example4(config.synth_n, config.seed, config.synth_noise);
      return analyze(correlation(d), config,
                     config.n_obs ? config.n_obs : std::optional<std::size_t>(d.n()));
    }
  }
  throw ConfigError("unreachable input kind");
}

}  // namespace cosmax
